#include "uea/words.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace uea {

WordBasis::WordBasis(Alphabet letters, WordOptions options) : letters_(std::move(letters)), opts_(std::move(options)) {
  for (int d : letters_.degrees)
    if (d < 1) throw PreconditionError("word basis needs positively graded letters");
  auto space = std::make_shared<GradedSpace>();
  std::vector<std::pair<Word, int>> layer;  // (word, degree)
  if (opts_.min_length == 0) {
    words_.push_back({});
    index_.emplace(Word{}, 0);
    space->add({opts_.empty_name, 0, 0});
  }
  layer.push_back({{}, 0});
  const int n = letters_.size();
  for (int len = 1; len <= opts_.max_length && !layer.empty(); ++len) {
    std::vector<std::pair<Word, int>> next;
    for (const auto& [w, deg] : layer) {
      int start = 0;
      if (opts_.kind == WordKind::Symmetric && !w.empty()) {
        start = w.back();
        if (letters_.degrees[start] % 2 != 0) ++start;
      }
      for (int a = start; a < n; ++a) {
        int nd = deg + letters_.degrees[a];
        if (nd > opts_.max_degree) continue;
        Word nw = w;
        nw.push_back(a);
        next.push_back({std::move(nw), nd});
      }
    }
    if (len >= opts_.min_length) {
      for (const auto& [w, deg] : next) {
        int weight = 0;
        for (int a : w) weight += letters_.weight(a);
        int id = space->add({word_name(w), deg, weight});
        words_.push_back(w);
        index_.emplace(w, id);
      }
    }
    layer = std::move(next);
  }
  space_ = space;
}

int WordBasis::degree(const Word& w) const {
  int d = 0;
  for (int a : w) d += letters_.degrees[a];
  return d;
}

bool WordBasis::admissible(const Word& w) const {
  for (int a : w)
    if (a < 0 || a >= letters_.size()) return false;
  if (opts_.kind == WordKind::Symmetric) {
    for (std::size_t t = 1; t < w.size(); ++t) {
      if (w[t] < w[t - 1]) return false;
      if (w[t] == w[t - 1] && letters_.degrees[w[t]] % 2 != 0) return false;
    }
  }
  return true;
}

std::optional<int> WordBasis::find(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int WordBasis::index(const Word& w) const {
  auto it = index_.find(w);
  if (it != index_.end()) return it->second;
  if (!admissible(w)) throw std::logic_error("word basis: non-admissible word " + word_name(w));
  int len = static_cast<int>(w.size());
  if (len < opts_.min_length) throw std::logic_error("word basis: word shorter than the basis allows");
  throw WindowError("word " + word_name(w) + " of degree " + std::to_string(degree(w)) +
                    " lies outside the basis (max degree " + std::to_string(opts_.max_degree) + ", max length " +
                    (opts_.max_length == INT_MAX ? std::string("unbounded") : std::to_string(opts_.max_length)) +
                    ")");
}

std::string WordBasis::word_name(const Word& w) const {
  if (w.empty()) return opts_.empty_name;
  std::string s = opts_.prefix;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (t > 0) s += opts_.separator;
    s += (w[t] >= 0 && w[t] < letters_.size()) ? letters_.names[w[t]] : "?";
  }
  return s + opts_.suffix;
}

std::optional<SortedWord> sort_symmetric(const Word& w, const std::vector<int>& letter_degrees) {
  SortedWord out{w, 1};
  // insertion sort, counting Koszul signs of adjacent swaps
  for (std::size_t t = 1; t < out.word.size(); ++t) {
    for (std::size_t u = t; u > 0 && out.word[u - 1] > out.word[u]; --u) {
      if ((letter_degrees[out.word[u - 1]] * letter_degrees[out.word[u]]) % 2 != 0) out.sign = -out.sign;
      std::swap(out.word[u - 1], out.word[u]);
    }
  }
  for (std::size_t t = 1; t < out.word.size(); ++t)
    if (out.word[t] == out.word[t - 1] && letter_degrees[out.word[t]] % 2 != 0) return std::nullopt;
  return out;
}

int decalage_sign(const std::vector<int>& degrees) {
  const int k = static_cast<int>(degrees.size());
  long e = 0;
  for (int i = 0; i < k; ++i) e += static_cast<long>(k - 1 - i) * degrees[i];
  return (e & 1) ? -1 : 1;
}

}  // namespace uea
