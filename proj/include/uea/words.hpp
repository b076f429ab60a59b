#pragma once

#include <climits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "uea/graded.hpp"

namespace uea {

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int x : w) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

enum class WordKind {
  Tensor,     // all sequences of letters
  Symmetric,  // non-decreasing sequences; odd-degree letters appear at most once
};

struct Alphabet {
  std::vector<std::string> names;
  std::vector<int> degrees;
  std::vector<int> weights;  // empty: every letter has weight 1

  int size() const { return static_cast<int>(degrees.size()); }
  int weight(int letter) const { return weights.empty() ? 1 : weights[letter]; }
};

struct WordOptions {
  WordKind kind = WordKind::Tensor;
  int max_degree = 0;
  int min_length = 0;  // 0 includes the empty word
  int max_length = INT_MAX;
  std::string separator = "|";
  std::string prefix;
  std::string suffix;
  std::string empty_name = "1";
};

// Basis of words over an alphabet of positively graded letters, complete in
// degrees <= max_degree (and lengths within the bounds). Words are enumerated
// by length, then lexicographically; this is the fixed basis order. A basis
// element's weight is the sum of its letter weights.
class WordBasis {
 public:
  WordBasis(Alphabet letters, WordOptions options);

  const SpacePtr& space() const { return space_; }
  const Alphabet& alphabet() const { return letters_; }
  const WordOptions& options() const { return opts_; }
  WordKind kind() const { return opts_.kind; }
  int max_degree() const { return opts_.max_degree; }

  int letter_degree(int letter) const { return letters_.degrees[letter]; }
  int degree(const Word& w) const;
  bool admissible(const Word& w) const;

  std::optional<int> find(const Word& w) const;
  // Index of an admissible word. Throws WindowError beyond max_degree or the
  // length bounds, std::logic_error for a non-admissible word.
  int index(const Word& w) const;
  const Word& word(int i) const { return words_[i]; }
  int size() const { return static_cast<int>(words_.size()); }

  std::string word_name(const Word& w) const;

 private:
  Alphabet letters_;
  WordOptions opts_;
  SpacePtr space_;
  std::vector<Word> words_;
  std::unordered_map<Word, int, WordHash> index_;
};

using WordBasisPtr = std::shared_ptr<const WordBasis>;

// Sign of bringing a word of the given letter degrees into non-decreasing
// order (stable), together with the sorted word; nullopt when the sorted
// word repeats an odd-degree letter and therefore vanishes.
struct SortedWord {
  Word word;
  int sign = 1;
};
std::optional<SortedWord> sort_symmetric(const Word& w, const std::vector<int>& letter_degrees);

// Décalage sign (-1)^{sum_i (k-i)|x_i|} relating an operation on
// desuspended inputs to its suspended version.
int decalage_sign(const std::vector<int>& degrees);

}  // namespace uea
