#include "uea/envelope.hpp"

#include <stdexcept>

#include "uea/echelon.hpp"
#include "uea/koszul.hpp"

namespace uea {

std::shared_ptr<WordBasis> symmetric_algebra_basis(const SpacePtr& generators, int max_degree, int min_length) {
  Alphabet alpha;
  for (int i = 0; i < generators->size(); ++i) {
    alpha.names.push_back(generators->name(i));
    alpha.degrees.push_back(generators->degree(i));
  }
  WordOptions opt;
  opt.kind = WordKind::Symmetric;
  opt.max_degree = max_degree;
  opt.min_length = min_length;
  opt.separator = "*";
  return std::make_shared<WordBasis>(alpha, opt);
}

ClassicalEnvelope::ClassicalEnvelope(DgLieAlgebra g, int max_degree) : g_(std::move(g)) {
  require_dg_lie(g_);
  gdeg_ = g_.degrees();
  words_ = symmetric_algebra_basis(g_.space, max_degree);
  space_ = words_->space();
  top_ = max_degree;
  d_ = GradedMap(space_, space_, -1);
  for (int idx = 0; idx < words_->size(); ++idx) {
    const Word& w = words_->word(idx);
    WordVec dw;
    int prefix = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int sign = (prefix % 2 != 0) ? -1 : 1;
      for (const auto& [z, c] : g_.bracket(std::span<const int>(&w[i], 1))) {
        Word nw = w;
        nw[i] = z;
        add_scaled(dw, straighten(nw), c * sign);
      }
      prefix += gdeg_[w[i]];
    }
    d_.set_column(idx, to_basis(dw));
  }
}

const WordVec& ClassicalEnvelope::straighten(const Word& w) const {
  if (auto it = normal_.find(w); it != normal_.end()) return it->second;
  WordVec out;
  std::size_t p = 0;
  for (; p + 1 < w.size(); ++p) {
    if (w[p] > w[p + 1]) break;
    if (w[p] == w[p + 1] && gdeg_[w[p]] % 2 != 0) break;
  }
  if (p + 1 >= w.size()) {
    out.emplace(w, Scalar(1));
  } else {
    const int a = w[p], b = w[p + 1];
    Word head(w.begin(), w.begin() + p), tail(w.begin() + p + 2, w.end());
    auto with_middle = [&](const Word& mid) {
      Word nw = head;
      nw.insert(nw.end(), mid.begin(), mid.end());
      nw.insert(nw.end(), tail.begin(), tail.end());
      return nw;
    };
    const int pair[2] = {a, b};
    Vec br = g_.bracket(std::span<const int>(pair, 2));
    if (a == b) {
      // x x = (1/2) l_2(x, x) for odd x
      for (const auto& [z, c] : br) add_scaled(out, straighten(with_middle({z})), c / 2);
    } else {
      const int sign = (gdeg_[a] * gdeg_[b]) % 2 != 0 ? -1 : 1;
      add_scaled(out, straighten(with_middle({b, a})), Scalar(sign));
      for (const auto& [z, c] : br) add_scaled(out, straighten(with_middle({z})), c);
    }
  }
  return normal_.emplace(w, std::move(out)).first->second;
}

Vec ClassicalEnvelope::to_basis(const WordVec& v) const {
  Vec out;
  for (const auto& [w, c] : v) {
    if (w.empty()) throw std::logic_error("classical envelope: unit term in the augmentation ideal");
    add_term(out, words_->index(w), c);
  }
  return out;
}

Vec ClassicalEnvelope::multiply(int a, int b) const {
  Word w = words_->word(a);
  const Word& wb = words_->word(b);
  w.insert(w.end(), wb.begin(), wb.end());
  if (words_->degree(w) > top_)
    throw WindowError("product of degree " + std::to_string(words_->degree(w)) + " beyond the envelope window");
  return to_basis(straighten(w));
}

WordVec ClassicalEnvelope::symmetrize(const Word& w) const {
  const int n = static_cast<int>(w.size());
  std::vector<int> degs(n);
  for (int t = 0; t < n; ++t) degs[t] = gdeg_[w[t]];
  WordVec out;
  Scalar fact = 1;
  for (int t = 2; t <= n; ++t) fact *= t;
  for (const auto& sigma : all_permutations(n)) {
    Word pw(n);
    for (int t = 0; t < n; ++t) pw[t] = w[sigma[t]];
    add_scaled(out, straighten(pw), Scalar(koszul_sign(sigma, degs)) / fact);
  }
  return out;
}

Vec symmetrized_product(const std::vector<Vec>& factors, const std::vector<int>& degrees,
                        const std::function<Vec(const Vec&, const Vec&)>& mul) {
  const int n = static_cast<int>(factors.size());
  if (n == 0) throw std::logic_error("symmetrized_product of no factors");
  Scalar fact = 1;
  for (int t = 2; t <= n; ++t) fact *= t;
  Vec out;
  for (const auto& sigma : all_permutations(n)) {
    Vec acc = factors[sigma[0]];
    for (int t = 1; t < n; ++t) acc = mul(acc, factors[sigma[t]]);
    add_scaled(out, acc, Scalar(koszul_sign(sigma, degrees)) / fact);
  }
  return out;
}

Rectification rectify(const LInfinityAlgebra& g, int max_degree) {
  auto ce = std::make_shared<DgCoalgebra>(chevalley_eilenberg(g, max_degree + 1));
  auto om = std::make_shared<CobarAlgebra>(ce, max_degree);
  const auto& osp = *om->space();
  auto mul = [&](const Vec& x, const Vec& y) {
    Vec out;
    for (const auto& [a, ca] : x)
      for (const auto& [b, cb] : y) add_scaled(out, om->multiply(a, b), ca * cb);
    return out;
  };
  auto space = std::make_shared<GradedSpace>();
  Rectification out;
  out.cobar = om;
  std::map<int, Echelon> span;
  std::vector<int> letters;
  for (int idx = 0; idx < osp.size(); ++idx)
    if (om->words().word(idx).size() == 1) letters.push_back(idx);
  auto try_add = [&](int n, Vec v, std::string name) {
    const int id = space->size();
    if (!span[n].insert(v, id).independent) return;
    space->add({std::move(name), n, -1});
    out.elements.push_back(std::move(v));
  };
  for (int n = 1; n <= max_degree; ++n) {
    span.emplace(n, Echelon(true));
    for (int l : letters)
      if (osp.degree(l) == n) try_add(n, Vec{{l, Scalar(1)}}, osp.name(l));
    for (int l : letters) {
      const int d = osp.degree(l);
      if (d >= n) continue;
      for (int y : std::vector<int>(space->in_degree(n - d))) {
        const Vec v{{l, Scalar(1)}};
        Vec br = mul(v, out.elements[y]);
        add_scaled(br, mul(out.elements[y], v), Scalar(-swap_sign(d, n - d)));
        try_add(n, std::move(br), "[" + osp.name(l) + "," + space->name(y) + "]");
      }
    }
  }
  auto express = [&](int n, const Vec& v) {
    if (v.empty()) return Vec{};
    auto it = span.find(n);
    std::optional<Vec> c = it == span.end() ? std::nullopt : it->second.solve(v);
    if (!c) throw std::logic_error("rectification: element outside the Lie subalgebra");
    return *c;
  };
  SpacePtr sp = space;
  std::map<Word, Vec> brackets;
  for (int a = 0; a < sp->size(); ++a) {
    const int da = sp->degree(a);
    if (da >= 2) {
      Vec d = express(da - 1, om->differential().apply(out.elements[a]));
      if (!d.empty()) brackets.emplace(Word{a}, std::move(d));
    }
    for (int b = a; b < sp->size(); ++b) {
      const int db = sp->degree(b);
      if (da + db > max_degree || (a == b && da % 2 == 0)) continue;
      Vec br = mul(out.elements[a], out.elements[b]);
      add_scaled(br, mul(out.elements[b], out.elements[a]), Scalar(-swap_sign(da, db)));
      Vec c = express(da + db, br);
      if (!c.empty()) brackets.emplace(Word{a, b}, std::move(c));
    }
  }
  out.lie = make_l_infinity(sp, std::move(brackets), 2);
  out.lie.top_degree = max_degree;
  return out;
}

}  // namespace uea
