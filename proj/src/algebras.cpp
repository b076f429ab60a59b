#include "uea/algebras.hpp"

#include <algorithm>
#include <functional>

#include "uea/koszul.hpp"

namespace uea {

std::vector<int> LInfinityAlgebra::degrees() const {
  std::vector<int> d(space->size());
  for (int i = 0; i < space->size(); ++i) d[i] = space->degree(i);
  return d;
}

bool LInfinityAlgebra::is_minimal() const {
  for (const auto& [w, v] : brackets)
    if (w.size() == 1 && !v.empty()) return false;
  return true;
}

int LInfinityAlgebra::top_arity() const {
  int k = 0;
  for (const auto& [w, v] : brackets)
    if (!v.empty()) k = std::max(k, static_cast<int>(w.size()));
  return k;
}

std::optional<CanonicalWord> canonical_l_word(std::span<const int> inputs, const std::vector<int>& degrees) {
  CanonicalWord out{Word(inputs.begin(), inputs.end()), 1};
  Word& w = out.word;
  for (std::size_t t = 1; t < w.size(); ++t) {
    for (std::size_t u = t; u > 0 && w[u - 1] > w[u]; --u) {
      // χ picks up -(-1)^{|a||b|} per adjacent transposition
      if ((degrees[w[u - 1]] * degrees[w[u]]) % 2 == 0) out.sign = -out.sign;
      std::swap(w[u - 1], w[u]);
    }
  }
  for (std::size_t t = 1; t < w.size(); ++t)
    if (w[t] == w[t - 1] && degrees[w[t]] % 2 == 0) return std::nullopt;
  return out;
}

Vec LInfinityAlgebra::bracket(std::span<const int> inputs) const {
  auto degs = degrees();
  auto c = canonical_l_word(inputs, degs);
  if (!c) return {};
  auto it = brackets.find(c->word);
  if (it == brackets.end()) return {};
  return scaled(it->second, Scalar(c->sign));
}

LInfinityAlgebra make_l_infinity(SpacePtr space, std::map<Word, Vec> brackets, int max_arity) {
  LInfinityAlgebra g;
  g.space = std::move(space);
  g.max_arity = max_arity;
  for (int i = 0; i < g.space->size(); ++i)
    if (g.space->degree(i) < 1)
      throw PreconditionError("generator " + g.space->name(i) + " has degree " + std::to_string(g.space->degree(i)) +
                              "; generators must have degree >= 1");
  auto degs = g.degrees();
  for (auto& [w, v] : brackets) {
    if (w.empty()) throw PreconditionError("bracket with no inputs");
    if (static_cast<int>(w.size()) > max_arity)
      throw PreconditionError("bracket of arity " + std::to_string(w.size()) + " exceeds the arity bound");
    int out_deg = static_cast<int>(w.size()) - 2;
    for (int x : w) {
      if (x < 0 || x >= g.space->size()) throw PreconditionError("bracket input out of range");
      out_deg += degs[x];
    }
    auto c = canonical_l_word(w, degs);
    if (!c || c->word != w || c->sign != 1)
      throw PreconditionError("bracket inputs are not in canonical order");
    Vec clean;
    for (const auto& [o, coef] : v) {
      if (o < 0 || o >= g.space->size()) throw PreconditionError("bracket output out of range");
      if (degs[o] != out_deg)
        throw PreconditionError("bracket output " + g.space->name(o) + " has degree " + std::to_string(degs[o]) +
                                ", expected " + std::to_string(out_deg));
      add_term(clean, o, coef);
    }
    if (!clean.empty()) g.brackets.emplace(w, std::move(clean));
  }
  return g;
}

void require_dg_lie(const LInfinityAlgebra& g) {
  if (g.top_arity() > 2) throw PreconditionError("expected a dg Lie algebra (brackets of arity 1 and 2 only)");
}

std::optional<Word> strict_morphism_defect(const StrictMorphism& f) {
  const auto& src = f.source;
  const int k_max = std::max(src.top_arity(), f.target.top_arity());
  auto degs = src.degrees();
  const int n = src.space->size();
  // all canonical words up to arity k_max
  std::vector<Word> words;
  std::function<void(Word&)> grow = [&](Word& w) {
    if (!w.empty()) words.push_back(w);
    if (static_cast<int>(w.size()) == k_max) return;
    int start = w.empty() ? 0 : w.back();
    for (int a = start; a < n; ++a) {
      if (!w.empty() && a == w.back() && degs[a] % 2 == 0) continue;
      w.push_back(a);
      grow(w);
      w.pop_back();
    }
  };
  Word w;
  grow(w);
  for (const Word& u : words) {
    Vec lhs = f.linear.apply(src.bracket(u));
    // l_k(f x_1, ..., f x_k), multilinear expansion (f has degree 0: no signs)
    Vec rhs;
    std::function<void(std::size_t, Word&, Scalar)> expand = [&](std::size_t pos, Word& img, Scalar coef) {
      if (pos == u.size()) {
        add_scaled(rhs, f.target.bracket(img), coef);
        return;
      }
      for (const auto& [t, c] : f.linear.column(u[pos])) {
        img.push_back(t);
        expand(pos + 1, img, coef * c);
        img.pop_back();
      }
    };
    Word img;
    expand(0, img, Scalar(1));
    if (lhs != rhs) return u;
  }
  return std::nullopt;
}

void AInfinityStructure::require_known(std::span<const int> inputs) const {
  const int k = static_cast<int>(inputs.size());
  if (k > max_arity())
    throw WindowError("product of arity " + std::to_string(k) + " beyond the stored arity " +
                      std::to_string(max_arity()));
  int out = k - 2;
  for (int x : inputs) out += space()->degree(x);
  if (out > top_degree())
    throw WindowError("product with output degree " + std::to_string(out) + " beyond the known degree " +
                      std::to_string(top_degree()));
}

AInfinityAlgebra::AInfinityAlgebra(SpacePtr space, std::map<Word, Vec> products, int max_arity, int top_degree)
    : space_(std::move(space)), max_arity_(max_arity), top_degree_(top_degree) {
  for (int i = 0; i < space_->size(); ++i)
    if (space_->degree(i) < 1) throw PreconditionError("A∞ basis element " + space_->name(i) + " must have degree >= 1");
  for (auto& [w, v] : products) {
    if (w.empty() || static_cast<int>(w.size()) > max_arity_) throw PreconditionError("product arity out of range");
    int out = static_cast<int>(w.size()) - 2;
    for (int x : w) {
      if (x < 0 || x >= space_->size()) throw PreconditionError("product input out of range");
      out += space_->degree(x);
    }
    Vec clean;
    for (const auto& [o, c] : v) {
      if (o < 0 || o >= space_->size()) throw PreconditionError("product output out of range");
      if (space_->degree(o) != out)
        throw PreconditionError("product output " + space_->name(o) + " has degree " +
                                std::to_string(space_->degree(o)) + ", expected " + std::to_string(out));
      add_term(clean, o, c);
    }
    if (!clean.empty()) products_.emplace(w, std::move(clean));
  }
}

Vec AInfinityAlgebra::product(std::span<const int> inputs) const {
  require_known(inputs);
  auto it = products_.find(Word(inputs.begin(), inputs.end()));
  return it == products_.end() ? Vec{} : it->second;
}

bool AInfinityAlgebra::is_minimal() const {
  for (const auto& [w, v] : products_)
    if (w.size() == 1) return false;
  return true;
}

AInfinityAlgebra store_products(const AInfinityStructure& a, int max_arity, int top_degree) {
  max_arity = std::min(max_arity, a.max_arity());
  top_degree = std::min(top_degree, a.top_degree());
  const auto& sp = a.space();
  std::map<Word, Vec> products;
  std::function<void(Word&, int)> grow = [&](Word& w, int deg) {
    const int k = static_cast<int>(w.size());
    if (k > 0) {
      Vec v = a.product(w);
      if (!v.empty()) products.emplace(w, std::move(v));
    }
    if (k == max_arity) return;
    for (int x = 0; x < sp->size(); ++x) {
      // output degree of the extended word: deg + |x| + (k + 1) - 2
      if (deg + sp->degree(x) + k - 1 > top_degree) continue;
      w.push_back(x);
      grow(w, deg + sp->degree(x));
      w.pop_back();
    }
  };
  Word w;
  grow(w, 0);
  return AInfinityAlgebra(sp, std::move(products), max_arity, top_degree);
}

LInfinityAlgebra antisymmetrize(const AInfinityStructure& a, int arity_bound) {
  const auto& sp = a.space();
  const int kmax = std::min(arity_bound, a.max_arity());
  const int top = a.top_degree();
  std::vector<int> degs(sp->size());
  for (int i = 0; i < sp->size(); ++i) degs[i] = sp->degree(i);
  std::vector<std::vector<std::vector<int>>> perms(kmax + 1);
  for (int k = 1; k <= kmax; ++k) perms[k] = all_permutations(k);

  LInfinityAlgebra g;
  g.space = sp;
  g.max_arity = kmax;
  g.top_degree = top;
  std::function<void(Word&, int)> grow = [&](Word& w, int deg) {
    const int k = static_cast<int>(w.size());
    if (k > 0) {
      Vec out;
      std::vector<int> wd(k);
      for (int t = 0; t < k; ++t) wd[t] = degs[w[t]];
      Word permuted(k);
      for (const auto& sigma : perms[k]) {
        for (int t = 0; t < k; ++t) permuted[t] = w[sigma[t]];
        int chi = permutation_sign(sigma) * koszul_sign(sigma, wd);
        add_scaled(out, a.product(permuted), Scalar(chi));
      }
      if (!out.empty()) g.brackets.emplace(w, std::move(out));
    }
    if (k == kmax) return;
    int start = w.empty() ? 0 : w.back();
    for (int x = start; x < sp->size(); ++x) {
      if (!w.empty() && x == w.back() && degs[x] % 2 == 0) continue;
      if (deg + degs[x] + k - 1 > top) continue;
      w.push_back(x);
      grow(w, deg + degs[x]);
      w.pop_back();
    }
  };
  Word w;
  grow(w, 0);
  return g;
}

}  // namespace uea
