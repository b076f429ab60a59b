#pragma once

// Direct evaluations of the generalized Jacobi and Stasheff identities in
// unshifted form. They share no code with the (co)bar based checkers.

#include <functional>
#include <random>

#include "uea/algebras.hpp"
#include "uea/koszul.hpp"

namespace uea::testing {

inline int parity_sign(long e) { return (e & 1) ? -1 : 1; }

// Σ_{i+j=n+1} Σ_{σ∈Sh(i,n-i)} χ(σ)(-1)^{i(j-1)} l_j(l_i(x_σ(1..i)), x_σ(i+1..n)).
inline Vec jacobi_residual(const LInfinityAlgebra& g, const Word& x) {
  const int n = static_cast<int>(x.size());
  auto degs = g.degrees();
  std::vector<int> xd(n);
  for (int t = 0; t < n; ++t) xd[t] = degs[x[t]];
  Vec out;
  for (int i = 1; i <= n; ++i) {
    const int j = n + 1 - i;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != i) continue;
      std::vector<int> perm;
      for (int p = 0; p < n; ++p)
        if (mask & (1u << p)) perm.push_back(p);
      for (int p = 0; p < n; ++p)
        if (!(mask & (1u << p))) perm.push_back(p);
      const int chi = permutation_sign(perm) * koszul_sign(perm, xd);
      const int sign = chi * parity_sign(static_cast<long>(i) * (j - 1));
      Word inner;
      for (int t = 0; t < i; ++t) inner.push_back(x[perm[t]]);
      for (const auto& [z, c] : g.bracket(inner)) {
        Word outer{z};
        for (int t = i; t < n; ++t) outer.push_back(x[perm[t]]);
        add_scaled(out, g.bracket(outer), c * sign);
      }
    }
  }
  return out;
}

// Σ_{r+s+t=n} (-1)^{r+st} m_{r+1+t}(1^r ⊗ m_s ⊗ 1^t)(a_1..a_n), with the
// Koszul sign (-1)^{s(|a_1|+..+|a_r|)} from passing m_s.
inline Vec stasheff_residual(const AInfinityStructure& a, const Word& x) {
  const int n = static_cast<int>(x.size());
  Vec out;
  for (int s = 1; s <= n; ++s) {
    for (int r = 0; r + s <= n; ++r) {
      const int t = n - r - s;
      long before = 0;
      for (int q = 0; q < r; ++q) before += a.space()->degree(x[q]);
      const int sign = parity_sign(r + static_cast<long>(s) * t) * parity_sign(static_cast<long>(s) * before);
      Word inner(x.begin() + r, x.begin() + r + s);
      for (const auto& [z, c] : a.product(inner)) {
        Word outer(x.begin(), x.begin() + r);
        outer.push_back(z);
        outer.insert(outer.end(), x.begin() + r + s, x.end());
        add_scaled(out, a.product(outer), c * sign);
      }
    }
  }
  return out;
}

// Calls f on every canonical L∞ input word (arity 1..kmax) whose identity
// output degree sum + n - 3 is <= max_out.
inline void for_each_canonical_word(const LInfinityAlgebra& g, int kmax, int max_out,
                                    const std::function<void(const Word&)>& f) {
  auto degs = g.degrees();
  const int n = g.space->size();
  std::function<void(Word&, int)> rec = [&](Word& w, int deg) {
    if (!w.empty()) f(w);
    if (static_cast<int>(w.size()) == kmax) return;
    int start = w.empty() ? 0 : w.back();
    for (int a = start; a < n; ++a) {
      if (!w.empty() && a == w.back() && degs[a] % 2 == 0) continue;
      const int k = static_cast<int>(w.size()) + 1;
      if (deg + degs[a] + k - 3 > max_out) continue;
      w.push_back(a);
      rec(w, deg + degs[a]);
      w.pop_back();
    }
  };
  Word w;
  rec(w, 0);
}

inline void for_each_word(const SpacePtr& sp, int kmax, int max_out, const std::function<void(const Word&)>& f) {
  std::function<void(Word&, int)> rec = [&](Word& w, int deg) {
    if (!w.empty()) f(w);
    if (static_cast<int>(w.size()) == kmax) return;
    for (int a = 0; a < sp->size(); ++a) {
      const int k = static_cast<int>(w.size()) + 1;
      if (deg + sp->degree(a) + k - 3 > max_out) continue;
      w.push_back(a);
      rec(w, deg + sp->degree(a));
      w.pop_back();
    }
  };
  Word w;
  rec(w, 0);
}

// Random L∞ data (not necessarily satisfying Jacobi) on a random small space.
inline LInfinityAlgebra random_l_data(std::mt19937& rng, int gens, int max_deg, int kmax, double density) {
  auto sp = std::make_shared<GradedSpace>();
  std::uniform_int_distribution<int> deg(1, max_deg);
  for (int i = 0; i < gens; ++i) sp->add({"g" + std::to_string(i), deg(rng), -1});
  LInfinityAlgebra g;
  g.space = sp;
  g.max_arity = kmax;
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> coef(-2, 2);
  for_each_canonical_word(g, kmax, 1 << 20, [&](const Word& w) {
    int out = static_cast<int>(w.size()) - 2;
    for (int x : w) out += sp->degree(x);
    Vec v;
    for (int z : sp->in_degree(out))
      if (keep(rng)) add_term(v, z, Scalar(coef(rng)));
    if (!v.empty()) g.brackets.emplace(w, v);
  });
  return g;
}

inline AInfinityAlgebra random_a_data(std::mt19937& rng, int gens, int max_deg, int kmax, double density) {
  auto sp = std::make_shared<GradedSpace>();
  std::uniform_int_distribution<int> deg(1, max_deg);
  for (int i = 0; i < gens; ++i) sp->add({"a" + std::to_string(i), deg(rng), -1});
  std::map<Word, Vec> products;
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> coef(-2, 2);
  for_each_word(sp, kmax, 1 << 20, [&](const Word& w) {
    int out = static_cast<int>(w.size()) - 2;
    for (int x : w) out += sp->degree(x);
    Vec v;
    for (int z : sp->in_degree(out))
      if (keep(rng)) add_term(v, z, Scalar(coef(rng)));
    if (!v.empty()) products.emplace(w, v);
  });
  return AInfinityAlgebra(sp, std::move(products), kmax, INT_MAX);
}

}  // namespace uea::testing
