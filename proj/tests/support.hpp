#pragma once

// Test-only helpers: dense rational matrices and random complexes. Nothing
// here is shared with the library's elimination code.

#include <memory>
#include <random>
#include <vector>

#include "uea/graded.hpp"
#include "uea/homology.hpp"

namespace uea::testing {

using Dense = std::vector<std::vector<Scalar>>;  // row-major

inline Dense dense_identity(int n) {
  Dense m(n, std::vector<Scalar>(n, Scalar(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
  int n = static_cast<int>(a.size());
  int k = b.empty() ? 0 : static_cast<int>(b.size());
  int m = b.empty() ? 0 : static_cast<int>(b[0].size());
  Dense c(n, std::vector<Scalar>(m, Scalar(0)));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t)
      if (sgn(a[i][t]) != 0)
        for (int j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
  return c;
}

// Gauss-Jordan inverse; the matrix must be invertible.
inline Dense dense_inverse(Dense a) {
  int n = static_cast<int>(a.size());
  Dense inv = dense_identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (sgn(a[piv][col]) == 0) ++piv;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Scalar f = a[col][col];
    for (int j = 0; j < n; ++j) {
      a[col][j] /= f;
      inv[col][j] /= f;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      Scalar g = a[r][col];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= g * a[col][j];
        inv[r][j] -= g * inv[col][j];
      }
    }
  }
  return inv;
}

inline int dense_rank(Dense a) {
  int rows = static_cast<int>(a.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(a[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = rank;
    while (piv < rows && sgn(a[piv][col]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (int r = rank + 1; r < rows; ++r) {
      if (sgn(a[r][col]) == 0) continue;
      Scalar g = a[r][col] / a[rank][col];
      for (int j = col; j < cols; ++j) a[r][j] -= g * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Dense matrix of a map restricted to source degree n (rows: target degree n+r).
inline Dense dense_block(const GradedMap& f, int n) {
  const auto& src = f.source()->in_degree(n);
  const auto& tgt = f.target()->in_degree(n + f.degree());
  Dense m(tgt.size(), std::vector<Scalar>(src.size(), Scalar(0)));
  for (std::size_t c = 0; c < src.size(); ++c)
    for (const auto& [row, coef] : f.column(src[c])) m[f.target()->local_index(row)][c] = coef;
  return m;
}

inline Scalar small_random(std::mt19937& rng, int spread = 2) {
  std::uniform_int_distribution<int> d(-spread, spread);
  return Scalar(d(rng));
}

// Random unit upper-triangular matrix (invertible over Z).
inline Dense random_unitriangular(std::mt19937& rng, int n, double density = 0.5) {
  Dense m = dense_identity(n);
  std::bernoulli_distribution keep(density);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (keep(rng)) m[i][j] = small_random(rng);
  return m;
}

struct RandomComplexShape {
  int lo = 0, hi = 4;
  int max_dim = 6;
  int weights = 1;  // number of weight classes
};

// Random bounded complex with d^2 = 0, built as a standard form
// (K_n -> B_{n-1} identity blocks) conjugated by random weight-preserving
// automorphisms. Basis elements carry weights when shape.weights > 1.
inline ChainComplex random_complex(std::mt19937& rng, const RandomComplexShape& shape) {
  std::uniform_int_distribution<int> dim_dist(0, shape.max_dim);
  auto space = std::make_shared<GradedSpace>();
  // per (degree, weight) block: [B | H | K] sizes; K_n pairs with B_{n-1}
  struct Block { int b = 0, h = 0, k = 0; std::vector<int> ids; };
  std::map<std::pair<int, int>, Block> blocks;
  for (int n = shape.lo; n <= shape.hi; ++n) {
    for (int w = 0; w < shape.weights; ++w) {
      Block& blk = blocks[{n, w}];
      int total = dim_dist(rng) / shape.weights + (w == 0 ? dim_dist(rng) % 2 : 0);
      blk.k = (n > shape.lo) ? blocks[{n - 1, w}].b : 0;
      if (blk.k > total) total = blk.k;
      int rest = total - blk.k;
      blk.b = (n < shape.hi) ? std::uniform_int_distribution<int>(0, rest)(rng) : 0;
      blk.h = rest - blk.b;
      for (int t = 0; t < total; ++t) {
        BasisElement e;
        e.degree = n;
        e.weight = shape.weights > 1 ? w : -1;
        e.name = "c" + std::to_string(n) + "_" + std::to_string(w) + "_" + std::to_string(t);
        blk.ids.push_back(space->add(e));
      }
    }
  }
  SpacePtr sp = space;
  GradedMap d(sp, sp, -1);
  std::map<std::pair<int, int>, Dense> conj, conj_inv;
  for (auto& [key, blk] : blocks) {
    int m = static_cast<int>(blk.ids.size());
    Dense p = random_unitriangular(rng, m);
    // also mix with a random lower unitriangular factor
    Dense q = random_unitriangular(rng, m);
    Dense qt(m, std::vector<Scalar>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) qt[i][j] = q[j][i];
    conj[key] = dense_mul(p, qt);
    conj_inv[key] = dense_inverse(conj[key]);
  }
  for (int n = shape.lo + 1; n <= shape.hi; ++n) {
    for (int w = 0; w < shape.weights; ++w) {
      Block& src = blocks[{n, w}];
      Block& tgt = blocks[{n - 1, w}];
      int ms = static_cast<int>(src.ids.size()), mt = static_cast<int>(tgt.ids.size());
      Dense std_form(mt, std::vector<Scalar>(ms, Scalar(0)));
      // K_n occupies the last k slots of src; B_{n-1} the first b slots of tgt
      for (int t = 0; t < src.k; ++t) std_form[t][src.b + src.h + t] = 1;
      Dense dn = dense_mul(dense_mul(conj[{n - 1, w}], std_form), conj_inv[{n, w}]);
      for (int c = 0; c < ms; ++c) {
        Vec col;
        for (int r = 0; r < mt; ++r)
          if (sgn(dn[r][c]) != 0) col[tgt.ids[r]] = dn[r][c];
        d.set_column(src.ids[c], std::move(col));
      }
    }
  }
  return make_complex(sp, std::move(d));
}

}  // namespace uea::testing

namespace uea::testing {

// Perturbation δ = Φ d Φ^{-1} - d of a weighted complex, with Φ = 1 + N for a
// random degree-0 N that strictly lowers weights. (d + δ)^2 = 0 and δ strictly
// lowers weights.
inline GradedMap random_weight_lowering_perturbation(std::mt19937& rng, const ChainComplex& c,
                                                     double density = 0.5) {
  const auto& sp = *c.space;
  std::map<int, Dense> phi, phi_inv;
  std::bernoulli_distribution keep(density);
  for (int n : sp.degrees()) {
    const auto& ids = sp.in_degree(n);
    const int m = static_cast<int>(ids.size());
    Dense f = dense_identity(m);
    for (int r = 0; r < m; ++r)
      for (int col = 0; col < m; ++col)
        if (sp.weight(ids[r]) < sp.weight(ids[col]) && keep(rng)) f[r][col] = small_random(rng);
    phi[n] = f;
    phi_inv[n] = dense_inverse(f);
  }
  GradedMap delta(c.space, c.space, -1);
  for (int n : sp.degrees()) {
    if (!phi.count(n - 1)) continue;
    Dense dn = dense_block(c.d, n);
    Dense conj = dense_mul(dense_mul(phi[n - 1], dn), phi_inv[n]);
    const auto& src = sp.in_degree(n);
    const auto& tgt = sp.in_degree(n - 1);
    for (std::size_t col = 0; col < src.size(); ++col) {
      Vec v;
      for (std::size_t r = 0; r < tgt.size(); ++r) {
        Scalar e = conj[r][col] - dn[r][col];
        if (sgn(e) != 0) v[tgt[r]] = e;
      }
      delta.set_column(src[col], std::move(v));
    }
  }
  return delta;
}

}  // namespace uea::testing
