#include "uea/homology.hpp"

#include <memory>

#include "uea/echelon.hpp"

namespace uea {

ComplexCheck check_complex(const ChainComplex& c, DegreeWindow window) {
  ComplexCheck out;
  for (int n = window.lo; n <= window.hi; ++n) {
    for (int e : c.space->in_degree(n)) {
      Vec dd = c.d.apply(c.d.column(e));
      if (!dd.empty()) {
        out.ok = false;
        out.degree = n;
        out.element = e;
        out.residual = std::move(dd);
        return out;
      }
    }
  }
  return out;
}

namespace {

void require_margin(const ChainComplex& c, DegreeWindow window) {
  if (window.hi + 1 > c.valid.hi || window.lo - 1 < c.valid.lo)
    throw WindowError("homology window [" + std::to_string(window.lo) + "," + std::to_string(window.hi) +
                      "] needs one degree of margin inside the valid range [" + std::to_string(c.valid.lo) +
                      "," + std::to_string(c.valid.hi) + "]");
}

int rank_of_d(const ChainComplex& c, int n) {
  Echelon e(false);
  for (int j : c.space->in_degree(n)) {
    const Vec& col = c.d.column(j);
    if (!col.empty()) e.insert(col, j);
  }
  return e.rank();
}

// Elimination data for d_n: pivotal columns span a complement K_n of the
// cycles; non-pivotal columns give the kernel basis.
struct DegreeData {
  Echelon image{true};  // rows: d(k) for k in span of pivotal columns, transform in C_n
  std::vector<Vec> kernel;
};

DegreeData eliminate(const ChainComplex& c, int n) {
  DegreeData data;
  for (int j : c.space->in_degree(n)) {
    const Vec& col = c.d.column(j);
    auto ins = data.image.insert(col, j);
    if (!ins.independent) {
      Vec z = scaled(ins.relation, Scalar(-1));
      add_term(z, j, Scalar(1));
      data.kernel.push_back(std::move(z));
    }
  }
  return data;
}

}  // namespace

std::map<int, int> homology_dims(const ChainComplex& c, DegreeWindow window) {
  require_margin(c, window);
  std::map<int, int> ranks;
  for (int n = window.lo; n <= window.hi + 1; ++n) ranks[n] = rank_of_d(c, n);
  std::map<int, int> dims;
  for (int n = window.lo; n <= window.hi; ++n) dims[n] = c.space->dim(n) - ranks[n] - ranks[n + 1];
  return dims;
}

HomologyData homology(const ChainComplex& c, DegreeWindow window) {
  Contraction k = contraction_onto_homology(c, window);
  HomologyData out;
  out.window = window;
  for (int n = window.lo; n <= window.hi; ++n) {
    out.dims[n] = k.small.space->dim(n);
    auto& reps = out.representatives[n];
    for (int s : k.small.space->in_degree(n)) reps.push_back(k.i.column(s));
  }
  return out;
}

std::map<int, int> induced_rank(const ChainComplex& src, const ChainComplex& tgt, const GradedMap& f,
                                DegreeWindow window) {
  require_margin(tgt, window);
  HomologyData hs = homology(src, window);
  std::map<int, int> out;
  for (int n = window.lo; n <= window.hi; ++n) {
    Echelon e(false);
    int g = 0;
    for (int x : tgt.space->in_degree(n + 1)) e.insert(tgt.d.column(x), g++);
    const int base = e.rank();
    for (const Vec& z : hs.representatives[n]) e.insert(f.apply(z), g++);
    out[n] = e.rank() - base;
  }
  return out;
}

Contraction contraction_onto_homology(const ChainComplex& c, DegreeWindow window,
                                      const RepresentativeChoice* choice) {
  require_margin(c, window);
  const int lo = window.lo - 1;  // h is also needed one degree below
  std::map<int, DegreeData> data;
  for (int n = lo; n <= window.hi + 1; ++n) data.emplace(n, eliminate(c, n));

  auto small_space = std::make_shared<GradedSpace>();
  // reps[n][r] is the cycle for small basis element small_ids[n][r]
  std::map<int, std::vector<Vec>> reps;
  std::map<int, Echelon> cycle_bases;  // boundaries first (ids < nb), then reps
  for (int n = lo; n <= window.hi; ++n) {
    Echelon& ez = cycle_bases.emplace(n, Echelon(true)).first->second;
    const auto& boundary_rows = data.at(n + 1).image.rows();
    for (std::size_t k = 0; k < boundary_rows.size(); ++k) ez.insert(boundary_rows[k].vec, static_cast<int>(k));
    const int nb = static_cast<int>(boundary_rows.size());
    const int h_dim = static_cast<int>(data.at(n).kernel.size()) - nb;
    auto& chosen = reps[n];
    if (choice != nullptr && n >= window.lo) {
      auto it = choice->cycles.find(n);
      const std::vector<Vec> empty;
      const auto& given = it == choice->cycles.end() ? empty : it->second;
      if (static_cast<int>(given.size()) != h_dim)
        throw PreconditionError("prescribed representatives in degree " + std::to_string(n) + ": got " +
                                std::to_string(given.size()) + ", homology has dimension " + std::to_string(h_dim));
      for (const Vec& z : given) {
        if (!c.d.apply(z).empty())
          throw PreconditionError("prescribed representative in degree " + std::to_string(n) + " is not a cycle");
        if (!ez.insert(z, nb + static_cast<int>(chosen.size())).independent)
          throw PreconditionError("prescribed representatives in degree " + std::to_string(n) +
                                  " are dependent modulo boundaries");
        chosen.push_back(z);
      }
    } else {
      for (const Vec& z : data.at(n).kernel) {
        if (static_cast<int>(chosen.size()) == h_dim) break;
        if (ez.insert(z, nb + static_cast<int>(chosen.size())).independent) chosen.push_back(z);
      }
    }
    if (n < window.lo) continue;
    for (std::size_t r = 0; r < chosen.size(); ++r) {
      BasisElement e;
      e.degree = n;
      e.name = "H" + std::to_string(n) + "_" + std::to_string(r);
      if (choice != nullptr) {
        if (auto nit = choice->names.find(n); nit != choice->names.end() && r < nit->second.size())
          e.name = nit->second[r];
        if (auto wit = choice->weights.find(n); wit != choice->weights.end() && r < wit->second.size())
          e.weight = wit->second[r];
      } else {
        // inherit a weight when the representative is weight-homogeneous
        int w = -2;
        for (const auto& [idx, coef] : chosen[r]) {
          int wi = c.space->weight(idx);
          w = (w == -2 || w == wi) ? wi : -1;
        }
        e.weight = w < 0 ? -1 : w;
      }
      small_space->add(std::move(e));
    }
  }

  SpacePtr small = small_space;
  Contraction out;
  out.window = window;
  out.big = c;
  out.small = make_complex(small, GradedMap(small, small, -1), window);
  out.i = GradedMap(small, c.space, 0);
  out.p = GradedMap(c.space, small, 0);
  out.h = GradedMap(c.space, c.space, 1);

  for (int n = window.lo; n <= window.hi; ++n) {
    const auto& ids = small->in_degree(n);
    for (std::size_t r = 0; r < ids.size(); ++r) out.i.set_column(ids[r], reps.at(n)[r]);
  }

  for (int n = lo; n <= window.hi; ++n) {
    const DegreeData& here = data.at(n);
    const auto& above_rows = data.at(n + 1).image.rows();
    const Echelon& ez = cycle_bases.at(n);
    const int nb = static_cast<int>(above_rows.size());
    const auto& small_ids = small->in_degree(n);
    for (int j : c.space->in_degree(n)) {
      // e_j = b + i(alpha) + k with k in the pivotal complement
      Vec z{{j, Scalar(1)}};
      const Vec& dj = c.d.column(j);
      if (!dj.empty()) {
        auto comb = here.image.solve(dj);
        if (!comb) throw std::logic_error("contraction: d(e) outside the image of d");
        add_scaled(z, *comb, Scalar(-1));
      }
      auto coeffs = ez.solve(z);
      if (!coeffs) throw std::logic_error("contraction: cycle outside boundaries + representatives");
      Vec pcol, hcol;
      for (const auto& [g, coef] : *coeffs) {
        if (g < nb) {
          add_scaled(hcol, above_rows[g].transform, -coef);
        } else if (n >= window.lo) {
          pcol.emplace(small_ids.at(g - nb), coef);
        }
      }
      if (n >= window.lo) out.p.set_column(j, std::move(pcol));
      out.h.set_column(j, std::move(hcol));
    }
  }
  return out;
}

SideConditionReport check_side_conditions(const Contraction& k, DegreeWindow window) {
  SideConditionReport rep;
  auto fail = [&](const char* what, int n, int e) {
    rep.ok = false;
    rep.failed = what;
    rep.degree = n;
    rep.element = e;
    return rep;
  };
  for (int n = window.lo; n <= window.hi; ++n) {
    for (int s : k.small.space->in_degree(n)) {
      Vec v{{s, Scalar(1)}};
      Vec iv = k.i.apply(v);
      if (k.p.apply(iv) != v) return fail("p i = 1", n, s);
      if (!k.h.apply(iv).empty()) return fail("h i = 0", n, s);
      if (k.big.d.apply(iv) != k.i.apply(k.small.d.apply(v))) return fail("d i = i d", n, s);
    }
    for (int e : k.big.space->in_degree(n)) {
      Vec v{{e, Scalar(1)}};
      Vec lhs = k.i.apply(k.p.apply(v));
      add_term(lhs, e, Scalar(-1));
      Vec rhs = k.big.d.apply(k.h.apply(v));
      add_scaled(rhs, k.h.apply(k.big.d.apply(v)), Scalar(1));
      if (lhs != rhs) return fail("i p - 1 = d h + h d", n, e);
      Vec hv = k.h.apply(v);
      if (!k.h.apply(hv).empty()) return fail("h h = 0", n, e);
      if (!k.p.apply(hv).empty()) return fail("p h = 0", n, e);
      if (k.p.apply(k.big.d.apply(v)) != k.small.d.apply(k.p.apply(v))) return fail("p d = d p", n, e);
    }
  }
  return rep;
}

Contraction normalize_side_conditions(Contraction k) {
  // h1 = (ip - 1) h (ip - 1) kills i and p; h2 = -h1 d h1 squares to zero.
  GradedMap ip_minus_1 = k.i.after(k.p).plus(GradedMap::identity(k.big.space), Scalar(-1));
  GradedMap h1 = ip_minus_1.after(k.h).after(ip_minus_1);
  GradedMap h2 = h1.after(k.big.d).after(h1);
  k.h = GradedMap(k.big.space, k.big.space, 1).plus(h2, Scalar(-1));
  return k;
}

}  // namespace uea
