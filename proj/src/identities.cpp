#include "uea/identities.hpp"

namespace uea {

namespace {

IdentityReport square_zero_on(const DgCoalgebra& c, int arity_bound, int max_degree) {
  IdentityReport rep;
  const auto& sp = c.complex.space;
  for (int n = 0; n <= max_degree; ++n) {
    for (int idx : sp->in_degree(n)) {
      if (static_cast<int>(c.words->word(idx).size()) > arity_bound) continue;
      Vec dd = c.complex.d.apply(c.complex.d.column(idx));
      if (!dd.empty()) {
        rep.ok = false;
        rep.witness = sp->name(idx);
        rep.degree = n;
        rep.residual = std::move(dd);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace

IdentityReport check_l_infinity(const LInfinityAlgebra& g, int arity_bound, int window) {
  if (g.top_arity() > g.max_arity) throw PreconditionError("brackets stored beyond the declared arity");
  if (g.top_degree < window)
    throw WindowError("brackets are known up to degree " + std::to_string(g.top_degree) + ", window is " +
                      std::to_string(window));
  DgCoalgebra ce = chevalley_eilenberg(g, window + 2);
  return square_zero_on(ce, arity_bound, window + 2);
}

IdentityReport check_a_infinity(const AInfinityStructure& a, int arity_bound, int window) {
  if (arity_bound > a.max_arity())
    throw WindowError("products are stored through arity " + std::to_string(a.max_arity()) + ", not " +
                      std::to_string(arity_bound));
  if (a.top_degree() < window)
    throw WindowError("products are known up to degree " + std::to_string(a.top_degree()) + ", window is " +
                      std::to_string(window));
  DgCoalgebra b = bar(a, window + 2, arity_bound);
  return square_zero_on(b, arity_bound, window + 2);
}

}  // namespace uea
