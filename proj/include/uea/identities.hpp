#pragma once

#include "uea/algebras.hpp"
#include "uea/coalgebra.hpp"

namespace uea {

// Generalized Jacobi identities through arity `arity_bound`: D² = 0 on the
// Chevalley–Eilenberg words of length <= arity_bound and degree <= window + 2,
// which involves only brackets with output degree <= window.
IdentityReport check_l_infinity(const LInfinityAlgebra& g, int arity_bound, int window);

// Stasheff identities through arity `arity_bound`: D² = 0 on bar words of
// length <= arity_bound and degree <= window + 2.
IdentityReport check_a_infinity(const AInfinityStructure& a, int arity_bound, int window);

}  // namespace uea
