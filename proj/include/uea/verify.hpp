#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "uea/perturbation.hpp"

namespace uea {

enum class CheckStatus { Pass, Fail, Inconclusive };
const char* status_name(CheckStatus s);

struct VerificationReport {
  std::string check;
  std::string algebra;
  int window = 0;
  int arity = 0;
  CheckStatus status = CheckStatus::Pass;
  std::string witness;  // first failing word or table entry; set whenever status is Fail
  std::vector<std::pair<std::string, std::vector<long>>> tables;  // indexed from degree 0
  std::vector<std::pair<std::string, std::string>> notes;
  std::vector<VerificationReport> parts;
  double seconds = 0;

  void fail(std::string w);
  void inconclusive(std::string w);
  // Folds the sub-checks into this report's status.
  void absorb_parts();
};

// dim S(g)_n for n = 0..max_degree from the generating series
// Π_{odd x} (1 + t^|x|) Π_{even x} 1/(1 - t^|x|).
std::vector<long> symmetric_dimensions(const std::vector<int>& generator_degrees, int max_degree);

// dim H_n(Ω𝒞(g)) against dim S(H(g))_n for n <= window.
VerificationReport derived_pbw_check(const LInfinityAlgebra& g, int window);

// dim U(g)_n = dim S(g)_n, and H(U(g)) with its induced product against U(H(g))
// through the algebra map UH(g) -> HU(g) x_1..x_k -> [r_1 .. r_k], with H(U(g))
// coordinatized by PBW-symmetrized representatives.
VerificationReport classical_pbw_check(const DgLieAlgebra& g, int window);

// τ(sx) = x into the envelope: Maurer–Cartan equation, q a chain map, q
// degreewise injective, H(q) and H(Ωq) isomorphisms on the window.
VerificationReport quillen_check(const LInfinityAlgebra& g, std::shared_ptr<const AInfinityStructure> envelope,
                                 int window);

// Envelope used by the checks: the Baranovsky model for minimal g, the
// classical envelope (a strict dg algebra) for dg Lie algebras with l_1 != 0.
std::shared_ptr<const AInfinityStructure> default_envelope(const LInfinityAlgebra& g, int arity_bound, int window);

// Antisymmetrized envelope operations on one-letter words against g, arity 1..arity_bound.
VerificationReport strictness_check(const AInfinityStructure& envelope, const LInfinityAlgebra& g, int arity_bound);

// H(𝒞(g) ⊗_τ envelope) = 𝕜 in degree 0 and 0 in degrees 1..window.
VerificationReport twisted_acyclicity_check(const LInfinityAlgebra& g,
                                            std::shared_ptr<const AInfinityStructure> envelope, int window);

// dim H_n(𝒞(g)) = dim H_n(B(envelope)) for n <= window.
VerificationReport koszul_dual_check(const LInfinityAlgebra& g, std::shared_ptr<const AInfinityStructure> envelope,
                                     int window);

// f a strict quasi-isomorphism of dg Lie algebras: U(f) induces isomorphisms
// on homology in degrees <= window. A non-quasi-isomorphism fails with the
// rank table as witness.
VerificationReport envelope_preserves_qis(const StrictMorphism& f, int window);

// A∞-morphism with f_1 = identity (basis matched by name) between minimal
// A∞-algebras. Components are shifted: f̂_n maps (sA)^{⊗n} to sB with degree 0.
struct IsoSearchResult {
  bool found = false;
  std::map<Word, Vec> components;  // arity >= 2, keyed by words of a, values in b
  int failed_arity = 0;            // arity of the inconsistent equations
  int failed_degree = 0;
  std::string witness;
};
IsoSearchResult a_infinity_iso_search(const AInfinityAlgebra& a, const AInfinityAlgebra& b, int arity_bound,
                                      int window);

// The minimal A∞-structure b on a's space for which (id, f̂_2, f̂_3, ..) is an
// A∞-morphism a -> b (arity <= arity_bound, output degree <= window).
AInfinityAlgebra gauge_transform(const AInfinityAlgebra& a, const std::map<Word, Vec>& components, int arity_bound,
                                 int window);

}  // namespace uea
