#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>

#include "uea/envelope.hpp"
#include "uea/homology.hpp"

namespace uea {

// A degree -1 perturbation of a contraction's big differential that strictly
// lowers the basis weight tag.
struct Perturbation {
  GradedMap delta;
  std::string filtration = "weight";
};

// First column entry of delta that does not strictly lower the weight tag.
std::optional<std::pair<int, int>> filtration_defect(const GradedMap& delta);

struct PerturbedContraction {
  Contraction contraction;  // big.d = d + δ, small.d = d_small + pAi
  int series_terms = 0;     // number of nonzero terms of Σ (hδ)^k
};

// A = Σ_k δ(hδ)^k; i' = i + hAi, p' = p + pAh, h' = h + hAh, d'_small = d_small + pAi.
// Throws PreconditionError if (hδ)^k has not vanished after max_terms steps.
PerturbedContraction basic_perturbation_lemma(const Contraction& c, const Perturbation& pert, int max_terms = 64);

// Bar words over a graded space: letters carry degree |a| + 1. Includes the
// empty word.
std::shared_ptr<WordBasis> bar_words(const SpacePtr& letters, int max_degree, int max_length = INT_MAX);

// Tensor trick: contraction of (T^c(s big), internal d) onto (T^c(s small),
// internal d) with i, p applied letterwise and
//   H[y_1|..|y_n] = Σ_j (-1)^{|y_1|+..+|y_j|} [y_1|..|y_j| h y_{j+1} | ip y_{j+2}|..| ip y_n].
Contraction tensor_trick(const Contraction& c, int max_degree, int max_length = INT_MAX);

// Lazy transfer of a perturbed bar differential through the tensor trick.
// Words are sequences of letter indices of c.big (big side) or c.small (small side).
class BarTransfer {
 public:
  using Delta = std::function<WordVec(const Word&)>;
  using Filtration = std::function<std::pair<int, int>(const Word&)>;

  BarTransfer(const Contraction& letters, Delta delta, Filtration filtration, int max_steps = 256);

  // d_small (letterwise) + p̂ A î on a small bar word.
  WordVec transferred(const Word& small_word);
  WordVec include(const Word& small_word) const;    // î
  WordVec project(const WordVec& big) const;        // p̂
  WordVec homotopy(const WordVec& big) const;       // staggered H
  std::size_t visited() const { return memo_.size(); }

  // Perturbed contraction on bar words: d' = D + δ on the big side and the
  // transferred differential on the small side, with i', p', h'.
  WordVec perturbed_big_d(const WordVec& big);
  WordVec perturbed_i(const WordVec& small);
  WordVec perturbed_p(const WordVec& big);
  WordVec perturbed_h(const WordVec& big);
  // First violated side condition (or chain-map identity) on bar words of
  // degree <= max_degree and length <= max_length; empty when all hold.
  std::string side_condition_defect(int max_degree, int max_length);

 private:
  const WordVec& series(const Word& big_word, int depth);
  const WordVec& resolvent(const Word& big_word, int depth);  // Σ_k (Hδ)^k
  WordVec perturbation_series(const WordVec& big);           // A = δ Σ_k (Hδ)^k
  WordVec transferred(const WordVec& small);

  const Contraction& c_;
  Delta delta_;
  Filtration filt_;
  int max_steps_;
  std::vector<Vec> ip_;  // i p on big letters
  std::unordered_map<Word, WordVec, WordHash> memo_;
  std::unordered_map<Word, WordVec, WordHash> resolvent_;
};

struct TransferOptions {
  int side_check_degree = 0;  // 0 skips the bar-level side-condition check
  int side_check_length = 3;
};

// A∞-structure extracted from a transferred bar differential.
struct TransferredStructure {
  std::string provenance;               // "baranovsky", "moreno", "generic-htt"
  std::shared_ptr<AInfinityAlgebra> algebra;
  std::shared_ptr<WordBasis> words;     // symmetric word basis of the small side, when there is one
  int arity_bound = 0;
  int window = 0;
  bool extraction_sound = true;         // reassembled coderivation equals the transferred one
  std::string extraction_witness;
  bool side_conditions_checked = false;
  std::string side_condition_defect;    // empty when the checked side conditions hold
  std::map<std::string, long> stats;
};

// Transfers an A∞-structure along a contraction of its underlying complex
// (m_1 = big.d) using the tensor trick and a single perturbation by the
// products of arity >= 2. Output products: arity <= arity_bound, output degree <= window.
TransferredStructure homotopy_transfer(const AInfinityStructure& a, const Contraction& c, int arity_bound,
                                       int window, const TransferOptions& options = {});

// Minimal A∞-structure on S̄(g) from the abelianized cobar contraction
// Ω̄𝒞(g') -> S̄(g) perturbed to Ω̄𝒞(g) at bar level.
TransferredStructure baranovsky_envelope(const LInfinityAlgebra& g, int arity_bound, int window,
                                         const TransferOptions& options = {});

// Homology Lie algebra of a dg Lie algebra, with cycle representatives. Basis
// elements represented by a single generator keep that generator's name.
struct HomologyLie {
  LInfinityAlgebra lie;          // zero differential
  std::vector<Vec> representatives;  // cycles in g, one per basis element of lie.space
};
HomologyLie homology_lie(const DgLieAlgebra& g, int max_degree);

// Transfer from the classical envelope (dg Lie input) or from Ω̄𝒞(g), the
// envelope of the rectification (minimal L∞ input), onto S̄(H(g)) with PBW
// symmetrized representatives.
TransferredStructure moreno_fernandez_envelope(const LInfinityAlgebra& g, int arity_bound, int window,
                                               const TransferOptions& options = {});

}  // namespace uea
