#pragma once

#include <memory>
#include <string>
#include <vector>

#include "uea/algebras.hpp"
#include "uea/homology.hpp"
#include "uea/words.hpp"

namespace uea {

enum class CoproductKind {
  Unshuffle,        // symmetric words: positional unshuffles with Koszul signs
  Deconcatenation,  // tensor words: cut points, no signs
};

// Conilpotent dg coalgebra on a word basis that contains the empty word
// (the coaugmentation). Letter degrees are the suspended degrees. Complete in
// degrees <= words->max_degree().
struct DgCoalgebra {
  WordBasisPtr words;
  ChainComplex complex;
  CoproductKind coproduct = CoproductKind::Deconcatenation;

  struct Split {
    Scalar coef;
    std::vector<int> parts;  // basis indices of the nonempty pieces, in order
  };
  // Iterated reduced coproduct into `pieces` nonempty parts (pieces >= 1);
  // pieces = 2 is the reduced coproduct.
  std::vector<Split> split(int index, int pieces) const;
  int max_degree() const { return words->max_degree(); }
};

using CoalgebraPtr = std::shared_ptr<const DgCoalgebra>;

// S^c(s g) with the coderivation extending the suspended brackets. Brackets
// are applied on positional subsets of each word; the result is returned to
// canonical order with Koszul signs.
DgCoalgebra chevalley_eilenberg(const LInfinityAlgebra& g, int max_degree);

// T^c(s Ā) with D[y_1|..|y_n] = Σ ± [..|b_k(y_i..y_{i+k-1})|..], where
// b_k = (décalage sign)·s m_k. Words longer than max_length are omitted; their
// absence is a truncation, not a claim that they vanish.
DgCoalgebra bar(const AInfinityStructure& a, int max_degree, int max_length = INT_MAX);

// Strict dg algebra on the augmentation ideal, viewed as an A∞-structure with
// m_1 = d, m_2 = multiply and no higher products.
class DgAlgebra : public AInfinityStructure {
 public:
  const SpacePtr& space() const override { return space_; }
  int max_arity() const override { return INT_MAX; }
  int top_degree() const override { return top_; }
  Vec product(std::span<const int> inputs) const override;

  virtual Vec multiply(int a, int b) const = 0;
  const GradedMap& differential() const { return d_; }
  // The augmentation-ideal complex, valid up to top_degree().
  ChainComplex complex() const { return make_complex(space_, d_, {kUnbounded.lo, top_}); }

 protected:
  SpacePtr space_;
  GradedMap d_;
  int top_ = 0;
};

using DgAlgebraPtr = std::shared_ptr<const DgAlgebra>;

// Ω̄C: tensor words over s^{-1}C̄, with
//   d(s^{-1}c) = s^{-1}dc + Σ (-1)^{|c'|} s^{-1}c' ⊗ s^{-1}c''
// extended as a derivation. Letter weights are the coalgebra word weights.
class CobarAlgebra : public DgAlgebra {
 public:
  CobarAlgebra(CoalgebraPtr c, int max_degree);
  Vec multiply(int a, int b) const override;

  const CoalgebraPtr& coalgebra() const { return c_; }
  const WordBasis& words() const { return *words_; }
  // Ω letter index of a nonempty coalgebra basis element, and back.
  int letter_of(int coalgebra_index) const { return letter_of_[coalgebra_index]; }
  int coalgebra_index(int letter) const { return letter_to_c_[letter]; }
  // Differential of a single letter, as tensor words of letters.
  const WordVec& letter_differential(int letter) const { return letter_d_[letter]; }
  // Sign on the linear part s^{-1}dc (the quadratic part is fixed).
  static constexpr int kLinearSign = 1;

 private:
  CoalgebraPtr c_;
  std::unique_ptr<WordBasis> words_;
  std::vector<int> letter_of_, letter_to_c_;
  std::vector<WordVec> letter_d_;
};

// Degree -1 map from a coalgebra (𝒞(g)) to the augmentation ideal of an
// A∞-algebra on S̄(g).
struct TwistingCochain {
  CoalgebraPtr source;
  std::shared_ptr<const AInfinityStructure> target;
  GradedMap tau;
};

// τ(sx) = x for every generator (matched by name), zero elsewhere.
TwistingCochain canonical_twisting_cochain(CoalgebraPtr ce, std::shared_ptr<const AInfinityStructure> target);

struct IdentityReport {
  bool ok = true;
  bool inconclusive = false;  // some basis element could not be tested
  std::string witness;        // first failing (or untestable) basis element
  int degree = 0;
  Vec residual;
  std::string note;
};

// Σ_t b_t(τ̂^{⊗t} Δ^{(t)} c) - τ̂(d c) = 0 for every nonempty coalgebra word
// c with |c| <= window + 2, i.e. every equation whose output degree is
// <= window. Words longer than the target's arity are reported inconclusive.
IdentityReport check_maurer_cartan(const TwistingCochain& t, int window);

// q(c) = Σ_t [τ̂c_(1)|..|τ̂c_(t)] into the given bar coalgebra of t.target.
GradedMap coalgebra_map_from_cochain(const TwistingCochain& t, const DgCoalgebra& target_bar);

// C ⊗ (𝕜 ⊕ Ā) with D(c⊗a) = dc⊗a ± c⊗m_1 a + Σ ± c_(0)⊗m_{t+1}(τc_(1),..,τc_(t), a),
// written with shifted products; the unit is strict. Complete in degrees
// <= max_degree.
ChainComplex twisted_tensor(const TwistingCochain& t, int max_degree);

}  // namespace uea
