#pragma once

#include <climits>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "uea/graded.hpp"

namespace uea {

// L∞-algebra on a positively graded, finite-dimensional space. l_k has degree
// k - 2 and is stored on canonical words: non-decreasing generator indices,
// where only odd generators may repeat. Values on other orderings follow from
// graded antisymmetry.
struct LInfinityAlgebra {
  SpacePtr space;
  std::map<Word, Vec> brackets;
  int max_arity = 2;  // brackets of arity > max_arity are zero
  int top_degree = INT_MAX;  // brackets are known when their output degree is <= this

  bool is_minimal() const;
  int top_arity() const;  // largest arity carrying a nonzero bracket (0 if abelian)
  // l_k on an arbitrary ordering of generators.
  Vec bracket(std::span<const int> inputs) const;
  std::vector<int> degrees() const;
};

// Canonical form of an L∞ input word: sorted indices and the sign χ(σ) =
// sgn(σ)·ε(σ) picked up, or nullopt if the word vanishes by antisymmetry.
struct CanonicalWord {
  Word word;
  int sign = 1;
};
std::optional<CanonicalWord> canonical_l_word(std::span<const int> inputs, const std::vector<int>& degrees);

// Validates generator degrees (>= 1), canonical words, output degrees
// (sum of inputs + k - 2) and arity bounds; drops zero entries.
LInfinityAlgebra make_l_infinity(SpacePtr space, std::map<Word, Vec> brackets, int max_arity);

// A dg Lie algebra is an L∞-algebra whose brackets live in arities 1 and 2.
using DgLieAlgebra = LInfinityAlgebra;
void require_dg_lie(const LInfinityAlgebra& g);

// Linear map commuting with every bracket.
struct StrictMorphism {
  LInfinityAlgebra source;
  LInfinityAlgebra target;
  GradedMap linear;  // degree 0
};

// First canonical source word on which f∘l_k differs from l_k∘f^{⊗k}, if any.
std::optional<Word> strict_morphism_defect(const StrictMorphism& f);

// A∞-structure on the augmentation ideal Ā of a connected algebra (Ā is
// positively graded; the unit is strict and implicit). m_k has degree k - 2.
class AInfinityStructure {
 public:
  virtual ~AInfinityStructure() = default;
  virtual const SpacePtr& space() const = 0;
  // Products of arity > max_arity() are unknown (not zero).
  virtual int max_arity() const = 0;
  // m_k is known when its output degree is <= top_degree().
  virtual int top_degree() const = 0;
  // m_k on a word of basis indices, k = word size >= 1. Throws WindowError
  // outside the known range.
  virtual Vec product(std::span<const int> inputs) const = 0;

  void require_known(std::span<const int> inputs) const;
};

// Stored A∞-algebra: m_k on ordered basis words, all other words zero.
class AInfinityAlgebra : public AInfinityStructure {
 public:
  AInfinityAlgebra() = default;
  AInfinityAlgebra(SpacePtr space, std::map<Word, Vec> products, int max_arity, int top_degree);

  const SpacePtr& space() const override { return space_; }
  int max_arity() const override { return max_arity_; }
  int top_degree() const override { return top_degree_; }
  Vec product(std::span<const int> inputs) const override;

  const std::map<Word, Vec>& products() const { return products_; }
  std::map<Word, Vec>& mutable_products() { return products_; }
  bool is_minimal() const;

 private:
  SpacePtr space_;
  std::map<Word, Vec> products_;
  int max_arity_ = 0;
  int top_degree_ = 0;
};

// Copies every product of arity <= max_arity with output degree <= top_degree
// (inputs enumerated over all words of the space).
AInfinityAlgebra store_products(const AInfinityStructure& a, int max_arity, int top_degree);

// l_k(x_1..x_k) = Σ_σ χ(σ) m_k(x_σ(1)..x_σ(k)), with χ the sign of σ times the
// Koszul sign. Brackets are stored for every canonical word with output degree
// within the structure's known range and arity <= arity_bound.
LInfinityAlgebra antisymmetrize(const AInfinityStructure& a, int arity_bound);

}  // namespace uea
