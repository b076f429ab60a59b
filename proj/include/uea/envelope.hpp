#pragma once

#include <memory>
#include <unordered_map>

#include "uea/coalgebra.hpp"

namespace uea {

// Symmetric words over generators with their own degrees: the basis of S̄(g)
// and of PBW monomials. Names join generator names with '*'.
std::shared_ptr<WordBasis> symmetric_algebra_basis(const SpacePtr& generators, int max_degree, int min_length = 1);

// Universal enveloping algebra of a dg Lie algebra on the PBW monomial basis
// (non-decreasing words; odd generators at most once). Products are computed
// by straightening x_b x_a -> (-1)^{|a||b|} x_a x_b + l_2(x_b, x_a) for b > a and
// x x -> (1/2) l_2(x, x) for odd x. The differential extends l_1 as a derivation.
class ClassicalEnvelope : public DgAlgebra {
 public:
  ClassicalEnvelope(DgLieAlgebra g, int max_degree);

  Vec multiply(int a, int b) const override;
  const WordBasis& words() const { return *words_; }
  const DgLieAlgebra& lie() const { return g_; }

  // Normal form of an arbitrary product of generators (the empty word is the unit).
  const WordVec& straighten(const Word& w) const;
  // Element of the augmentation ideal from PBW words (throws on a unit term).
  Vec to_basis(const WordVec& v) const;
  // (1/n!) Σ_σ ε(σ) x_σ(1)..x_σ(n), for any word of generators.
  WordVec symmetrize(const Word& w) const;

 private:
  DgLieAlgebra g_;
  std::shared_ptr<WordBasis> words_;
  std::vector<int> gdeg_;
  mutable std::unordered_map<Word, WordVec, WordHash> normal_;
};

// Free graded Lie algebra on the desuspended coaugmentation coideal of 𝒞(g),
// realized inside Ω̄𝒞(g) as the Lie subalgebra generated by the cobar letters,
// with the cobar differential as l_1 and the graded commutator as l_2.
// Complete in degrees <= max_degree.
struct Rectification {
  DgLieAlgebra lie;
  std::shared_ptr<const CobarAlgebra> cobar;
  std::vector<Vec> elements;  // basis element of lie.space -> element of Ω̄𝒞(g)
};
Rectification rectify(const LInfinityAlgebra& g, int max_degree);

// PBW symmetrization of a word of elements of some algebra: (1/n!) Σ_σ ε(σ)
// r_σ(1) ⋯ r_σ(n) where the r_t are given elements and `mul` multiplies.
Vec symmetrized_product(const std::vector<Vec>& factors, const std::vector<int>& degrees,
                        const std::function<Vec(const Vec&, const Vec&)>& mul);

}  // namespace uea
