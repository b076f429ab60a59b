#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uea/graded.hpp"

namespace uea {

struct ComplexCheck {
  bool ok = true;
  int degree = 0;
  int element = -1;  // first basis element with d(d(e)) != 0
  Vec residual;
};

// d∘d = 0 on every basis element whose degree lies in `window`.
ComplexCheck check_complex(const ChainComplex& c, DegreeWindow window);

struct HomologyData {
  DegreeWindow window;
  std::map<int, int> dims;
  std::map<int, std::vector<Vec>> representatives;  // cycles in c.space
};

// Dimensions only; cheaper than homology().
std::map<int, int> homology_dims(const ChainComplex& c, DegreeWindow window);

// Dimensions plus cycle representatives chosen by deterministic elimination.
// Throws WindowError if the complex is not valid one degree above the window.
HomologyData homology(const ChainComplex& c, DegreeWindow window);

// Rank of the map induced on homology by a degree-0 chain map f: src -> tgt,
// degree by degree on the window.
std::map<int, int> induced_rank(const ChainComplex& src, const ChainComplex& tgt, const GradedMap& f,
                                DegreeWindow window);

// Strong deformation retract of `big` onto `small`.
//   p i = 1,  i p - 1 = d h + h d,  h h = 0,  h i = 0,  p h = 0.
struct Contraction {
  ChainComplex big;
  ChainComplex small;
  GradedMap i;  // small -> big, degree 0
  GradedMap p;  // big -> small, degree 0
  GradedMap h;  // big -> big, degree +1
  DegreeWindow window;
};

// Prescribed homology representatives, degree by degree, with names for the
// small basis. Each list must be a basis of H_n modulo boundaries.
struct RepresentativeChoice {
  std::map<int, std::vector<Vec>> cycles;
  std::map<int, std::vector<std::string>> names;
  std::map<int, std::vector<int>> weights;
};

// Contraction of c onto (H(c), 0) on the window. The small basis is either
// chosen by elimination (first independent cycles in basis order) or taken
// from `choice`. When d preserves basis weights, so do i, p and h.
Contraction contraction_onto_homology(const ChainComplex& c, DegreeWindow window,
                                      const RepresentativeChoice* choice = nullptr);

struct SideConditionReport {
  bool ok = true;
  std::string failed;  // which identity
  int degree = 0;
  int element = -1;    // index in the source space of the failing identity
};

// Checks p i = 1, i p - 1 = d h + h d, h h = 0, h i = 0, p h = 0 and that i, p
// are chain maps, on basis elements with degree in `window`.
SideConditionReport check_side_conditions(const Contraction& c, DegreeWindow window);

// Replaces h by a homotopy satisfying all side conditions, given one that
// only satisfies i p - 1 = d h + h d (and p i = 1).
Contraction normalize_side_conditions(Contraction c);

}  // namespace uea
