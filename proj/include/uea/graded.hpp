#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "uea/scalar.hpp"

namespace uea {

// Raised when an operation would need data outside the degree window it was
// given (or that its inputs were built for).
class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an input violates a documented precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DegreeWindow {
  int lo = 0;
  int hi = 0;
  bool contains(int n) const { return lo <= n && n <= hi; }
};

struct BasisElement {
  std::string name;
  int degree = 0;
  int weight = -1;  // -1: untagged
};

// Finite-type graded basis. Elements are addressed by a global index; the
// per-degree lists keep global indices in insertion order, which is the fixed
// basis order used for pivoting.
class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(std::vector<BasisElement> elements);

  int add(BasisElement e);

  int size() const { return static_cast<int>(elems_.size()); }
  const BasisElement& element(int i) const { return elems_.at(i); }
  int degree(int i) const { return elems_[i].degree; }
  int weight(int i) const { return elems_[i].weight; }
  const std::string& name(int i) const { return elems_[i].name; }
  int local_index(int i) const { return local_[i]; }

  const std::vector<int>& in_degree(int n) const;
  int dim(int n) const { return static_cast<int>(in_degree(n).size()); }
  std::optional<int> find(const std::string& name) const;

  int min_degree() const;
  int max_degree() const;
  std::vector<int> degrees() const;

 private:
  std::vector<BasisElement> elems_;
  std::vector<int> local_;
  std::map<int, std::vector<int>> by_degree_;
  std::unordered_map<std::string, int> by_name_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

// Homogeneous linear map of fixed degree. Columns are stored in blocks keyed
// by source degree; each column lists global target indices.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(SpacePtr source, SpacePtr target, int degree);

  static GradedMap identity(const SpacePtr& space);

  const SpacePtr& source() const { return src_; }
  const SpacePtr& target() const { return tgt_; }
  int degree() const { return degree_; }

  void set_column(int src_index, Vec column);
  void add_to_column(int src_index, const Vec& column, const Scalar& coef = Scalar(1));
  const Vec& column(int src_index) const;

  Vec apply(const Vec& v) const;
  bool is_zero() const;
  // Number of stored nonzero entries.
  std::size_t nnz() const;

  // this ∘ other
  GradedMap after(const GradedMap& other) const;
  GradedMap plus(const GradedMap& other, const Scalar& coef = Scalar(1)) const;

  const std::map<int, std::vector<Vec>>& blocks() const { return blocks_; }

 private:
  Vec& mutable_column(int src_index);

  SpacePtr src_, tgt_;
  int degree_ = 0;
  std::map<int, std::vector<Vec>> blocks_;
};

inline constexpr DegreeWindow kUnbounded{-(1 << 28), 1 << 28};

// `valid` is the range of degrees in which the basis is complete and d is
// fully known; truncated constructions set it to their truncation degree.
struct ChainComplex {
  SpacePtr space;
  GradedMap d;  // degree -1
  DegreeWindow valid = kUnbounded;
};

ChainComplex make_complex(SpacePtr space, GradedMap d, DegreeWindow valid = kUnbounded);

}  // namespace uea
