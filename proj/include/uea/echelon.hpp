#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "uea/scalar.hpp"

namespace uea {

// Incremental sparse row echelon form over Q. Vectors are inserted one at a
// time under caller-chosen generator ids; the pivot of a stored vector is its
// first nonzero index in basis order, so results depend only on insertion
// order. Optionally records, for each stored vector, its expression in the
// inserted generators.
class Echelon {
 public:
  struct Row {
    Vec vec;
    Vec transform;  // vec = sum transform[g] * generator_g
  };

  struct Insertion {
    bool independent = false;
    // When dependent: generator = sum relation[g] * generator_g.
    Vec relation;
  };

  explicit Echelon(bool track = true) : track_(track) {}

  Insertion insert(Vec v, int generator);
  // Combination of generators equal to v, or nullopt if v is not in the span.
  std::optional<Vec> solve(Vec v) const;
  bool contains(Vec v) const;

  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<Row>& rows() const { return rows_; }

 private:
  // Eliminates leading terms while they hit pivots; returns the eliminated
  // combination when tracking.
  Vec reduce(Vec& v) const;

  bool track_;
  std::vector<Row> rows_;
  std::unordered_map<int, int> pivot_row_;
};

}  // namespace uea
