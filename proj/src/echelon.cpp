#include "uea/echelon.hpp"

namespace uea {

Vec Echelon::reduce(Vec& v) const {
  Vec comb;
  auto it = v.begin();
  while (it != v.end()) {
    int r = it->first;
    auto pk = pivot_row_.find(r);
    if (pk == pivot_row_.end()) break;
    const Row& row = rows_[pk->second];
    Scalar f = it->second / row.vec.begin()->second;
    for (const auto& [k, c] : row.vec) add_term(v, k, -f * c);
    if (track_) add_scaled(comb, row.transform, f);
    // rows only touch indices >= their pivot, so the new leading entry is > r
    it = v.begin();
  }
  return comb;
}

Echelon::Insertion Echelon::insert(Vec v, int generator) {
  Insertion result;
  Vec comb = reduce(v);
  if (v.empty()) {
    result.relation = std::move(comb);
    return result;
  }
  Row row;
  row.vec = std::move(v);
  if (track_) {
    row.transform = scaled(comb, Scalar(-1));
    add_term(row.transform, generator, Scalar(1));
  }
  pivot_row_.emplace(row.vec.begin()->first, static_cast<int>(rows_.size()));
  rows_.push_back(std::move(row));
  result.independent = true;
  return result;
}

std::optional<Vec> Echelon::solve(Vec v) const {
  Vec comb = reduce(v);
  if (!v.empty()) return std::nullopt;
  return comb;
}

bool Echelon::contains(Vec v) const {
  reduce(v);
  return v.empty();
}

}  // namespace uea
