#include "uea/graded.hpp"

#include <algorithm>

namespace uea {

GradedSpace::GradedSpace(std::vector<BasisElement> elements) {
  for (auto& e : elements) add(std::move(e));
}

int GradedSpace::add(BasisElement e) {
  int idx = size();
  if (!e.name.empty()) {
    auto [it, inserted] = by_name_.emplace(e.name, idx);
    if (!inserted) throw PreconditionError("duplicate basis name '" + e.name + "'");
  }
  auto& list = by_degree_[e.degree];
  local_.push_back(static_cast<int>(list.size()));
  list.push_back(idx);
  elems_.push_back(std::move(e));
  return idx;
}

const std::vector<int>& GradedSpace::in_degree(int n) const {
  static const std::vector<int> empty;
  auto it = by_degree_.find(n);
  return it == by_degree_.end() ? empty : it->second;
}

std::optional<int> GradedSpace::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

int GradedSpace::min_degree() const { return by_degree_.empty() ? 0 : by_degree_.begin()->first; }
int GradedSpace::max_degree() const { return by_degree_.empty() ? 0 : by_degree_.rbegin()->first; }

std::vector<int> GradedSpace::degrees() const {
  std::vector<int> out;
  for (const auto& [n, list] : by_degree_) out.push_back(n);
  return out;
}

GradedMap::GradedMap(SpacePtr source, SpacePtr target, int degree)
    : src_(std::move(source)), tgt_(std::move(target)), degree_(degree) {}

GradedMap GradedMap::identity(const SpacePtr& space) {
  GradedMap id(space, space, 0);
  for (int i = 0; i < space->size(); ++i) id.set_column(i, Vec{{i, Scalar(1)}});
  return id;
}

Vec& GradedMap::mutable_column(int src_index) {
  int n = src_->degree(src_index);
  auto& block = blocks_[n];
  if (block.empty()) block.resize(src_->dim(n));
  return block[src_->local_index(src_index)];
}

void GradedMap::set_column(int src_index, Vec column) {
  int target_degree = src_->degree(src_index) + degree_;
  for (auto it = column.begin(); it != column.end();) {
    if (sgn(it->second) == 0) {
      it = column.erase(it);
      continue;
    }
    if (tgt_->degree(it->first) != target_degree)
      throw PreconditionError("GradedMap entry between undeclared degrees");
    ++it;
  }
  if (column.empty() && blocks_.count(src_->degree(src_index)) == 0) return;
  mutable_column(src_index) = std::move(column);
}

void GradedMap::add_to_column(int src_index, const Vec& column, const Scalar& coef) {
  Vec& col = mutable_column(src_index);
  add_scaled(col, column, coef);
}

const Vec& GradedMap::column(int src_index) const {
  static const Vec empty;
  auto it = blocks_.find(src_->degree(src_index));
  if (it == blocks_.end() || it->second.empty()) return empty;
  return it->second[src_->local_index(src_index)];
}

Vec GradedMap::apply(const Vec& v) const {
  Vec out;
  for (const auto& [i, c] : v) add_scaled(out, column(i), c);
  return out;
}

bool GradedMap::is_zero() const {
  for (const auto& [n, block] : blocks_)
    for (const auto& col : block)
      if (!col.empty()) return false;
  return true;
}

std::size_t GradedMap::nnz() const {
  std::size_t total = 0;
  for (const auto& [n, block] : blocks_)
    for (const auto& col : block) total += col.size();
  return total;
}

GradedMap GradedMap::after(const GradedMap& other) const {
  GradedMap out(other.src_, tgt_, degree_ + other.degree_);
  for (const auto& [n, block] : other.blocks_) {
    const auto& ids = other.src_->in_degree(n);
    for (std::size_t k = 0; k < block.size(); ++k) {
      if (block[k].empty()) continue;
      Vec col = apply(block[k]);
      if (!col.empty()) out.set_column(ids[k], std::move(col));
    }
  }
  return out;
}

GradedMap GradedMap::plus(const GradedMap& other, const Scalar& coef) const {
  if (other.degree_ != degree_) throw PreconditionError("adding maps of different degrees");
  GradedMap out = *this;
  for (const auto& [n, block] : other.blocks_) {
    const auto& ids = other.src_->in_degree(n);
    for (std::size_t k = 0; k < block.size(); ++k)
      if (!block[k].empty()) out.add_to_column(ids[k], block[k], coef);
  }
  return out;
}

ChainComplex make_complex(SpacePtr space, GradedMap d, DegreeWindow valid) {
  if (d.degree() != -1) throw PreconditionError("differential must have degree -1");
  return ChainComplex{std::move(space), std::move(d), valid};
}

}  // namespace uea
