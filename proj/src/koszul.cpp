#include "uea/koszul.hpp"

#include <algorithm>
#include <numeric>

#include "uea/graded.hpp"

namespace uea {

namespace {

void require_bijection(std::span<const int> perm) {
  std::vector<char> seen(perm.size(), 0);
  for (int p : perm) {
    if (p < 0 || p >= static_cast<int>(perm.size()) || seen[p])
      throw PreconditionError("koszul_sign: not a permutation");
    seen[p] = 1;
  }
}

}  // namespace

int koszul_sign(std::span<const int> perm, std::span<const int> degrees) {
  if (perm.size() != degrees.size()) throw PreconditionError("koszul_sign: length mismatch");
  require_bijection(perm);
  int sign = 1;
  for (std::size_t p = 0; p < perm.size(); ++p)
    for (std::size_t q = p + 1; q < perm.size(); ++q)
      if (perm[p] > perm[q]) sign *= swap_sign(degrees[perm[p]], degrees[perm[q]]);
  return sign;
}

int permutation_sign(std::span<const int> perm) {
  require_bijection(perm);
  int sign = 1;
  for (std::size_t p = 0; p < perm.size(); ++p)
    for (std::size_t q = p + 1; q < perm.size(); ++q)
      if (perm[p] > perm[q]) sign = -sign;
  return sign;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace uea
