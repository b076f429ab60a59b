#pragma once

#include <span>
#include <vector>

namespace uea {

// Sign picked up when homogeneous elements v_0..v_{n-1} of the given degrees
// are rearranged into (v_{perm[0]}, ..., v_{perm[n-1]}). Every pair that
// changes relative order contributes (-1)^{|a||b|}. Returns +1 or -1.
// Throws PreconditionError on length mismatch or if perm is not a bijection.
int koszul_sign(std::span<const int> perm, std::span<const int> degrees);

// Sign of the permutation itself (ignoring degrees).
int permutation_sign(std::span<const int> perm);

// Sign of moving a block of total degree `a` past a block of degree `b`.
inline int swap_sign(long a, long b) { return ((a * b) & 1) ? -1 : 1; }

// All permutations of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> all_permutations(int n);

}  // namespace uea
