#pragma once

#include "ringsum/cyclotomic.hpp"

namespace ringsum {

// Exact dense linear algebra over K. Matrices are row-major vectors of rows.
using KVec = std::vector<Cyclotomic>;
using KMat = std::vector<KVec>;

// Basis of the right kernel { v : M v = 0 } via Gauss-Jordan elimination.
std::vector<KVec> kernel_basis(KMat m, size_t cols);

// One solution of M v = rhs, or nullopt when inconsistent.
std::optional<KVec> solve_linear(KMat m, KVec rhs);

// Row-reduce the rows as vectors over K, dropping zero rows; returns an
// independent spanning subset (in echelon form).
std::vector<KVec> row_reduce(std::vector<KVec> rows);

// Basis of the integer kernel { v in Z^cols : M v = 0 } (saturated), computed
// with unimodular column operations.
std::vector<std::vector<Int>> integer_kernel(std::vector<std::vector<Int>> m, size_t cols);

// Basis of { v : M v = 0  and  sum_i cong[i] v[i] = 0 (mod modulus) }.
std::vector<std::vector<Int>> integer_kernel_with_congruence(const std::vector<std::vector<Int>>& m,
                                                             size_t cols,
                                                             const std::vector<Int>& cong,
                                                             const Int& modulus);

// Multiple simultaneous congruences; every modulus must be positive.
std::vector<std::vector<Int>> integer_kernel_with_congruences(
    const std::vector<std::vector<Int>>& m, size_t cols,
    const std::vector<std::pair<std::vector<Int>, Int>>& congs);

}  // namespace ringsum
