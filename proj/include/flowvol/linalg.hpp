#pragma once

#include <vector>

#include "flowvol/exact.hpp"

namespace flowvol {

using IntMatrix = std::vector<std::vector<BigInt>>;

// Rank by fraction-free (Bareiss) elimination; rows must have equal length.
long matrix_rank(IntMatrix m);
long matrix_rank(const std::vector<std::vector<int>>& m);

// Columns `cols` of m, in the given order.
std::vector<std::vector<int>> select_columns(const std::vector<std::vector<int>>& m,
                                             const std::vector<std::size_t>& cols);

}  // namespace flowvol
