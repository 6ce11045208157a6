#include "flowvol/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace flowvol {

long matrix_rank(IntMatrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  for (const auto& r : m) {
    if (r.size() != cols) throw std::invalid_argument("ragged matrix");
  }
  BigInt prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        // Bareiss step; the division is exact.
        m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
      }
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return static_cast<long>(rank);
}

long matrix_rank(const std::vector<std::vector<int>>& m) {
  IntMatrix big;
  big.reserve(m.size());
  for (const auto& row : m) {
    std::vector<BigInt> r;
    r.reserve(row.size());
    for (int x : row) r.emplace_back(x);
    big.push_back(std::move(r));
  }
  return matrix_rank(std::move(big));
}

std::vector<std::vector<int>> select_columns(const std::vector<std::vector<int>>& m,
                                             const std::vector<std::size_t>& cols) {
  std::vector<std::vector<int>> out;
  out.reserve(m.size());
  for (const auto& row : m) {
    std::vector<int> r;
    r.reserve(cols.size());
    for (auto c : cols) r.push_back(row.at(c));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace flowvol
