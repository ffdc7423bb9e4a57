#include "crossidf/linalg.hpp"

#include <stdexcept>

namespace crossidf {

int matrix_rank(RatMatrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      const Rat f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

std::vector<std::vector<Rat>> solve_square(
    const RatMatrix& a, const std::vector<std::vector<Rat>>& b_cols) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("solve_square: not square");
  for (const auto& col : b_cols)
    if (col.size() != n) throw std::invalid_argument("solve_square: rhs size");

  const std::size_t m = b_cols.size();
  // Augmented [A | b_cols], eliminated to reduced echelon form.
  RatMatrix aug(n, std::vector<Rat>(n + m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    for (std::size_t k = 0; k < m; ++k) aug[i][n + k] = b_cols[k][i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && aug[piv][c] == 0) ++piv;
    if (piv == n) throw std::invalid_argument("solve_square: singular matrix");
    std::swap(aug[c], aug[piv]);
    const Rat p = aug[c][c];
    for (std::size_t j = c; j < n + m; ++j) aug[c][j] /= p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || aug[i][c] == 0) continue;
      const Rat f = aug[i][c];
      for (std::size_t j = c; j < n + m; ++j) aug[i][j] -= f * aug[c][j];
    }
  }
  std::vector<std::vector<Rat>> x(m, std::vector<Rat>(n));
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < n; ++i) x[k][i] = aug[i][n + k];
  return x;
}

}  // namespace crossidf
