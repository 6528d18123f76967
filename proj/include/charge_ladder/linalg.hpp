#ifndef CHARGE_LADDER_LINALG_HPP
#define CHARGE_LADDER_LINALG_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace charge_ladder {

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class Field>
struct LinearSolution {
  bool consistent = false;
  std::size_t rank = 0;
  std::size_t free_parameters = 0;
  // One solution with every free variable set to zero; empty when inconsistent.
  std::vector<Field> particular;
  // Basis of the homogeneous solution space (free_parameters vectors).
  std::vector<std::vector<Field>> nullspace;
};

/// Solves A x = b over an exact field by Gauss-Jordan elimination.
///
/// The rank test is exact: the system is inconsistent iff some row reduces to
/// 0 = nonzero. Works for over- and under-determined systems.
template <class Field>
LinearSolution<Field> solve_linear(Matrix<Field> a, std::vector<Field> b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw InvariantViolation("solve_linear: rhs size mismatch");
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  for (const auto& row : a)
    if (row.size() != cols) throw InvariantViolation("solve_linear: ragged matrix");

  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    const Field inv = Field(1) / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Field f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_cols.push_back(c);
    ++r;
  }

  LinearSolution<Field> out;
  out.rank = r;
  out.free_parameters = cols - r;
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return out;
  out.consistent = true;

  out.particular.assign(cols, Field(0));
  for (std::size_t i = 0; i < r; ++i) out.particular[pivot_cols[i]] = b[i];

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Field> v(cols, Field(0));
    v[f] = Field(1);
    for (std::size_t i = 0; i < r; ++i) v[pivot_cols[i]] = -a[i][f];
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

/// Fraction-free (Bareiss) determinant over an integral domain.
///
/// `exact_div(a, b)` must return a / b, which Bareiss guarantees is exact.
/// Used for both rational matrices and matrices of polynomials. `Ring{}` must
/// be the additive identity.
template <class Ring, class ExactDiv>
Ring bareiss_determinant(Matrix<Ring> m, const Ring& one, ExactDiv exact_div) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  const Ring zero{};
  bool negate = false;
  Ring prev = one;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == zero) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == zero) ++swap_row;
      if (swap_row == n) return zero;
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
    }
    prev = m[k][k];
  }
  Ring det = m[n - 1][n - 1];
  return negate ? Ring(-det) : det;
}

} // namespace charge_ladder

#endif
