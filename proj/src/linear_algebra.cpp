#include "pinv/linear_algebra.hpp"

#include <algorithm>

#include "pinv/error.hpp"

namespace pinv {

std::size_t exact_rank(RationalMatrix rows) {
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.size());
  for (auto& r : rows) r.resize(width, Rational(0));

  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Rational inv = 1 / rows[rank][col];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Rational f = rows[r][col] * inv;
      for (std::size_t c = col; c < width; ++c) {
        if (rows[rank][c] != 0) rows[r][c] -= f * rows[rank][c];
      }
    }
    ++rank;
  }
  return rank;
}

std::optional<std::vector<Rational>> exact_solve(RationalMatrix a,
                                                 std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t width = rows ? a.front().size() : 0;
  if (b.size() != rows) throw Error(ErrorCode::NotSquare, "exact_solve");
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[rank], a[pivot]);
    std::swap(b[rank], b[pivot]);
    const Rational inv = 1 / a[rank][col];
    for (std::size_t c = col; c < width; ++c) a[rank][c] *= inv;
    b[rank] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = col; c < width; ++c) a[r][c] -= f * a[rank][c];
      b[r] -= f * b[rank];
    }
    pivots.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r) {
    if (b[r] != 0) return std::nullopt;
  }
  std::vector<Rational> x(width, Rational(0));
  for (std::size_t r = 0; r < rank; ++r) x[pivots[r]] = b[r];
  return x;
}

Rational exact_det(RationalMatrix m) {
  const std::size_t n = m.size();
  for (const auto& r : m) {
    if (r.size() != n) throw Error(ErrorCode::NotSquare, "exact_det");
  }
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

}  // namespace pinv
