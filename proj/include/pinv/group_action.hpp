#pragma once

#include <optional>
#include <vector>

#include "pinv/polynomial.hpp"
#include "pinv/rational.hpp"

namespace pinv {

/// One factor of a group element as it was built.
struct Generator {
  enum class Kind { Unipotent, Torus };
  Kind kind = Kind::Unipotent;
  int i = 0;
  int j = 0;            // unipotent only
  Rational value;       // t for g_{i,j}(t), b for h_i(b)
};

/// Upper-triangular invertible n x n rational matrix, an element of B.
class GroupElement {
 public:
  static GroupElement identity(int n);
  /// Throws Error(BadIndices) below the diagonal, Error(ZeroDiagonal) on a
  /// vanishing diagonal entry.
  static GroupElement from_entries(int n, const std::vector<std::vector<Rational>>& m);

  int n() const noexcept { return n_; }
  /// 1-based.
  const Rational& at(int row, int col) const {
    return m_[static_cast<std::size_t>((row - 1) * n_ + (col - 1))];
  }
  bool is_unipotent() const;
  /// Exact inverse by back substitution.
  GroupElement inverse() const;

  const std::optional<std::vector<Generator>>& provenance() const noexcept {
    return provenance_;
  }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.n_ == b.n_ && a.m_ == b.m_;
  }

 private:
  explicit GroupElement(int n);
  Rational& ref(int row, int col) {
    return m_[static_cast<std::size_t>((row - 1) * n_ + (col - 1))];
  }

  int n_ = 0;
  std::vector<Rational> m_;
  std::optional<std::vector<Generator>> provenance_;

  friend GroupElement elementary_unipotent(int, int, int, const Rational&);
  friend GroupElement diagonal_torus(const std::vector<Rational>&);
};

/// I + t E_{i,j}. Throws Error(BadIndices) unless 1 <= i < j <= n.
GroupElement elementary_unipotent(int n, int i, int j, const Rational& t);

/// Throws Error(ZeroDiagonal) or Error(EmptyInput).
GroupElement diagonal_torus(const std::vector<Rational>& entries);

/// diag(1, ..., b, ..., 1) with b at position i: Ad multiplies row i by b and
/// column i by 1/b.
GroupElement torus_h(int n, int i, const Rational& b);

/// g x g^{-1}, read back on the coordinates of x. Throws Error(SupportLeak)
/// if the conjugate has a nonzero entry outside those coordinates.
PointM adjoint(const GroupElement& g, const PointM& x);

/// The polynomial x -> p(Ad_g x). Only meant for low-degree checks.
Polynomial pullback(const Polynomial& p, const GroupElement& g);

}  // namespace pinv
