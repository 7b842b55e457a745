#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pinv/rational.hpp"
#include "pinv/root_combinatorics.hpp"

namespace pinv {

/// A fixed, ordered universe of variables, each indexed by a root. Polynomials
/// over x_{i,j} use the nilradical M; restriction images use c_psi, psi in Psi.
class VarSet {
 public:
  VarSet(std::string symbol, std::vector<Root> roots);

  static std::shared_ptr<const VarSet> make(std::string symbol,
                                            std::vector<Root> roots);

  const std::string& symbol() const noexcept { return symbol_; }
  std::size_t size() const noexcept { return roots_.size(); }
  Root root(std::uint32_t index) const { return roots_.at(index); }
  const std::vector<Root>& roots() const noexcept { return roots_; }
  std::optional<std::uint32_t> index_of(Root r) const;
  /// Throws Error(UnknownVariable).
  std::uint32_t require(Root r) const;
  std::string name(std::uint32_t index) const;

  friend bool operator==(const VarSet& a, const VarSet& b) {
    return a.symbol_ == b.symbol_ && a.roots_ == b.roots_;
  }

 private:
  std::string symbol_;
  std::vector<Root> roots_;  // sorted
  std::map<Root, std::uint32_t> index_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

struct VarPower {
  std::uint32_t var = 0;
  std::uint32_t exp = 0;

  friend auto operator<=>(const VarPower&, const VarPower&) = default;
};

/// Sorted by variable index, exponents positive.
using Monomial = std::vector<VarPower>;

Monomial multiply(const Monomial& a, const Monomial& b);

/// Sparse multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored; terms iterate in canonical monomial order.
class Polynomial {
 public:
  explicit Polynomial(VarSetPtr vars);

  static Polynomial constant(VarSetPtr vars, const Rational& value);
  /// Throws Error(UnknownVariable) if r is outside the universe.
  static Polynomial variable(VarSetPtr vars, Root r);

  const VarSetPtr& vars() const noexcept { return vars_; }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  int degree() const;
  /// Roots of all variables that occur.
  std::vector<Root> support() const;

  void add_term(const Monomial& m, const Rational& coef);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    return a += b;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    return a -= b;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void require_same_universe(const Polynomial& other) const;

  VarSetPtr vars_;
  std::map<Monomial, Rational> terms_;
};

/// Human-readable form, e.g. "x_{1,3}*x_{2,4} - x_{1,4}*x_{2,3}".
std::string to_string(const Polynomial& p);

Polynomial derivative(const Polynomial& p, Root var);

/// Ring homomorphism sending each variable to `image(root)`, a polynomial
/// over `target`. Images are computed once per variable.
Polynomial substitute(const Polynomial& p, const VarSetPtr& target,
                      const std::function<Polynomial(Root)>& image);

/// Exact-rational assignment to every coordinate of a variable universe.
class PointM {
 public:
  /// All coordinates zero.
  explicit PointM(VarSetPtr vars);

  /// Every root of `vars` must be present; Error(MissingVariable) otherwise,
  /// Error(UnknownVariable) for extra roots.
  static PointM from_values(VarSetPtr vars,
                            const std::map<Root, Rational>& values);

  const VarSetPtr& vars() const noexcept { return vars_; }
  /// Throws Error(MissingVariable) if r is outside the domain.
  const Rational& at(Root r) const;
  void set(Root r, const Rational& value);
  std::span<const Rational> values() const noexcept { return values_; }
  std::vector<Root> support() const;

  friend bool operator==(const PointM& a, const PointM& b);

 private:
  VarSetPtr vars_;
  std::vector<Rational> values_;
};

/// Throws Error(MissingVariable) if p uses a variable not in x's domain.
Rational evaluate(const Polynomial& p, const PointM& x);

/// Gradient of p at x, one entry per variable of `wrt` (in its order).
std::vector<Rational> gradient(const Polynomial& p, const PointM& x,
                               const VarSet& wrt);

/// Unreduced quotient num/den with den not the zero polynomial.
struct RationalExpr {
  Polynomial num;
  Polynomial den;

  RationalExpr(Polynomial n, Polynomial d);
};

/// n1 * d2 == n2 * d1 as polynomials; no gcd reduction.
bool ratexpr_equal(const RationalExpr& a, const RationalExpr& b);

/// Throws Error(DegenerateInput) when the denominator vanishes at x.
Rational evaluate(const RationalExpr& f, const PointM& x);

/// Dense rectangular matrix of polynomials over one universe.
class PolyMatrix {
 public:
  PolyMatrix(VarSetPtr vars, std::size_t rows, std::size_t cols);

  /// The formal matrix whose (i, j) entry is x_{i,j} on M and zero elsewhere.
  static PolyMatrix formal(const BlockStructure& bs, VarSetPtr vars);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const VarSetPtr& vars() const noexcept { return vars_; }

  Polynomial& at(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  const Polynomial& at(std::size_t r, std::size_t c) const {
    return cells_[r * cols_ + c];
  }

  /// Rows and columns are 1-based indices into this matrix.
  PolyMatrix submatrix(std::span<const int> rows,
                       std::span<const int> cols) const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);

 private:
  VarSetPtr vars_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> cells_;
};

inline constexpr std::size_t kDefaultDetCap = 8;

/// Exact determinant by cofactor expansion memoized on column subsets.
/// Throws Error(NotSquare) or Error(SizeCap).
Polynomial poly_det(const PolyMatrix& m, std::size_t cap = kDefaultDetCap);

}  // namespace pinv
