#pragma once

#include <map>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "pinv/polynomial.hpp"
#include "pinv/root_combinatorics.hpp"

namespace pinv {

/// Ordered rows I and columns J of the minor attached to a root.
struct MinorIndex {
  std::vector<int> rows;
  std::vector<int> cols;
};

/// For gamma = (a, b): the base roots (i, j) with i > a and j < b, giving
/// I = {a, i...} and J = {j..., b}, both sorted.
MinorIndex s_gamma(Root gamma, const Base& base);

/// Variables on M, the formal matrix and its square.
class FormalRing {
 public:
  explicit FormalRing(const BlockStructure& bs);

  const VarSetPtr& vars() const noexcept { return vars_; }
  const PolyMatrix& x() const noexcept { return x_; }
  const PolyMatrix& x_squared() const noexcept { return x2_; }

 private:
  VarSetPtr vars_;
  PolyMatrix x_;
  PolyMatrix x2_;
};

/// Minor sizes grow with the number of nested base roots; keep the cap
/// comfortably above anything reachable for n <= 16.
inline constexpr std::size_t kInvariantDetCap = 16;

Polynomial minor_M(const FormalRing& ring, const Base& base, Root gamma);

/// Sum over the split index m from col(first) to row(second) of
/// M_(row first, m) * M_(m, col second). Throws Error(NotAdmissible) when
/// the bridge leaves the reductive part.
Polynomial L_invariant(const FormalRing& ring, const BlockStructure& bs,
                       const Base& base, const AdmissiblePair& q);

/// Block determinant | X_I^{J'}  (X^2)_I^J ; 0  X_{I'}^J | with rows I then
/// I' and columns J' then J (1-based indices).
Polynomial combined_minor(const FormalRing& ring, std::span<const int> rows,
                          std::span<const int> rows_extra,
                          std::span<const int> cols,
                          std::span<const int> cols_extra);

/// The combined minor of an admissible pair (mu1, mu2): I from M_mu1, J from
/// M_mu2, I' = I_2 minus row(mu2), J' = J_1 minus col(mu1).
Polynomial combined_minor(const FormalRing& ring, const BlockStructure& bs,
                          const Base& base, const AdmissiblePair& q);

enum class InvariantKind { M, L, A, B };

std::string_view to_string(InvariantKind k) noexcept;

/// One polynomial factor M_root or L_root of a B-invariant quotient.
struct Factor {
  InvariantKind kind = InvariantKind::M;  // M or L only
  Root root;

  friend auto operator<=>(const Factor&, const Factor&) = default;
};

/// A_psi or B_psi kept as a product of M/L factors over a product of M/L
/// factors. Nothing is cancelled.
struct FactoredInvariant {
  InvariantKind kind = InvariantKind::A;
  Root root;
  std::vector<Factor> num;
  std::vector<Factor> den;
};

/// Throws Error(MissingWitness) if the witness does not fit psi or the
/// extended base.
FactoredInvariant A_invariant(const Combinatorics& comb, const Psi1Witness& w);

/// Throws Error(MissingWitness), Error(CaseMismatch), or
/// Error(CertificateFailure) when the torus weight cannot be balanced.
FactoredInvariant B_invariant(const Combinatorics& comb,
                              const Psi2Certificate& cert);

/// Exponent of t_1..t_n picked up by inv under conjugation by diag(t);
/// zero for a torus invariant quotient.
std::vector<int> torus_weight(const Combinatorics& comb,
                              const FactoredInvariant& inv);

/// All M_xi, L_phi, A_psi and B_psi of one block structure.
class InvariantFamily {
 public:
  static InvariantFamily build(std::span<const int> sizes);
  static InvariantFamily build(Combinatorics comb);

  const Combinatorics& combinatorics() const noexcept { return *comb_; }
  const FormalRing& ring() const noexcept { return *ring_; }
  const VarSetPtr& vars() const noexcept { return ring_->vars(); }

  /// M_xi for xi in S.
  const std::map<Root, Polynomial>& minors() const noexcept { return minors_; }
  /// L_phi for phi in Phi.
  const std::map<Root, Polynomial>& lpolys() const noexcept { return lpolys_; }
  /// A_psi in (row, col) order of Psi1.
  const std::vector<FactoredInvariant>& a_invariants() const noexcept {
    return a_;
  }
  /// B_psi in (row, col) order of Psi2.
  const std::vector<FactoredInvariant>& b_invariants() const noexcept {
    return b_;
  }
  /// A and B invariants in Psi numbering order.
  std::vector<const FactoredInvariant*> numbered() const;
  const FactoredInvariant& invariant_for(Root psi) const;

  /// Throws Error(MissingWitness) for a factor the family does not hold.
  const Polynomial& factor(const Factor& f) const;

  /// Values of every M and L factor used by the family, at x.
  std::map<Factor, Rational> factor_values(const PointM& x) const;

  /// Throws Error(DegenerateInput) when a denominator factor vanishes at x.
  Rational evaluate(const FactoredInvariant& inv, const PointM& x) const;
  static Rational evaluate(const FactoredInvariant& inv,
                           const std::map<Factor, Rational>& values);
  /// True when every denominator factor of A and B is nonzero at x.
  bool denominators_nonzero(const PointM& x) const;

  /// Multiplied-out numerator and denominator.
  RationalExpr expand(const FactoredInvariant& inv) const;

 private:
  InvariantFamily() = default;

  std::shared_ptr<const Combinatorics> comb_;
  std::shared_ptr<const FormalRing> ring_;
  std::map<Root, Polynomial> minors_;
  std::map<Root, Polynomial> lpolys_;
  std::vector<FactoredInvariant> a_;
  std::vector<FactoredInvariant> b_;
  std::map<Root, Polynomial> aux_minors_;  // M factors on roots outside S
};

/// Variables c_psi, psi in Psi.
VarSetPtr restriction_vars(const Combinatorics& comb);

/// Substitution x_psi -> c_psi on Psi, 1 on the rest of S u Phi, 0 elsewhere.
Polynomial restrict_pi(const Polynomial& p, const Combinatorics& comb,
                       const VarSetPtr& cvars);

/// Throws Error(VanishingDenominator).
RationalExpr restrict_pi(const RationalExpr& f, const Combinatorics& comb,
                         const VarSetPtr& cvars);

/// Factor-wise restriction of a quotient; avoids expanding it on M first.
/// Throws Error(VanishingDenominator).
RationalExpr restrict_pi(const InvariantFamily& family,
                         const FactoredInvariant& inv, const VarSetPtr& cvars);

/// The monomial image predicted for A_psi or B_psi on the slice: c_psi times
/// c~ of the witness roots, where c~_phi = c_phi on Psi and 1 otherwise.
/// Carries no sign.
RationalExpr restriction_closed_form(const Combinatorics& comb, Root psi,
                                     const VarSetPtr& cvars);

/// Exact Jacobian rank of {M_xi, L_phi} at x.
std::size_t jacobian_rank_ml(const InvariantFamily& family, const PointM& x);

/// Exact Jacobian rank of {A_psi, B_psi} at x, using the logarithmic
/// derivative of each factor. Throws Error(DegenerateInput) when a factor
/// vanishes at x.
std::size_t jacobian_rank_ab(const InvariantFamily& family, const PointM& x);

}  // namespace pinv
