#pragma once

#include <map>
#include <vector>

#include "pinv/group_action.hpp"
#include "pinv/invariants.hpp"
#include "pinv/polynomial.hpp"
#include "pinv/root_combinatorics.hpp"

namespace pinv {

enum class SliceKind { Y, X };

struct SlicePoint {
  PointM point;
  SliceKind kind = SliceKind::Y;
  /// Y: coefficient on every root of S u Phi. X: coefficient on Psi.
  std::map<Root, Rational> coefficients;
};

/// Throws Error(ZeroCoefficient) or Error(WrongSupport) unless coeffs covers
/// exactly S u Phi with nonzero values.
SlicePoint make_Y_point(const Combinatorics& comb, const VarSetPtr& vars,
                        const std::map<Root, Rational>& coeffs);

/// Ones on (S u Phi) minus Psi, the given nonzero values on Psi, zero
/// elsewhere. Same errors as make_Y_point.
SlicePoint make_X_point(const Combinatorics& comb, const VarSetPtr& vars,
                        const std::map<Root, Rational>& psi_coeffs);

bool is_Y_point(const Combinatorics& comb, const PointM& x);
bool is_X_point(const Combinatorics& comb, const PointM& x);

/// Reads x as a Y-point. Throws Error(NotYPoint).
SlicePoint as_Y_point(const Combinatorics& comb, const PointM& x);

/// One torus generator h_i(b); `cell` is the coordinate it normalized.
struct TranscriptEntry {
  int i = 0;
  Rational b;
  int step = 0;
  Root cell;
};

struct ReductionTranscript {
  std::vector<TranscriptEntry> entries;

  /// Product of all h_i(b); they commute, so order is irrelevant.
  GroupElement product(int n) const;
};

struct Reduction {
  SlicePoint result;
  ReductionTranscript transcript;
};

/// Block indices a_1 = 1 < a_2 < ... < a_p where each block is the first one
/// larger than the previous record (and larger than 1 for a_2).
std::vector<int> record_blocks(const BlockStructure& bs);

/// Torus reduction of a Y-point onto the X slice. Throws Error(NotYPoint),
/// Error(DegenerateInput) on a zero coordinate read, Error(ReductionFailure)
/// if the normalized cells cannot all be made 1.
Reduction t_reduce(const Combinatorics& comb, const PointM& y);

/// A_psi / B_psi at x, keyed by psi.
std::map<Root, Rational> invariant_values(const InvariantFamily& family,
                                          const PointM& x);

/// Restriction images of the B-invariants reduced to sign * c_psi * (monomial
/// in earlier c's), keyed for the triangular solve.
class CanonicalSolver {
 public:
  explicit CanonicalSolver(const InvariantFamily& family);

  /// Throws Error(MissingValue) or Error(DivisionByZero).
  std::map<Root, Rational> solve(const std::map<Root, Rational>& values) const;

  struct Image {
    Root psi;
    Rational sign;
    std::vector<std::pair<Root, int>> others;  // earlier c's and exponents
  };
  const std::vector<Image>& images() const noexcept { return images_; }

 private:
  std::vector<Image> images_;  // numbering order
};

std::map<Root, Rational> invariants_to_canonical(
    const InvariantFamily& family, const std::map<Root, Rational>& values);

/// dim M - |Psi|.
int orbit_dimension(const BlockStructure& bs, const PsiCertificates& psi);

}  // namespace pinv
