#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pinv/rational.hpp"

namespace pinv {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact rank by Gaussian elimination over Q. Rows may have unequal length;
/// missing entries count as zero.
std::size_t exact_rank(RationalMatrix rows);

/// Some x with a x = b (free unknowns set to zero), or nullopt when the
/// system is inconsistent. Rows of a must all have the same length.
std::optional<std::vector<Rational>> exact_solve(RationalMatrix a,
                                                 std::vector<Rational> b);

/// Exact determinant of a square rational matrix.
Rational exact_det(RationalMatrix m);

}  // namespace pinv
