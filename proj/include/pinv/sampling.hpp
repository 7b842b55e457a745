#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pinv/group_action.hpp"
#include "pinv/polynomial.hpp"
#include "pinv/root_combinatorics.hpp"

namespace pinv {

using Rng = std::mt19937_64;

/// p/q with p in [-99, 99] minus 0 and q in [1, 9].
Rational random_nonzero_rational(Rng& rng);

/// Integer in [lo, hi], optionally excluding zero.
Rational random_integer(Rng& rng, int lo, int hi, bool nonzero);

/// Every coordinate a random nonzero rational.
PointM random_point(const VarSetPtr& vars, Rng& rng);

/// Product of 1..max_factors elementary unipotents g_{i,j}(t), t in [-9, 9].
GroupElement random_unipotent(int n, Rng& rng, int max_factors = 12);

/// Product of 1..max_factors generators, each either g_{i,j}(t) or h_i(b)
/// with b in [-9, 9] minus 0.
GroupElement random_borel(int n, Rng& rng, int max_factors = 12);

/// Random nonzero coefficients on S u Phi.
std::map<Root, Rational> random_slice_coefficients(const ExtendedBase& ext, Rng& rng);

}  // namespace pinv
