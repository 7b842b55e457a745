#include "pinv/sampling.hpp"

namespace pinv {

Rational random_integer(Rng& rng, int lo, int hi, bool nonzero) {
  std::uniform_int_distribution<int> d(lo, hi);
  int v = d(rng);
  while (nonzero && v == 0) v = d(rng);
  return Rational(v);
}

Rational random_nonzero_rational(Rng& rng) {
  std::uniform_int_distribution<int> q(1, 9);
  Rational r(random_integer(rng, -99, 99, true).get_num(), Integer(q(rng)));
  r.canonicalize();
  return r;
}

PointM random_point(const VarSetPtr& vars, Rng& rng) {
  PointM x(vars);
  for (Root r : vars->roots()) x.set(r, random_nonzero_rational(rng));
  return x;
}

namespace {

GroupElement random_unipotent_factor(int n, Rng& rng) {
  std::uniform_int_distribution<int> row(1, n - 1);
  const int i = row(rng);
  std::uniform_int_distribution<int> col(i + 1, n);
  const int j = col(rng);
  return elementary_unipotent(n, i, j, random_integer(rng, -9, 9, false));
}

}  // namespace

GroupElement random_unipotent(int n, Rng& rng, int max_factors) {
  GroupElement g = GroupElement::identity(n);
  if (n < 2) return g;
  std::uniform_int_distribution<int> count(1, max_factors);
  for (int k = count(rng); k > 0; --k) g = g * random_unipotent_factor(n, rng);
  return g;
}

GroupElement random_borel(int n, Rng& rng, int max_factors) {
  GroupElement g = GroupElement::identity(n);
  std::uniform_int_distribution<int> count(1, max_factors);
  std::bernoulli_distribution torus(0.5);
  std::uniform_int_distribution<int> pos(1, n);
  for (int k = count(rng); k > 0; --k) {
    if (n < 2 || torus(rng)) {
      g = g * torus_h(n, pos(rng), random_integer(rng, -9, 9, true));
    } else {
      g = g * random_unipotent_factor(n, rng);
    }
  }
  return g;
}

std::map<Root, Rational> random_slice_coefficients(const ExtendedBase& ext, Rng& rng) {
  std::map<Root, Rational> out;
  for (Root r : ext.extended()) out.emplace(r, random_nonzero_rational(rng));
  return out;
}

}  // namespace pinv
