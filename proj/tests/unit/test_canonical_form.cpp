#include <fstream>
#include <set>

#include "doctest.h"
#include "pinv/canonical_form.hpp"
#include "pinv/error.hpp"
#include "pinv/json_io.hpp"
#include "pinv/sampling.hpp"

using namespace pinv;

namespace {

const std::vector<std::vector<int>> kReference = {
    {2, 1, 3, 2}, {2, 3, 2}, {1, 2, 2, 1}, {2, 2, 3, 3, 2}, {3, 4, 3, 2}, {2, 1, 3, 1, 4, 2}};

Json read_json(const std::string& name) {
  std::ifstream in(std::string(PINV_TEST_DATA) + "/" + name);
  REQUIRE(in);
  return Json::parse(in);
}

PointM random_y(const InvariantFamily& f, Rng& rng) {
  const Combinatorics& c = f.combinatorics();
  for (;;) {
    const SlicePoint y = make_Y_point(c, f.vars(), random_slice_coefficients(c.ext, rng));
    if (f.denominators_nonzero(y.point)) return y.point;
  }
}

}  // namespace

TEST_CASE("record blocks") {
  auto rec = [](std::vector<int> s) { return record_blocks(BlockStructure::build(s)); };
  CHECK(rec({2, 1, 3, 1, 4, 2}) == std::vector<int>{1, 3, 5});
  CHECK(rec({1, 2, 2, 1}) == std::vector<int>{1, 2});
  CHECK(rec({3, 2, 1}) == std::vector<int>{1});
  CHECK(rec({1, 1, 1}) == std::vector<int>{1});
  CHECK(rec({2, 3, 2}) == std::vector<int>{1, 2});
}

TEST_CASE("worked reduction on 1,2,2,1") {
  const InvariantFamily f = InvariantFamily::build(std::vector<int>{1, 2, 2, 1});
  const Combinatorics& c = f.combinatorics();
  const PointM y = point_from_json(read_json("y_1221.json"), f.vars(), 6);
  REQUIRE(is_Y_point(c, y));

  const Reduction red = t_reduce(c, y);
  CHECK(is_X_point(c, red.result.point));
  CHECK(red.result.coefficients.at({4, 6}) == Rational(39, 77));
  CHECK(adjoint(red.transcript.product(6), y) == red.result.point);

  const Rational b = invariant_values(f, y).at({4, 6});
  CHECK(b == Rational(-39, 77));
  CHECK(invariant_values(f, red.result.point).at({4, 6}) == b);
  // the slice image carries a sign, so c = -B here
  CHECK(CanonicalSolver(f).images().front().sign == -1);
  CHECK(invariants_to_canonical(f, {{{4, 6}, b}}).at({4, 6}) == Rational(39, 77));
}

TEST_CASE("reduction steps on 2,1,3,1,4,2") {
  const InvariantFamily f = InvariantFamily::build(std::vector<int>{2, 1, 3, 1, 4, 2});
  Rng rng(21);
  const Reduction red = t_reduce(f.combinatorics(), random_y(f, rng));
  std::map<int, std::vector<Root>> by_step;
  std::set<Root> seen;
  for (const TranscriptEntry& e : red.transcript.entries) {
    if (seen.insert(e.cell).second) by_step[e.step].push_back(e.cell);
  }
  CHECK(by_step[1] == std::vector<Root>{{4, 7}, {5, 7}, {6, 7}});
  CHECK(by_step[2] == std::vector<Root>{{3, 4}, {2, 3}, {1, 5}});
  CHECK(by_step[3] == std::vector<Root>{{7, 8}, {5, 9}, {4, 10}});
  CHECK(by_step[4] == std::vector<Root>{{10, 12}, {11, 12}});
  CHECK(by_step[5] == std::vector<Root>{{10, 13}});
}

TEST_CASE("reduction round trip on the reference structures") {
  Rng rng(23);
  for (const auto& sizes : kReference) {
    const InvariantFamily f = InvariantFamily::build(sizes);
    const Combinatorics& c = f.combinatorics();
    const CanonicalSolver solver(f);
    for (int trial = 0; trial < 5; ++trial) {
      const PointM y = random_y(f, rng);
      const Reduction red = t_reduce(c, y);
      REQUIRE(is_X_point(c, red.result.point));
      CHECK(adjoint(red.transcript.product(c.blocks.n()), y) == red.result.point);
      const auto values = invariant_values(f, y);
      CHECK(invariant_values(f, red.result.point) == values);
      CHECK(solver.solve(values) == red.result.coefficients);

      // the slice is fixed by the reduction
      const Reduction again = t_reduce(c, red.result.point);
      CHECK(again.result.point == red.result.point);
      CHECK(again.transcript.entries.empty());
    }
  }
}

TEST_CASE("invariants of an X point solve back to its coefficients") {
  Rng rng(29);
  for (const auto& sizes : kReference) {
    const InvariantFamily f = InvariantFamily::build(sizes);
    const Combinatorics& c = f.combinatorics();
    std::map<Root, Rational> coeffs;
    for (Root r : c.psi.all()) coeffs[r] = random_nonzero_rational(rng);
    const SlicePoint x = make_X_point(c, f.vars(), coeffs);
    if (!f.denominators_nonzero(x.point)) continue;
    CHECK(invariants_to_canonical(f, invariant_values(f, x.point)) == coeffs);
  }
}

TEST_CASE("orbit dimensions") {
  auto dim = [](std::vector<int> s) {
    const Combinatorics c = Combinatorics::build(s);
    return orbit_dimension(c.blocks, c.psi);
  };
  CHECK(dim({1, 2, 2, 1}) == 12);
  CHECK(dim({5}) == 0);
  CHECK(dim({2, 2, 3, 3, 2}) == 52);
  CHECK(dim({2, 1, 3, 1, 4, 2}) == 62);
  CHECK(dim({2, 3, 2}) == 15);
}

TEST_CASE("slice point errors") {
  const InvariantFamily f = InvariantFamily::build(std::vector<int>{1, 2, 2, 1});
  const Combinatorics& c = f.combinatorics();
  std::map<Root, Rational> coeffs;
  for (Root r : c.ext.extended()) coeffs[r] = 2;
  coeffs[{1, 2}] = 0;
  try {
    make_Y_point(c, f.vars(), coeffs);
    FAIL("zero coefficient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroCoefficient);
  }
  coeffs.erase({1, 2});
  try {
    make_Y_point(c, f.vars(), coeffs);
    FAIL("missing coefficient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongSupport);
  }
  PointM off(f.vars());
  off.set({1, 3}, 1);
  try {
    t_reduce(c, off);
    FAIL("not a Y point");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotYPoint);
  }
  try {
    invariants_to_canonical(f, {});
    FAIL("no values");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingValue);
  }
  try {
    invariants_to_canonical(f, {{{4, 6}, Rational(0)}});
    FAIL("zero value");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
}
