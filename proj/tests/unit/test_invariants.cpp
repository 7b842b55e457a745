#include <algorithm>
#include <string>

#include "../common/reference.hpp"
#include "doctest.h"
#include "pinv/error.hpp"
#include "pinv/invariants.hpp"
#include "pinv/sampling.hpp"

using namespace pinv;

namespace {

const std::vector<std::vector<int>> kReference = {
    {2, 1, 3, 2}, {2, 3, 2}, {1, 2, 2, 1}, {2, 2, 3, 3, 2}, {3, 4, 3, 2}, {2, 1, 3, 1, 4, 2}};

std::string factor_list(const std::vector<Factor>& fs) {
  std::vector<std::string> names;
  for (const Factor& f : fs) names.push_back(std::string(to_string(f.kind)) + to_string(f.root));
  std::sort(names.begin(), names.end());
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : "*") + n;
  return out;
}

std::string quotient(const FactoredInvariant& inv) {
  return factor_list(inv.num) + " / " + factor_list(inv.den);
}

Polynomial x(const VarSetPtr& v, int i, int j) { return Polynomial::variable(v, {i, j}); }

// Block determinant assembled here from the formal matrix and its square.
Polynomial block_oracle(const FormalRing& ring, const std::vector<int>& rows,
                        const std::vector<int>& rows_extra, const std::vector<int>& cols,
                        const std::vector<int>& cols_extra) {
  const std::size_t n = rows.size() + rows_extra.size();
  REQUIRE(n == cols.size() + cols_extra.size());
  PolyMatrix m(ring.vars(), n, n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols_extra.size(); ++c)
      m.at(r, c) = ring.x().at(rows[r] - 1, cols_extra[c] - 1);
    for (std::size_t c = 0; c < cols.size(); ++c)
      m.at(r, cols_extra.size() + c) = ring.x_squared().at(rows[r] - 1, cols[c] - 1);
  }
  for (std::size_t r = 0; r < rows_extra.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c)
      m.at(rows.size() + r, cols_extra.size() + c) = ring.x().at(rows_extra[r] - 1, cols[c] - 1);
  }
  return poly_det(m, kInvariantDetCap);
}

RationalExpr negate(const RationalExpr& f) {
  return {Polynomial::constant(f.num.vars(), -1) * f.num, f.den};
}

}  // namespace

TEST_CASE("row and column sets of minors") {
  const Base s = compute_base(BlockStructure::build(std::vector<int>{2, 1, 3, 2}));
  const MinorIndex a = s_gamma({1, 5}, s);
  CHECK(a.rows == std::vector<int>{1, 2, 3});
  CHECK(a.cols == std::vector<int>{3, 4, 5});
  const MinorIndex b = s_gamma({5, 8}, s);
  CHECK(b.rows == std::vector<int>{5, 6});
  CHECK(b.cols == std::vector<int>{7, 8});
  const MinorIndex c = s_gamma({3, 4}, s);
  CHECK(c.rows == std::vector<int>{3});
  CHECK(c.cols == std::vector<int>{4});
}

TEST_CASE("explicit M and L polynomials") {
  SUBCASE("2,1,3,2") {
    const InvariantFamily f = InvariantFamily::build(std::vector<int>{2, 1, 3, 2});
    const auto& v = f.vars();
    CHECK(f.minors().at({5, 8}) == x(v, 5, 7) * x(v, 6, 8) - x(v, 5, 8) * x(v, 6, 7));
    CHECK(f.lpolys().at({4, 7}) ==
          x(v, 3, 4) * x(v, 4, 7) + x(v, 3, 5) * x(v, 5, 7) + x(v, 3, 6) * x(v, 6, 7));
    CHECK(f.lpolys().at({4, 8}) ==
          x(v, 3, 4) * (x(v, 4, 7) * x(v, 6, 8) - x(v, 4, 8) * x(v, 6, 7)) +
              x(v, 3, 5) * (x(v, 5, 7) * x(v, 6, 8) - x(v, 5, 8) * x(v, 6, 7)));
  }
  SUBCASE("2,3,2") {
    const InvariantFamily f = InvariantFamily::build(std::vector<int>{2, 3, 2});
    const auto& v = f.vars();
    CHECK(f.minors().at({1, 4}) == x(v, 1, 3) * x(v, 2, 4) - x(v, 1, 4) * x(v, 2, 3));
    CHECK(f.minors().at({4, 7}) == x(v, 4, 6) * x(v, 5, 7) - x(v, 4, 7) * x(v, 5, 6));
    CHECK(f.minors().at({2, 3}) == x(v, 2, 3));
    // L(3,6) is the (2,6) entry of the squared matrix
    CHECK(f.lpolys().at({3, 6}) == f.ring().x_squared().at(1, 5));
    CHECK(f.lpolys().at({4, 6}) ==
          (x(v, 1, 3) * x(v, 2, 4) - x(v, 1, 4) * x(v, 2, 3)) * x(v, 4, 6) +
              (x(v, 1, 3) * x(v, 2, 5) - x(v, 1, 5) * x(v, 2, 3)) * x(v, 5, 6));
  }
}

TEST_CASE("written-out expansions") {
  const InvariantFamily a = InvariantFamily::build(std::vector<int>{2, 1, 3, 2});
  for (const auto& [phi, p] : reference::expansions_2132(a.vars()).l) {
    CAPTURE(to_string(phi));
    CHECK(a.lpolys().at(phi) == p);
  }
  const InvariantFamily b = InvariantFamily::build(std::vector<int>{2, 3, 2});
  const reference::Expansions e = reference::expansions_232(b.vars());
  for (const auto& [phi, p] : e.l) CHECK(b.lpolys().at(phi) == p);
  for (const auto& [xi, p] : e.m) CHECK(b.minors().at(xi) == p);
}

TEST_CASE("the split-index sum equals the combined block minor") {
  for (const auto& sizes : kReference) {
    const InvariantFamily f = InvariantFamily::build(sizes);
    const Combinatorics& c = f.combinatorics();
    for (const AdmissiblePair& q : c.ext.pairs()) {
      const MinorIndex m1 = s_gamma(q.first, c.ext.base());
      const MinorIndex m2 = s_gamma(q.second, c.ext.base());
      std::vector<int> rows_extra, cols_extra;
      for (int r : m2.rows)
        if (r != q.second.row) rows_extra.push_back(r);
      for (int col : m1.cols)
        if (col != q.first.col) cols_extra.push_back(col);
      const Polynomial oracle = block_oracle(f.ring(), m1.rows, rows_extra, m2.cols, cols_extra);
      CAPTURE(to_string(q.phi));
      CHECK(f.lpolys().at(q.phi) == oracle);
      CHECK(combined_minor(f.ring(), c.blocks, c.ext.base(), q) == oracle);
    }
  }
}

TEST_CASE("a block minor that factors") {
  const InvariantFamily f = InvariantFamily::build(std::vector<int>{2, 3, 2});
  const Polynomial d = combined_minor(f.ring(), std::vector<int>{1, 2}, std::vector<int>{5},
                                      std::vector<int>{6, 7}, std::vector<int>{3});
  CHECK(d == block_oracle(f.ring(), {1, 2}, {5}, {6, 7}, {3}));
  CHECK(d == f.minors().at({1, 4}) * f.minors().at({4, 7}));
  CHECK_FALSE(d == f.minors().at({2, 3}) * f.minors().at({4, 7}));
}

TEST_CASE("factor lists of the quotient invariants") {
  SUBCASE("2,3,2") {
    const InvariantFamily f = InvariantFamily::build(std::vector<int>{2, 3, 2});
    CHECK(quotient(f.invariant_for({3, 7})) == "L(3,7)*L(4,6) / L(3,6)*M(1,4)*M(4,7)");
  }
  SUBCASE("1,2,2,1") {
    const InvariantFamily f = InvariantFamily::build(std::vector<int>{1, 2, 2, 1});
    CHECK(quotient(f.invariant_for({4, 6})) == "L(2,4)*L(4,6) / M(1,2)*M(2,5)*M(5,6)");
  }
  SUBCASE("2,2,3,3,2") {
    const InvariantFamily f = InvariantFamily::build(std::vector<int>{2, 2, 3, 3, 2});
    CHECK(quotient(f.invariant_for({5, 9})) == "L(5,9)*L(6,8) / L(5,8)*M(3,6)*M(6,9)");
    CHECK(quotient(f.invariant_for({5, 8})) == "L(3,5)*L(5,8) / L(6,8)*M(2,3)");
    CHECK(quotient(f.invariant_for({8, 11})) ==
          "L(5,8)*L(8,11)*M(6,9) / M(10,11)*M(4,5)*M(5,10)*M(7,8)");

    // The companion minor of A(8,12) sits in the column of (9,11)'s
    // second base root; the neighbouring M(5,9) is not balanced.
    const FactoredInvariant& a = f.invariant_for({8, 12});
    CHECK(quotient(a) == "L(8,12)*L(9,11) / L(8,11)*M(6,9)*M(9,12)");
    FactoredInvariant shifted = a;
    for (Factor& fac : shifted.den)
      if (fac.root == Root{6, 9}) fac.root = {5, 9};
    const auto w = torus_weight(f.combinatorics(), shifted);
    CHECK(std::any_of(w.begin(), w.end(), [](int e) { return e != 0; }));

    // B(9,11) keeps M(6,9) above and below the bar; as a rational
    // function it is the cancelled quotient.
    const FactoredInvariant& b = f.invariant_for({9, 11});
    const auto& m = f.minors();
    const auto& l = f.lpolys();
    const RationalExpr cancelled(l.at({9, 11}) * l.at({5, 9}),
                                 m.at({4, 5}) * m.at({5, 10}) * m.at({10, 11}) * m.at({7, 8}));
    CHECK(ratexpr_equal(f.expand(b), cancelled));
  }
}

TEST_CASE("every quotient invariant has torus weight zero") {
  for (const auto& sizes : kReference) {
    const InvariantFamily f = InvariantFamily::build(sizes);
    for (const FactoredInvariant* inv : f.numbered()) {
      CAPTURE(to_string(inv->root));
      const auto w = torus_weight(f.combinatorics(), *inv);
      CHECK(std::all_of(w.begin(), w.end(), [](int e) { return e == 0; }));
    }
  }
}

TEST_CASE("restriction to the slice") {
  for (const auto& sizes : kReference) {
    const InvariantFamily f = InvariantFamily::build(sizes);
    const Combinatorics& c = f.combinatorics();
    const VarSetPtr cv = restriction_vars(c);
    for (const auto& [xi, p] : f.minors()) {
      const Polynomial img = restrict_pi(p, c, cv);
      CHECK((img == Polynomial::constant(cv, 1) || img == Polynomial::constant(cv, -1)));
    }
    for (const FactoredInvariant* inv : f.numbered()) {
      CAPTURE(to_string(inv->root));
      const RationalExpr img = restrict_pi(f, *inv, cv);
      const RationalExpr cf = restriction_closed_form(c, inv->root, cv);
      CHECK((ratexpr_equal(img, cf) || ratexpr_equal(img, negate(cf))));
      // factor-wise and expanded restriction agree
      CHECK(ratexpr_equal(img, restrict_pi(f.expand(*inv), c, cv)));
    }
  }
  const InvariantFamily f = InvariantFamily::build(std::vector<int>{1, 2, 2, 1});
  const VarSetPtr cv = restriction_vars(f.combinatorics());
  const RationalExpr img = restrict_pi(f, f.invariant_for({4, 6}), cv);
  CHECK(ratexpr_equal(img, RationalExpr(-Polynomial::variable(cv, {4, 6}),
                                        Polynomial::constant(cv, 1))));
}

TEST_CASE("Jacobian ranks at random points") {
  Rng rng(11);
  for (const auto& sizes : kReference) {
    const InvariantFamily f = InvariantFamily::build(sizes);
    const Combinatorics& c = f.combinatorics();
    PointM p = random_point(f.vars(), rng);
    while (!f.denominators_nonzero(p)) p = random_point(f.vars(), rng);
    CHECK(jacobian_rank_ml(f, p) == c.ext.extended().size());
    CHECK(jacobian_rank_ab(f, p) == c.psi.size());
  }
}

TEST_CASE("invariant construction errors") {
  const Combinatorics c = Combinatorics::build(std::vector<int>{2, 3, 2});
  const FormalRing ring(c.blocks);
  try {
    L_invariant(ring, c.blocks, c.ext.base(), AdmissiblePair{{1, 4}, {2, 3}, {4, 2}, {4, 3}});
    FAIL("bridge below the diagonal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAdmissible);
  }

  Psi1Witness w = *c.psi.find_first({3, 7});
  w.xi2 = {5, 6};
  try {
    A_invariant(c, w);
    FAIL("xi2 not in Phi");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingWitness);
  }

  const Combinatorics d = Combinatorics::build(std::vector<int>{1, 2, 2, 1});
  Psi2Certificate cert = *d.psi.find_second({4, 6});
  cert.case_tag = PsiCase::SLess;
  try {
    B_invariant(d, cert);
    FAIL("case tag does not fit the block sizes");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CaseMismatch);
  }
  cert = *d.psi.find_second({4, 6});
  cert.gamma1 = {1, 3};
  try {
    B_invariant(d, cert);
    FAIL("gamma1 not in S");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingWitness);
  }
}
