// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "../common/reference.hpp"
#include "json.hpp"
#include "pinv/canonical_form.hpp"
#include "pinv/error.hpp"
#include "pinv/sampling.hpp"

using namespace pinv;
using reference::RootSet;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string label(const std::vector<int>& b) {
  std::string s;
  for (int v : b) s += (s.empty() ? "" : ",") + std::to_string(v);
  return s;
}

RootSet as_set(const std::vector<Root>& v) { return {v.begin(), v.end()}; }

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail.clear();
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += why;
}

PointM generic_y(const InvariantFamily& f, Rng& rng) {
  const Combinatorics& c = f.combinatorics();
  for (;;) {
    SlicePoint y = make_Y_point(c, f.vars(), random_slice_coefficients(c.ext, rng));
    if (f.denominators_nonzero(y.point)) return std::move(y.point);
  }
}

Outcome golden_combinatorics() {
  Outcome o;
  const auto t0 = Clock::now();
  for (const auto& g : reference::structures()) {
    const Combinatorics c = Combinatorics::build(g.blocks);
    RootSet p1, p2;
    for (const auto& w : c.psi.first) p1.insert(w.psi);
    for (const auto& w : c.psi.second) p2.insert(w.psi);
    if (as_set(c.ext.base().roots()) != g.base) fail(o, label(g.blocks) + " S differs");
    if (as_set(c.ext.phi()) != g.phi) fail(o, label(g.blocks) + " Phi differs");
    if (p1 != g.psi1 || p2 != g.psi2) fail(o, label(g.blocks) + " Psi differs");
    const auto doc =
        nlohmann::json::parse(render_diagram(c.blocks, c.ext, c.psi, DiagramFormat::Json));
    RootSet marked;
    for (const auto& cell : doc["cells"]) marked.insert({cell["row"], cell["col"]});
    RootSet want = g.base;
    want.insert(g.phi.begin(), g.phi.end());
    if (marked != want) fail(o, label(g.blocks) + " rendered cells differ");
  }
  const double dt = seconds_since(t0);
  if (dt >= 1.0) fail(o, "took " + std::to_string(dt) + " s");
  if (o.pass) o.detail = "6 structures match cell for cell";
  return o;
}

Outcome golden_polynomials() {
  Outcome o;
  const auto t0 = Clock::now();
  int count = 0;
  const InvariantFamily a = InvariantFamily::build(std::vector<int>{2, 1, 3, 2});
  for (const auto& [phi, p] : reference::expansions_2132(a.vars()).l) {
    ++count;
    if (!(a.lpolys().at(phi) == p)) fail(o, "L" + to_string(phi) + " of 2,1,3,2");
  }
  const InvariantFamily b = InvariantFamily::build(std::vector<int>{2, 3, 2});
  const auto e = reference::expansions_232(b.vars());
  for (const auto& [phi, p] : e.l) {
    ++count;
    if (!(b.lpolys().at(phi) == p)) fail(o, "L" + to_string(phi) + " of 2,3,2");
  }
  for (const auto& [xi, p] : e.m) {
    ++count;
    if (!(b.minors().at(xi) == p)) fail(o, "M" + to_string(xi) + " of 2,3,2");
  }
  const double dt = seconds_since(t0);
  if (dt >= 1.0) fail(o, "took " + std::to_string(dt) + " s");
  if (o.pass) o.detail = std::to_string(count) + " polynomials match term for term";
  return o;
}

Outcome combined_minor_identity() {
  Outcome o;
  const auto t0 = Clock::now();
  int count = 0;
  for (const auto& g : reference::structures()) {
    const InvariantFamily f = InvariantFamily::build(g.blocks);
    const Combinatorics& c = f.combinatorics();
    for (const AdmissiblePair& q : c.ext.pairs()) {
      ++count;
      const Polynomial diff =
          f.lpolys().at(q.phi) - combined_minor(f.ring(), c.blocks, c.ext.base(), q);
      if (!diff.is_zero()) fail(o, label(g.blocks) + " " + to_string(q.phi));
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 5.0) fail(o, "took " + std::to_string(dt) + " s");
  if (o.pass) o.detail = std::to_string(count) + " roots of Phi, all differences zero";
  return o;
}

Outcome unipotent_invariance() {
  Outcome o;
  Rng rng(401);
  double worst = 0;
  for (const auto& g : reference::structures()) {
    const auto t0 = Clock::now();
    const InvariantFamily f = InvariantFamily::build(g.blocks);
    const int n = f.combinatorics().blocks.n();
    for (int trial = 0; trial < 100; ++trial) {
      const PointM x = random_point(f.vars(), rng);
      const GroupElement u = random_unipotent(n, rng);
      if (f.factor_values(adjoint(u, x)) != f.factor_values(x)) {
        fail(o, label(g.blocks) + " trial " + std::to_string(trial));
        break;
      }
    }
    const double dt = seconds_since(t0);
    worst = std::max(worst, dt);
    if (dt >= 30.0) fail(o, label(g.blocks) + " took " + std::to_string(dt) + " s");
  }
  if (o.pass) {
    std::ostringstream s;
    s << "100 trials x 6 structures, slowest " << worst << " s";
    o.detail = s.str();
  }
  return o;
}

Outcome borel_invariance() {
  Outcome o;
  Rng rng(503);
  double worst_rate = 0;
  int total_skipped = 0;
  for (const auto& g : reference::structures()) {
    const auto t0 = Clock::now();
    const InvariantFamily f = InvariantFamily::build(g.blocks);
    const int n = f.combinatorics().blocks.n();
    int skipped = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const PointM x = random_point(f.vars(), rng);
      const GroupElement b = random_borel(n, rng);
      const PointM bx = adjoint(b, x);
      if (!f.denominators_nonzero(x) || !f.denominators_nonzero(bx)) {
        ++skipped;
        continue;
      }
      if (invariant_values(f, bx) != invariant_values(f, x)) {
        fail(o, label(g.blocks) + " trial " + std::to_string(trial));
        break;
      }
    }
    const double rate = skipped / 100.0;
    worst_rate = std::max(worst_rate, rate);
    total_skipped += skipped;
    if (rate >= 0.05) {
      fail(o, label(g.blocks) + " vanishing rate " + std::to_string(rate));
    }
    const double dt = seconds_since(t0);
    if (dt >= 60.0) fail(o, label(g.blocks) + " took " + std::to_string(dt) + " s");
  }
  std::ostringstream s;
  s << "100 trials x 6 structures, " << total_skipped
    << " skipped for a vanishing denominator, worst rate " << worst_rate * 100 << "%";
  if (o.pass) {
    o.detail = s.str();
  } else {
    o.detail += " (" + s.str() + ")";
  }
  return o;
}

Outcome independence() {
  Outcome o;
  Rng rng(607);
  for (const auto& g : reference::structures()) {
    const InvariantFamily f = InvariantFamily::build(g.blocks);
    const Combinatorics& c = f.combinatorics();
    bool ml = false, ab = false;
    for (int attempt = 0; attempt <= 5 && !(ml && ab); ++attempt) {
      const PointM x = random_point(f.vars(), rng);
      ml = ml || jacobian_rank_ml(f, x) == c.ext.extended().size();
      if (!ab && f.denominators_nonzero(x)) ab = jacobian_rank_ab(f, x) == c.psi.size();
    }
    if (!ml) fail(o, label(g.blocks) + " rank of M, L below |S|+|Phi|");
    if (!ab) fail(o, label(g.blocks) + " rank of A, B below |Psi|");
  }
  if (o.pass) o.detail = "full rank on all 6 structures";
  return o;
}

Outcome canonicalization() {
  Outcome o;
  Rng rng(701);
  for (const auto& g : reference::structures()) {
    const InvariantFamily f = InvariantFamily::build(g.blocks);
    const Combinatorics& c = f.combinatorics();
    for (int trial = 0; trial < 20; ++trial) {
      const PointM y = generic_y(f, rng);
      const Reduction red = t_reduce(c, y);
      if (!is_X_point(c, red.result.point)) {
        fail(o, label(g.blocks) + " output not on the X slice");
        break;
      }
      if (invariant_values(f, red.result.point) != invariant_values(f, y)) {
        fail(o, label(g.blocks) + " invariant values changed");
        break;
      }
      if (!(adjoint(red.transcript.product(c.blocks.n()), y) == red.result.point)) {
        fail(o, label(g.blocks) + " transcript does not reproduce the output");
        break;
      }
    }
  }
  const bool random_ok = o.pass;
  // worked example on 1,2,2,1
  const InvariantFamily f = InvariantFamily::build(std::vector<int>{1, 2, 2, 1});
  PointM y(f.vars());
  const std::vector<std::pair<Root, int>> entries = {{{1, 2}, 2}, {{2, 4}, 3}, {{3, 4}, 5},
                                                     {{5, 6}, 7}, {{2, 5}, 11}, {{4, 6}, 13}};
  for (const auto& [r, v] : entries) y.set(r, v);
  const Rational got = t_reduce(f.combinatorics(), y).result.coefficients.at({4, 6});
  const Rational expected(-39, 77);
  if (got != expected) {
    if (random_ok) o.detail = "120 random Y-points reduce correctly";
    o.pass = false;
    o.detail += "; worked example gives c(4,6) = " + to_string(got) + ", expected " +
                to_string(expected) + " (B(4,6) at the point is " +
                to_string(invariant_values(f, y).at({4, 6})) + ")";
  }
  if (o.pass) o.detail = "20 Y-points x 6 structures; worked example c(4,6) = -39/77";
  return o;
}

Outcome round_trip() {
  Outcome o;
  Rng rng(809);
  for (const auto& g : reference::structures()) {
    const InvariantFamily f = InvariantFamily::build(g.blocks);
    const Combinatorics& c = f.combinatorics();
    const CanonicalSolver solver(f);
    const int n = c.blocks.n();
    for (int trial = 0; trial < 20; ++trial) {
      const PointM y = generic_y(f, rng);
      const Reduction red = t_reduce(c, y);
      const auto values = invariant_values(f, y);
      if (solver.solve(values) != red.result.coefficients) {
        fail(o, label(g.blocks) + " solve disagrees with the reduction");
        break;
      }
      // a torus conjugate of y stays on the Y slice in the same orbit
      std::vector<Rational> t;
      for (int i = 0; i < n; ++i) t.push_back(random_integer(rng, -9, 9, true));
      const PointM ty = adjoint(diagonal_torus(t), y);
      if (t_reduce(c, ty).result.coefficients != red.result.coefficients ||
          invariant_values(f, ty) != values) {
        fail(o, label(g.blocks) + " equal canonical forms separated");
        break;
      }
      const PointM z = generic_y(f, rng);
      const auto cz = t_reduce(c, z).result.coefficients;
      if (cz != red.result.coefficients && invariant_values(f, z) == values) {
        fail(o, label(g.blocks) + " distinct canonical forms not separated");
        break;
      }
    }
  }
  if (o.pass) o.detail = "20 Y-points x 6 structures, separation checked both ways";
  return o;
}

Outcome orbit_dimensions() {
  Outcome o;
  std::string dims;
  for (const auto& g : reference::structures()) {
    const Combinatorics c = Combinatorics::build(g.blocks);
    std::vector<int> block;
    for (std::size_t k = 0; k < g.blocks.size(); ++k)
      for (int i = 0; i < g.blocks[k]; ++i) block.push_back(static_cast<int>(k));
    int dim_m = 0;
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j) dim_m += block[i] < block[j];
    const int brute = dim_m - static_cast<int>(g.psi1.size() + g.psi2.size());
    const int got = orbit_dimension(c.blocks, c.psi);
    if (got != brute || got != g.orbit_dim) {
      fail(o, label(g.blocks) + " gives " + std::to_string(got) + ", brute force " +
                  std::to_string(brute));
    }
    dims += (dims.empty() ? "" : ", ") + std::to_string(got);
  }
  if (o.pass) o.detail = "dimensions " + dims;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden combinatorics", golden_combinatorics},
      {"golden polynomials", golden_polynomials},
      {"split-index sum equals combined minor", combined_minor_identity},
      {"unipotent invariance of M and L", unipotent_invariance},
      {"Borel invariance of A and B", borel_invariance},
      {"algebraic independence", independence},
      {"canonicalization", canonicalization},
      {"bijection round trip", round_trip},
      {"orbit dimension", orbit_dimensions},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto& [name, run] = criteria[k];
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    char time[32];
    std::snprintf(time, sizeof time, "%.2f s", seconds_since(t0));
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (k + 1) << " " << name << ": " << o.detail
              << " [" << time << "]\n";
    failed += !o.pass;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
