#include "pinv/canonical_form.hpp"

#include <algorithm>
#include <numeric>

#include "pinv/error.hpp"

namespace pinv {

namespace {

void check_coefficients(const std::map<Root, Rational>& coeffs,
                        const std::vector<Root>& domain) {
  for (const auto& [r, v] : coeffs) {
    if (!std::binary_search(domain.begin(), domain.end(), r)) {
      throw Error(ErrorCode::WrongSupport, to_string(r) + " is outside the slice support");
    }
    if (v == 0) throw Error(ErrorCode::ZeroCoefficient, "coefficient at " + to_string(r));
  }
  for (Root r : domain) {
    if (!coeffs.contains(r)) {
      throw Error(ErrorCode::WrongSupport, "no coefficient at " + to_string(r));
    }
  }
}

}  // namespace

SlicePoint make_Y_point(const Combinatorics& comb, const VarSetPtr& vars,
                        const std::map<Root, Rational>& coeffs) {
  check_coefficients(coeffs, comb.ext.extended());
  PointM x(vars);
  for (const auto& [r, v] : coeffs) x.set(r, v);
  return {std::move(x), SliceKind::Y, coeffs};
}

SlicePoint make_X_point(const Combinatorics& comb, const VarSetPtr& vars,
                        const std::map<Root, Rational>& psi_coeffs) {
  check_coefficients(psi_coeffs, comb.psi.all());
  PointM x(vars);
  for (Root r : comb.ext.extended()) x.set(r, 1);
  for (const auto& [r, v] : psi_coeffs) x.set(r, v);
  return {std::move(x), SliceKind::X, psi_coeffs};
}

bool is_Y_point(const Combinatorics& comb, const PointM& x) {
  const auto& vars = *x.vars();
  for (std::uint32_t k = 0; k < vars.size(); ++k) {
    const bool on = comb.ext.in_extended(vars.root(k));
    if (on != (x.values()[k] != 0)) return false;
  }
  return true;
}

bool is_X_point(const Combinatorics& comb, const PointM& x) {
  const auto& vars = *x.vars();
  for (std::uint32_t k = 0; k < vars.size(); ++k) {
    const Root r = vars.root(k);
    const Rational& v = x.values()[k];
    if (comb.psi.contains(r)) {
      if (v == 0) return false;
    } else if (comb.ext.in_extended(r)) {
      if (v != 1) return false;
    } else if (v != 0) {
      return false;
    }
  }
  return true;
}

SlicePoint as_Y_point(const Combinatorics& comb, const PointM& x) {
  const auto& vars = *x.vars();
  std::map<Root, Rational> coeffs;
  for (std::uint32_t k = 0; k < vars.size(); ++k) {
    const Root r = vars.root(k);
    const Rational& v = x.values()[k];
    const bool on = comb.ext.in_extended(r);
    if (on && v == 0) {
      throw Error(ErrorCode::NotYPoint, "zero coefficient at " + to_string(r));
    }
    if (!on && v != 0) {
      throw Error(ErrorCode::NotYPoint, "nonzero entry outside S u Phi at " + to_string(r));
    }
    if (on) coeffs.emplace(r, v);
  }
  return {x, SliceKind::Y, std::move(coeffs)};
}

GroupElement ReductionTranscript::product(int n) const {
  std::vector<Rational> d(static_cast<std::size_t>(n), Rational(1));
  for (const auto& e : entries) d.at(static_cast<std::size_t>(e.i - 1)) *= e.b;
  return diagonal_torus(d);
}

std::vector<int> record_blocks(const BlockStructure& bs) {
  std::vector<int> a{1};
  int record = std::max(bs.size_of(1), 1);
  for (int k = 2; k <= bs.block_count(); ++k) {
    if (bs.size_of(k) > record) {
      a.push_back(k);
      record = bs.size_of(k);
    }
  }
  return a;
}

namespace {

// Torus normalization of the cells (S u Phi) minus Psi. Each cell is an edge
// between its row and column index; a vertex is anchored once some processed
// cell touches it, and anchored vertices are grouped into components whose
// relative scaling is already fixed.
class TorusReducer {
 public:
  TorusReducer(const Combinatorics& comb, const PointM& y)
      : comb_(comb), n_(comb.blocks.n()), cur_(y),
        anchored_(static_cast<std::size_t>(n_ + 1), false),
        parent_(static_cast<std::size_t>(n_ + 1)) {
    std::iota(parent_.begin(), parent_.end(), 0);
    for (Root r : comb.ext.extended()) {
      if (!comb.psi.contains(r)) pending_.push_back(r);
    }
  }

  // Cells of one column (or row) line, restricted by `keep`.
  template <class Keep>
  void column(int c, int step, Keep keep) {
    line(c, step, true, keep);
  }
  template <class Keep>
  void row(int r, int step, Keep keep) {
    line(r, step, false, keep);
  }

  Reduction finish() {
    if (!pending_.empty()) {
      throw Error(ErrorCode::ReductionFailure,
                  "cell " + to_string(pending_.front()) + " was never reached");
    }
    if (!is_X_point(comb_, cur_)) {
      throw Error(ErrorCode::ReductionFailure, "result is not on the X slice");
    }
    std::map<Root, Rational> coeffs;
    for (Root r : comb_.psi.all()) coeffs.emplace(r, cur_.at(r));
    return {{cur_, SliceKind::X, std::move(coeffs)}, std::move(transcript_)};
  }

  int n() const noexcept { return n_; }

 private:
  template <class Keep>
  void line(int index, int step, bool is_column, Keep keep) {
    std::vector<Root> cells;
    for (Root r : pending_) {
      if ((is_column ? r.col : r.row) == index && keep(r)) cells.push_back(r);
    }
    if (cells.empty()) return;
    auto other = [&](Root r) { return is_column ? r.row : r.col; };
    // Cells whose far end is already anchored fix this line first.
    std::stable_partition(cells.begin(), cells.end(),
                          [&](Root r) { return anchored(other(r)); });
    if (!anchored(other(cells.front())) && !anchored(index)) anchor(index);
    for (Root r : cells) normalize(r, step);
  }

  bool anchored(int v) const { return anchored_[static_cast<std::size_t>(v)]; }
  void anchor(int v) { anchored_[static_cast<std::size_t>(v)] = true; }

  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      v = parent_[static_cast<std::size_t>(v)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
    }
    return v;
  }
  void join(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

  void apply(int i, const Rational& b, int step, Root cell) {
    if (b == 1) return;
    const auto& vars = *cur_.vars();
    for (std::uint32_t k = 0; k < vars.size(); ++k) {
      const Root r = vars.root(k);
      if (r.row == i) cur_.set(r, cur_.values()[k] * b);
      if (r.col == i) cur_.set(r, cur_.values()[k] / b);
    }
    transcript_.entries.push_back({i, b, step, cell});
  }

  void normalize(Root cell, int step) {
    std::erase(pending_, cell);
    const Rational omega = cur_.at(cell);
    if (omega == 0) {
      throw Error(ErrorCode::DegenerateInput, "zero coordinate at " + to_string(cell));
    }
    const bool ar = anchored(cell.row);
    const bool ac = anchored(cell.col);
    if (!ar) {
      // Row i times 1/omega.
      apply(cell.row, 1 / omega, step, cell);
    } else if (!ac) {
      // Column j times 1/omega.
      apply(cell.col, omega, step, cell);
    } else if (find(cell.row) != find(cell.col)) {
      const int root = find(cell.col);
      for (int v = 1; v <= n_; ++v) {
        if (anchored(v) && find(v) == root) apply(v, omega, step, cell);
      }
    } else if (omega != 1) {
      throw Error(ErrorCode::ReductionFailure,
                  to_string(cell) + " closes a cycle with value " + to_string(omega));
    }
    anchor(cell.row);
    anchor(cell.col);
    join(cell.row, cell.col);
  }

  const Combinatorics& comb_;
  int n_;
  PointM cur_;
  std::vector<bool> anchored_;
  std::vector<int> parent_;
  std::vector<Root> pending_;
  ReductionTranscript transcript_;
};

}  // namespace

Reduction t_reduce(const Combinatorics& comb, const PointM& y) {
  as_Y_point(comb, y);
  const BlockStructure& bs = comb.blocks;
  const int n = bs.n();
  const std::vector<int> a = record_blocks(bs);
  const int p = static_cast<int>(a.size());
  auto R = [&](int k) { return bs.prefix(k); };
  auto any = [](Root) { return true; };

  TorusReducer red(comb, y);
  auto columns = [&](int from, int to, int step) {
    for (int c = std::max(from, 1); c <= std::min(to, n); ++c) red.column(c, step, any);
  };
  if (p >= 2) {
    const int a2 = a[1];
    const int c1 = R(a2) + 1;
    if (c1 <= n) {
      red.column(c1, 1, [&](Root r) { return bs.block_of(r.row) == a2; });
    }
    for (int r = R(a2 - 1); r >= 1; --r) red.row(r, 2, any);
    for (int k = 3; k <= p; ++k) {
      columns(R(a[k - 2]) + 2, R(a[k - 1]), 3);
      columns(R(a[k - 1]) + 1, R(a[k - 1]) + 1, 4);
    }
    columns(R(a[p - 1]) + 2, n, 5);
  } else {
    columns(R(1) + 1, R(1) + 1, 4);
    columns(R(1) + 2, n, 5);
  }
  return red.finish();
}

std::map<Root, Rational> invariant_values(const InvariantFamily& family,
                                          const PointM& x) {
  const auto values = family.factor_values(x);
  std::map<Root, Rational> out;
  for (const auto* list : {&family.a_invariants(), &family.b_invariants()}) {
    for (const auto& inv : *list) {
      out.emplace(inv.root, InvariantFamily::evaluate(inv, values));
    }
  }
  return out;
}

namespace {

struct MonomialImage {
  Rational coef;
  std::map<Root, int> exps;
};

MonomialImage single_term(const Polynomial& p, Root psi) {
  if (p.term_count() != 1) {
    throw Error(ErrorCode::InternalContradiction,
                to_string(psi) + ": restriction image is not a monomial");
  }
  const auto& [m, c] = *p.terms().begin();
  MonomialImage out{c, {}};
  for (const auto& vp : m) out.exps[p.vars()->root(vp.var)] += static_cast<int>(vp.exp);
  return out;
}

}  // namespace

CanonicalSolver::CanonicalSolver(const InvariantFamily& family) {
  const VarSetPtr cvars = restriction_vars(family.combinatorics());
  std::vector<Root> solved;
  for (const FactoredInvariant* inv : family.numbered()) {
    const RationalExpr image = restrict_pi(family, *inv, cvars);
    const MonomialImage num = single_term(image.num, inv->root);
    const MonomialImage den = single_term(image.den, inv->root);
    std::map<Root, int> e = num.exps;
    for (const auto& [r, k] : den.exps) e[r] -= k;
    Image img{inv->root, num.coef / den.coef, {}};
    for (const auto& [r, k] : e) {
      if (k == 0) continue;
      if (r == inv->root) {
        if (k != 1) {
          throw Error(ErrorCode::InternalContradiction,
                      to_string(r) + ": image is not linear in its own coefficient");
        }
        continue;
      }
      if (std::find(solved.begin(), solved.end(), r) == solved.end()) {
        throw Error(ErrorCode::InternalContradiction,
                    to_string(inv->root) + ": image uses the later coefficient " +
                        to_string(r));
      }
      img.others.emplace_back(r, k);
    }
    if (e[inv->root] != 1) {
      throw Error(ErrorCode::InternalContradiction,
                  to_string(inv->root) + ": image does not contain its coefficient");
    }
    solved.push_back(inv->root);
    images_.push_back(std::move(img));
  }
}

std::map<Root, Rational> CanonicalSolver::solve(
    const std::map<Root, Rational>& values) const {
  std::map<Root, Rational> c;
  for (const Image& img : images_) {
    auto it = values.find(img.psi);
    if (it == values.end()) {
      throw Error(ErrorCode::MissingValue, "no invariant value for " + to_string(img.psi));
    }
    Rational rest = img.sign;
    for (const auto& [r, k] : img.others) {
      const Rational& v = c.at(r);
      for (int j = 0; j < std::abs(k); ++j) {
        if (k > 0) {
          rest *= v;
        } else {
          rest /= v;
        }
      }
    }
    if (it->second == 0) {
      throw Error(ErrorCode::DivisionByZero,
                  to_string(img.psi) + ": invariant value 0, orbit is degenerate");
    }
    c.emplace(img.psi, it->second / rest);
  }
  return c;
}

std::map<Root, Rational> invariants_to_canonical(
    const InvariantFamily& family, const std::map<Root, Rational>& values) {
  return CanonicalSolver(family).solve(values);
}

int orbit_dimension(const BlockStructure& bs, const PsiCertificates& psi) {
  return static_cast<int>(bs.nilradical().size()) - static_cast<int>(psi.size());
}

}  // namespace pinv
