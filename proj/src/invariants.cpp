#include "pinv/invariants.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "pinv/error.hpp"
#include "pinv/linear_algebra.hpp"

namespace pinv {

MinorIndex s_gamma(Root gamma, const Base& base) {
  MinorIndex idx;
  idx.rows.push_back(gamma.row);
  for (Root r : base.roots()) {
    if (r.row > gamma.row && r.col < gamma.col) {
      idx.rows.push_back(r.row);
      idx.cols.push_back(r.col);
    }
  }
  idx.cols.push_back(gamma.col);
  std::sort(idx.rows.begin(), idx.rows.end());
  std::sort(idx.cols.begin(), idx.cols.end());
  return idx;
}

FormalRing::FormalRing(const BlockStructure& bs)
    : vars_(VarSet::make("x", bs.nilradical())),
      x_(PolyMatrix::formal(bs, vars_)),
      x2_(x_ * x_) {}

Polynomial minor_M(const FormalRing& ring, const Base& base, Root gamma) {
  const MinorIndex idx = s_gamma(gamma, base);
  return poly_det(ring.x().submatrix(idx.rows, idx.cols), kInvariantDetCap);
}

namespace {

void require_admissible(const BlockStructure& bs, const Base& base,
                        const AdmissiblePair& q) {
  const Root bridge{q.first.col, q.second.row};
  if (!base.contains(q.first) || !base.contains(q.second) ||
      !bs.in_reductive(bridge)) {
    throw Error(ErrorCode::NotAdmissible,
                "(" + to_string(q.first) + ", " + to_string(q.second) +
                    ") has no bridge in the reductive part");
  }
}

}  // namespace

Polynomial L_invariant(const FormalRing& ring, const BlockStructure& bs,
                       const Base& base, const AdmissiblePair& q) {
  require_admissible(bs, base, q);
  Polynomial sum(ring.vars());
  for (int m = q.first.col; m <= q.second.row; ++m) {
    sum += minor_M(ring, base, {q.first.row, m}) *
           minor_M(ring, base, {m, q.second.col});
  }
  return sum;
}

Polynomial combined_minor(const FormalRing& ring, std::span<const int> rows,
                          std::span<const int> rows_extra,
                          std::span<const int> cols,
                          std::span<const int> cols_extra) {
  const std::size_t top = rows.size();
  const std::size_t left = cols_extra.size();
  const std::size_t size = top + rows_extra.size();
  if (left + cols.size() != size) {
    throw Error(ErrorCode::NotSquare,
                "combined minor of shape " + std::to_string(size) + "x" +
                    std::to_string(left + cols.size()));
  }
  PolyMatrix d(ring.vars(), size, size);
  auto at = [](const PolyMatrix& m, int r, int c) -> const Polynomial& {
    return m.at(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1));
  };
  for (std::size_t i = 0; i < top; ++i) {
    for (std::size_t j = 0; j < left; ++j) {
      d.at(i, j) = at(ring.x(), rows[i], cols_extra[j]);
    }
    for (std::size_t j = 0; j < cols.size(); ++j) {
      d.at(i, left + j) = at(ring.x_squared(), rows[i], cols[j]);
    }
  }
  for (std::size_t i = 0; i < rows_extra.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      d.at(top + i, left + j) = at(ring.x(), rows_extra[i], cols[j]);
    }
  }
  return poly_det(d, kInvariantDetCap);
}

Polynomial combined_minor(const FormalRing& ring, const BlockStructure& bs,
                          const Base& base, const AdmissiblePair& q) {
  require_admissible(bs, base, q);
  const MinorIndex m1 = s_gamma(q.first, base);
  const MinorIndex m2 = s_gamma(q.second, base);
  std::vector<int> rows_extra;
  for (int r : m2.rows) {
    if (r != q.second.row) rows_extra.push_back(r);
  }
  std::vector<int> cols_extra;
  for (int c : m1.cols) {
    if (c != q.first.col) cols_extra.push_back(c);
  }
  return combined_minor(ring, m1.rows, rows_extra, m2.cols, cols_extra);
}

std::string_view to_string(InvariantKind k) noexcept {
  switch (k) {
    case InvariantKind::M: return "M";
    case InvariantKind::L: return "L";
    case InvariantKind::A: return "A";
    case InvariantKind::B: return "B";
  }
  return "?";
}

namespace {

Factor m_of(Root r) { return {InvariantKind::M, r}; }
Factor l_of(Root r) { return {InvariantKind::L, r}; }

[[noreturn]] void missing(Root psi, const std::string& what) {
  throw Error(ErrorCode::MissingWitness, to_string(psi) + ": " + what);
}

bool is_zero(const std::vector<int>& w) {
  return std::all_of(w.begin(), w.end(), [](int v) { return v == 0; });
}

FactoredInvariant balance_weight(const Combinatorics& comb,
                                 FactoredInvariant inv) {
  std::vector<Factor> basis;
  for (Root xi : comb.ext.base().roots()) basis.push_back(m_of(xi));
  for (Root phi : comb.ext.phi()) {
    if (!comb.psi.contains(phi)) basis.push_back(l_of(phi));
  }
  const std::vector<int> w = torus_weight(comb, inv);
  RationalMatrix a(w.size(), std::vector<Rational>(basis.size(), Rational(0)));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    FactoredInvariant single;
    single.num = {basis[k]};
    const std::vector<int> wk = torus_weight(comb, single);
    for (std::size_t i = 0; i < w.size(); ++i) a[i][k] = wk[i];
  }
  std::vector<Rational> rhs(w.begin(), w.end());
  const auto e = exact_solve(std::move(a), std::move(rhs));
  if (!e) {
    throw Error(ErrorCode::CertificateFailure,
                to_string(inv.root) + ": torus weight is not spanned by the slice units");
  }
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Rational& ek = (*e)[k];
    if (ek.get_den() != 1) {
      throw Error(ErrorCode::CertificateFailure,
                  to_string(inv.root) + ": fractional balancing exponent");
    }
    const long count = ek.get_num().get_si();
    auto& side = count > 0 ? inv.den : inv.num;
    for (long m = 0; m < std::labs(count); ++m) side.push_back(basis[k]);
  }
  return inv;
}

}  // namespace

FactoredInvariant A_invariant(const Combinatorics& comb, const Psi1Witness& w) {
  const ExtendedBase& ext = comb.ext;
  const Root psi = w.psi;
  if (!ext.in_phi(psi)) missing(psi, "not a root of Phi");
  const bool shape = w.xi1.row == psi.row && w.xi3.col == psi.col &&
                     w.xi2.row == w.xi3.row && w.xi2.col == w.xi1.col &&
                     psi.row < w.xi2.row && w.xi1.col < psi.col;
  if (!shape) missing(psi, "witness roots do not form a rectangle");
  if (!ext.in_phi(w.xi1) || !ext.in_phi(w.xi2)) {
    missing(psi, "xi1 and xi2 must lie in Phi");
  }
  if (!ext.in_extended(w.xi3)) missing(psi, "xi3 is outside S u Phi");

  FactoredInvariant inv;
  inv.kind = InvariantKind::A;
  inv.root = psi;
  inv.num = {l_of(psi), l_of(w.xi2)};
  if (ext.in_phi(w.xi3)) {
    inv.den = {l_of(w.xi1), l_of(w.xi3)};
  } else {
    const Root gamma = ext.pair_for(w.xi2).first;
    inv.den = {l_of(w.xi1), m_of(gamma), m_of(w.xi3)};
  }
  return inv;
}

FactoredInvariant B_invariant(const Combinatorics& comb,
                              const Psi2Certificate& c) {
  const BlockStructure& bs = comb.blocks;
  const ExtendedBase& ext = comb.ext;
  const Root psi = c.psi;
  if (!ext.in_phi(psi)) missing(psi, "not a root of Phi");
  if (c.s < 1 || c.t <= c.s || c.t > bs.block_count()) {
    missing(psi, "block indices s, t out of range");
  }
  const int rs = bs.size_of(c.s);
  const int rt = bs.size_of(c.t);
  const bool simple = c.t == c.s + 1 && (rs == 2 || rt == 2);
  const PsiCase expected =
      rs == rt ? PsiCase::Equal : (rs < rt ? PsiCase::SLess : PsiCase::SGreater);
  if (simple != c.simple) {
    throw Error(ErrorCode::CaseMismatch,
                to_string(psi) + ": simple flag disagrees with the blocks");
  }
  if (expected != c.case_tag) {
    throw Error(ErrorCode::CaseMismatch,
                to_string(psi) + ": case tag " + std::string(to_string(c.case_tag)) +
                    " but r_s, r_t give " + std::string(to_string(expected)));
  }
  if (!ext.in_phi(c.xi1)) missing(psi, "xi1 is not in Phi");
  for (Root g : {c.gamma1, c.gamma3, c.gamma5}) {
    if (!ext.in_base(g)) missing(psi, to_string(g) + " is not in S");
  }
  if (c.gamma4 && !ext.in_base(*c.gamma4)) missing(psi, "gamma4 is not in S");

  std::vector<Factor> d;
  switch (c.case_tag) {
    case PsiCase::Equal:
      d = {m_of(c.gamma1), m_of(c.gamma3), m_of(c.gamma5)};
      break;
    case PsiCase::SLess:
      if (!c.xi2 || !ext.in_phi(*c.xi2)) missing(psi, "xi2 is required");
      d = {m_of(c.gamma1), l_of(*c.xi2)};
      break;
    case PsiCase::SGreater:
      if (!c.xi3 || !ext.in_phi(*c.xi3)) missing(psi, "xi3 is required");
      d = {m_of(c.gamma3), l_of(*c.xi3)};
      break;
  }

  FactoredInvariant inv;
  inv.kind = InvariantKind::B;
  inv.root = psi;
  inv.num = {l_of(psi), l_of(c.xi1)};
  inv.den = d;
  if (c.simple) return inv;
  if (!c.gamma4) missing(psi, "gamma4 is required outside the simple case");
  const Base& base = ext.base();
  for (Root mu : nested_layers(c.gamma5, base).layer1) inv.num.push_back(m_of(mu));
  FactoredInvariant nested = inv;
  const NestedLayers l4 = nested_layers(*c.gamma4, base);
  for (Root mu : l4.layer1) nested.den.push_back(m_of(mu));
  for (Root mu : l4.layer2) nested.den.push_back(m_of(mu));
  if (is_zero(torus_weight(comb, nested))) return nested;
  // The index rule for gamma4 assumes xi1 sits right above gamma2. When it
  // does not, cancel the weight with M_xi and L_phi (phi outside Psi)
  // instead; those are U invariant and restrict to +-1 on the slice.
  return balance_weight(comb, std::move(inv));
}

std::vector<int> torus_weight(const Combinatorics& comb,
                              const FactoredInvariant& inv) {
  const Base& base = comb.ext.base();
  std::vector<int> w(static_cast<std::size_t>(comb.blocks.n() + 1), 0);
  auto add_minor = [&](Root r, int sign) {
    const MinorIndex idx = s_gamma(r, base);
    for (int i : idx.rows) w[static_cast<std::size_t>(i)] += sign;
    for (int j : idx.cols) w[static_cast<std::size_t>(j)] -= sign;
  };
  auto add = [&](const Factor& f, int sign) {
    if (f.kind == InvariantKind::M) {
      add_minor(f.root, sign);
      return;
    }
    const AdmissiblePair& q = comb.ext.pair_for(f.root);
    add_minor(q.first, sign);
    add_minor(q.second, sign);
    w[static_cast<std::size_t>(q.second.row)] -= sign;
    w[static_cast<std::size_t>(q.first.col)] += sign;
  };
  for (const Factor& f : inv.num) add(f, 1);
  for (const Factor& f : inv.den) add(f, -1);
  w.erase(w.begin());
  return w;
}

InvariantFamily InvariantFamily::build(std::span<const int> sizes) {
  return build(Combinatorics::build(sizes));
}

InvariantFamily InvariantFamily::build(Combinatorics comb) {
  InvariantFamily f;
  f.comb_ = std::make_shared<const Combinatorics>(std::move(comb));
  f.ring_ = std::make_shared<const FormalRing>(f.comb_->blocks);
  const Combinatorics& c = *f.comb_;
  const Base& base = c.ext.base();
  for (Root xi : base.roots()) f.minors_.emplace(xi, minor_M(*f.ring_, base, xi));
  for (const AdmissiblePair& q : c.ext.pairs()) {
    f.lpolys_.emplace(q.phi, L_invariant(*f.ring_, c.blocks, base, q));
  }
  for (const Psi1Witness& w : c.psi.first) f.a_.push_back(A_invariant(c, w));
  for (const Psi2Certificate& cert : c.psi.second) {
    f.b_.push_back(B_invariant(c, cert));
  }
  auto note = [&](const FactoredInvariant& inv) {
    for (const auto* side : {&inv.num, &inv.den}) {
      for (const Factor& fac : *side) {
        if (fac.kind == InvariantKind::M && !f.minors_.contains(fac.root) &&
            !f.aux_minors_.contains(fac.root)) {
          f.aux_minors_.emplace(fac.root, minor_M(*f.ring_, base, fac.root));
        }
      }
    }
  };
  for (const auto& inv : f.a_) note(inv);
  for (const auto& inv : f.b_) note(inv);
  return f;
}

std::vector<const FactoredInvariant*> InvariantFamily::numbered() const {
  std::vector<const FactoredInvariant*> out;
  for (Root psi : psi_numbering(comb_->psi.all())) out.push_back(&invariant_for(psi));
  return out;
}

const FactoredInvariant& InvariantFamily::invariant_for(Root psi) const {
  for (const auto* list : {&a_, &b_}) {
    for (const auto& inv : *list) {
      if (inv.root == psi) return inv;
    }
  }
  throw Error(ErrorCode::MissingWitness, to_string(psi) + " is not in Psi");
}

const Polynomial& InvariantFamily::factor(const Factor& f) const {
  if (f.kind == InvariantKind::L) {
    if (auto it = lpolys_.find(f.root); it != lpolys_.end()) return it->second;
  } else if (f.kind == InvariantKind::M) {
    if (auto it = minors_.find(f.root); it != minors_.end()) return it->second;
    if (auto it = aux_minors_.find(f.root); it != aux_minors_.end()) {
      return it->second;
    }
  }
  throw Error(ErrorCode::MissingWitness,
              std::string(to_string(f.kind)) + to_string(f.root) +
                  " is not held by this family");
}

std::map<Factor, Rational> InvariantFamily::factor_values(const PointM& x) const {
  std::map<Factor, Rational> out;
  for (const auto& [r, p] : minors_) out.emplace(m_of(r), pinv::evaluate(p, x));
  for (const auto& [r, p] : aux_minors_) out.emplace(m_of(r), pinv::evaluate(p, x));
  for (const auto& [r, p] : lpolys_) out.emplace(l_of(r), pinv::evaluate(p, x));
  return out;
}

Rational InvariantFamily::evaluate(const FactoredInvariant& inv,
                                   const std::map<Factor, Rational>& values) {
  auto value = [&](const Factor& f) -> const Rational& {
    auto it = values.find(f);
    if (it == values.end()) {
      throw Error(ErrorCode::MissingValue, std::string(to_string(f.kind)) +
                                               to_string(f.root));
    }
    return it->second;
  };
  Rational num = 1;
  Rational den = 1;
  for (const Factor& f : inv.num) num *= value(f);
  for (const Factor& f : inv.den) {
    const Rational& v = value(f);
    if (v == 0) {
      throw Error(ErrorCode::DegenerateInput,
                  std::string(to_string(inv.kind)) + to_string(inv.root) +
                      ": denominator factor " + std::string(to_string(f.kind)) +
                      to_string(f.root) + " vanishes");
    }
    den *= v;
  }
  return num / den;
}

Rational InvariantFamily::evaluate(const FactoredInvariant& inv,
                                   const PointM& x) const {
  std::map<Factor, Rational> values;
  for (const auto* side : {&inv.num, &inv.den}) {
    for (const Factor& f : *side) {
      if (!values.contains(f)) values.emplace(f, pinv::evaluate(factor(f), x));
    }
  }
  return evaluate(inv, values);
}

bool InvariantFamily::denominators_nonzero(const PointM& x) const {
  std::set<Factor> dens;
  for (const auto* list : {&a_, &b_}) {
    for (const auto& inv : *list) dens.insert(inv.den.begin(), inv.den.end());
  }
  for (const Factor& f : dens) {
    if (pinv::evaluate(factor(f), x) == 0) return false;
  }
  return true;
}

RationalExpr InvariantFamily::expand(const FactoredInvariant& inv) const {
  Polynomial num = Polynomial::constant(vars(), 1);
  Polynomial den = Polynomial::constant(vars(), 1);
  for (const Factor& f : inv.num) num *= factor(f);
  for (const Factor& f : inv.den) den *= factor(f);
  return RationalExpr(std::move(num), std::move(den));
}

VarSetPtr restriction_vars(const Combinatorics& comb) {
  return VarSet::make("c", comb.psi.all());
}

Polynomial restrict_pi(const Polynomial& p, const Combinatorics& comb,
                       const VarSetPtr& cvars) {
  return substitute(p, cvars, [&](Root r) {
    if (comb.psi.contains(r)) return Polynomial::variable(cvars, r);
    if (comb.ext.in_extended(r)) return Polynomial::constant(cvars, 1);
    return Polynomial(cvars);
  });
}

RationalExpr restrict_pi(const RationalExpr& f, const Combinatorics& comb,
                         const VarSetPtr& cvars) {
  Polynomial den = restrict_pi(f.den, comb, cvars);
  if (den.is_zero()) {
    throw Error(ErrorCode::VanishingDenominator,
                "denominator vanishes identically on the slice");
  }
  return RationalExpr(restrict_pi(f.num, comb, cvars), std::move(den));
}

RationalExpr restrict_pi(const InvariantFamily& family,
                         const FactoredInvariant& inv, const VarSetPtr& cvars) {
  const Combinatorics& comb = family.combinatorics();
  Polynomial num = Polynomial::constant(cvars, 1);
  Polynomial den = Polynomial::constant(cvars, 1);
  for (const Factor& f : inv.num) num *= restrict_pi(family.factor(f), comb, cvars);
  for (const Factor& f : inv.den) {
    Polynomial image = restrict_pi(family.factor(f), comb, cvars);
    if (image.is_zero()) {
      throw Error(ErrorCode::VanishingDenominator,
                  std::string(to_string(inv.kind)) + to_string(inv.root) +
                      ": factor " + std::string(to_string(f.kind)) +
                      to_string(f.root) + " vanishes on the slice");
    }
    den *= image;
  }
  return RationalExpr(std::move(num), std::move(den));
}

RationalExpr restriction_closed_form(const Combinatorics& comb, Root psi,
                                     const VarSetPtr& cvars) {
  auto tilde = [&](Root r) {
    return comb.psi.contains(r) ? Polynomial::variable(cvars, r)
                                : Polynomial::constant(cvars, 1);
  };
  Polynomial num = Polynomial::variable(cvars, psi);
  Polynomial den = Polynomial::constant(cvars, 1);
  if (const Psi1Witness* w = comb.psi.find_first(psi)) {
    num *= tilde(w->xi2);
    den *= tilde(w->xi1);
    if (!w->xi3_in_base) den *= tilde(w->xi3);
  } else if (const Psi2Certificate* c = comb.psi.find_second(psi)) {
    num *= tilde(c->xi1);
    if (c->case_tag == PsiCase::SLess) den *= tilde(*c->xi2);
    if (c->case_tag == PsiCase::SGreater) den *= tilde(*c->xi3);
  } else {
    throw Error(ErrorCode::MissingWitness, to_string(psi) + " is not in Psi");
  }
  return RationalExpr(std::move(num), std::move(den));
}

std::size_t jacobian_rank_ml(const InvariantFamily& family, const PointM& x) {
  RationalMatrix rows;
  const VarSet& wrt = *family.vars();
  for (const auto& [r, p] : family.minors()) rows.push_back(gradient(p, x, wrt));
  for (const auto& [r, p] : family.lpolys()) rows.push_back(gradient(p, x, wrt));
  return exact_rank(std::move(rows));
}

std::size_t jacobian_rank_ab(const InvariantFamily& family, const PointM& x) {
  const VarSet& wrt = *family.vars();
  std::map<Factor, std::vector<Rational>> log_grad;
  auto lg = [&](const Factor& f) -> const std::vector<Rational>& {
    auto it = log_grad.find(f);
    if (it != log_grad.end()) return it->second;
    const Polynomial& p = family.factor(f);
    const Rational v = evaluate(p, x);
    if (v == 0) {
      throw Error(ErrorCode::DegenerateInput, std::string(to_string(f.kind)) +
                                                  to_string(f.root) +
                                                  " vanishes at the point");
    }
    std::vector<Rational> g = gradient(p, x, wrt);
    for (auto& e : g) e /= v;
    return log_grad.emplace(f, std::move(g)).first->second;
  };
  // grad F = F * (sum grad f / f over the numerator minus the denominator);
  // F is nonzero, so dropping it leaves the rank unchanged.
  RationalMatrix rows;
  for (const FactoredInvariant* inv : family.numbered()) {
    std::vector<Rational> row(wrt.size(), Rational(0));
    for (const Factor& f : inv->num) {
      const auto& g = lg(f);
      for (std::size_t i = 0; i < row.size(); ++i) row[i] += g[i];
    }
    for (const Factor& f : inv->den) {
      const auto& g = lg(f);
      for (std::size_t i = 0; i < row.size(); ++i) row[i] -= g[i];
    }
    rows.push_back(std::move(row));
  }
  return exact_rank(std::move(rows));
}

}  // namespace pinv
