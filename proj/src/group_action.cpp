#include "pinv/group_action.hpp"

#include "pinv/error.hpp"

namespace pinv {

GroupElement::GroupElement(int n)
    : n_(n), m_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Rational(0)) {}

GroupElement GroupElement::identity(int n) {
  if (n < 1) throw Error(ErrorCode::BadIndices, "dimension must be positive");
  GroupElement g(n);
  for (int i = 1; i <= n; ++i) g.ref(i, i) = 1;
  g.provenance_ = std::vector<Generator>{};
  return g;
}

GroupElement GroupElement::from_entries(
    int n, const std::vector<std::vector<Rational>>& m) {
  if (n < 1 || m.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::BadIndices, "matrix does not have n rows");
  }
  GroupElement g(n);
  for (int r = 1; r <= n; ++r) {
    const auto& row = m[static_cast<std::size_t>(r - 1)];
    if (row.size() != static_cast<std::size_t>(n)) {
      throw Error(ErrorCode::BadIndices, "row " + std::to_string(r) + " has wrong length");
    }
    for (int c = 1; c <= n; ++c) {
      const Rational& v = row[static_cast<std::size_t>(c - 1)];
      if (c < r && v != 0) {
        throw Error(ErrorCode::BadIndices, "entry (" + std::to_string(r) + "," +
                                               std::to_string(c) +
                                               ") below the diagonal");
      }
      if (c == r && v == 0) {
        throw Error(ErrorCode::ZeroDiagonal, "diagonal entry " + std::to_string(r));
      }
      g.ref(r, c) = v;
    }
  }
  return g;
}

bool GroupElement::is_unipotent() const {
  for (int i = 1; i <= n_; ++i) {
    if (at(i, i) != 1) return false;
  }
  return true;
}

GroupElement GroupElement::inverse() const {
  // Solve g * h = I column by column, bottom row first.
  GroupElement h(n_);
  for (int c = 1; c <= n_; ++c) {
    for (int r = c; r >= 1; --r) {
      Rational acc = (r == c) ? Rational(1) : Rational(0);
      for (int k = r + 1; k <= c; ++k) {
        if (at(r, k) != 0 && h.at(k, c) != 0) acc -= at(r, k) * h.at(k, c);
      }
      h.ref(r, c) = acc / at(r, r);
    }
  }
  return h;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::BadIndices, "dimension mismatch");
  GroupElement out(a.n_);
  for (int r = 1; r <= a.n_; ++r) {
    for (int c = r; c <= a.n_; ++c) {
      Rational acc = 0;
      for (int k = r; k <= c; ++k) {
        if (a.at(r, k) != 0 && b.at(k, c) != 0) acc += a.at(r, k) * b.at(k, c);
      }
      out.ref(r, c) = acc;
    }
  }
  if (a.provenance_ && b.provenance_) {
    std::vector<Generator> seq = *a.provenance_;
    seq.insert(seq.end(), b.provenance_->begin(), b.provenance_->end());
    out.provenance_ = std::move(seq);
  }
  return out;
}

GroupElement elementary_unipotent(int n, int i, int j, const Rational& t) {
  if (!(1 <= i && i < j && j <= n)) {
    throw Error(ErrorCode::BadIndices, "g_{" + std::to_string(i) + "," +
                                           std::to_string(j) + "} in dimension " +
                                           std::to_string(n));
  }
  GroupElement g = GroupElement::identity(n);
  g.ref(i, j) = t;
  g.provenance_ = std::vector<Generator>{{Generator::Kind::Unipotent, i, j, t}};
  return g;
}

GroupElement diagonal_torus(const std::vector<Rational>& entries) {
  if (entries.empty()) throw Error(ErrorCode::EmptyInput, "no diagonal entries");
  const int n = static_cast<int>(entries.size());
  GroupElement g(n);
  std::vector<Generator> gens;
  for (int i = 1; i <= n; ++i) {
    const Rational& v = entries[static_cast<std::size_t>(i - 1)];
    if (v == 0) throw Error(ErrorCode::ZeroDiagonal, "diagonal entry " + std::to_string(i));
    g.ref(i, i) = v;
    if (v != 1) gens.push_back({Generator::Kind::Torus, i, 0, v});
  }
  g.provenance_ = std::move(gens);
  return g;
}

GroupElement torus_h(int n, int i, const Rational& b) {
  if (i < 1 || i > n) throw Error(ErrorCode::BadIndices, "h_" + std::to_string(i));
  std::vector<Rational> d(static_cast<std::size_t>(n), Rational(1));
  d[static_cast<std::size_t>(i - 1)] = b;
  return diagonal_torus(d);
}

PointM adjoint(const GroupElement& g, const PointM& x) {
  const int n = g.n();
  const auto& vars = x.vars();
  std::vector<Rational> dense(static_cast<std::size_t>(n * n), Rational(0));
  auto cell = [&](std::vector<Rational>& m, int r, int c) -> Rational& {
    return m[static_cast<std::size_t>((r - 1) * n + (c - 1))];
  };
  for (std::uint32_t k = 0; k < vars->size(); ++k) {
    const Root r = vars->root(k);
    if (r.col > n) throw Error(ErrorCode::BadIndices, "point exceeds dimension");
    cell(dense, r.row, r.col) = x.values()[k];
  }
  const GroupElement h = g.inverse();
  // gx is upper triangular because both factors are.
  std::vector<Rational> gx(dense.size(), Rational(0));
  for (int r = 1; r <= n; ++r) {
    for (int c = r; c <= n; ++c) {
      Rational acc = 0;
      for (int k = r; k <= c; ++k) {
        const Rational& v = cell(dense, k, c);
        if (v != 0 && g.at(r, k) != 0) acc += g.at(r, k) * v;
      }
      cell(gx, r, c) = acc;
    }
  }
  std::vector<Rational> out(dense.size(), Rational(0));
  for (int r = 1; r <= n; ++r) {
    for (int c = r; c <= n; ++c) {
      Rational acc = 0;
      for (int k = r; k <= c; ++k) {
        const Rational& v = cell(gx, r, k);
        if (v != 0 && h.at(k, c) != 0) acc += v * h.at(k, c);
      }
      cell(out, r, c) = acc;
    }
  }
  PointM y(vars);
  for (int r = 1; r <= n; ++r) {
    for (int c = r; c <= n; ++c) {
      const Rational& v = cell(out, r, c);
      if (v == 0) continue;
      if (!vars->index_of({r, c})) {
        throw Error(ErrorCode::SupportLeak,
                    "conjugate has entry " + to_string(v) + " at " + to_string(Root{r, c}));
      }
      y.set({r, c}, v);
    }
  }
  return y;
}

Polynomial pullback(const Polynomial& p, const GroupElement& g) {
  const VarSetPtr& vars = p.vars();
  const GroupElement h = g.inverse();
  // (g X h)_{a,b} = sum over (k, l) in the universe of g_{a,k} x_{k,l} h_{l,b}.
  return substitute(p, vars, [&](Root ab) {
    Polynomial image(vars);
    for (Root kl : vars->roots()) {
      if (kl.row < ab.row || kl.col > ab.col) continue;
      const Rational coef = g.at(ab.row, kl.row) * h.at(kl.col, ab.col);
      if (coef != 0) image += Polynomial::variable(vars, kl) * coef;
    }
    return image;
  });
}

}  // namespace pinv
