#include "pinv/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

#include "pinv/error.hpp"

namespace pinv {

// ---------------------------------------------------------------------------
// VarSet

VarSet::VarSet(std::string symbol, std::vector<Root> roots)
    : symbol_(std::move(symbol)), roots_(std::move(roots)) {
  std::sort(roots_.begin(), roots_.end());
  roots_.erase(std::unique(roots_.begin(), roots_.end()), roots_.end());
  for (std::uint32_t i = 0; i < roots_.size(); ++i) index_.emplace(roots_[i], i);
}

std::shared_ptr<const VarSet> VarSet::make(std::string symbol,
                                           std::vector<Root> roots) {
  return std::make_shared<const VarSet>(std::move(symbol), std::move(roots));
}

std::optional<std::uint32_t> VarSet::index_of(Root r) const {
  auto it = index_.find(r);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t VarSet::require(Root r) const {
  auto idx = index_of(r);
  if (!idx) {
    throw Error(ErrorCode::UnknownVariable,
                symbol_ + to_string(r) + " is not in the variable universe");
  }
  return *idx;
}

std::string VarSet::name(std::uint32_t index) const {
  const Root r = root(index);
  return symbol_ + "_{" + std::to_string(r.row) + "," + std::to_string(r.col) +
         "}";
}

// ---------------------------------------------------------------------------
// Monomials and polynomials

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->var < j->var) {
      out.push_back(*i++);
    } else if (j->var < i->var) {
      out.push_back(*j++);
    } else {
      out.push_back({i->var, i->exp + j->exp});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.end());
  out.insert(out.end(), j, b.end());
  return out;
}

Polynomial::Polynomial(VarSetPtr vars) : vars_(std::move(vars)) {}

Polynomial Polynomial::constant(VarSetPtr vars, const Rational& value) {
  Polynomial p(std::move(vars));
  p.add_term({}, value);
  return p;
}

Polynomial Polynomial::variable(VarSetPtr vars, Root r) {
  const auto idx = vars->require(r);
  Polynomial p(std::move(vars));
  p.add_term({{idx, 1}}, Rational(1));
  return p;
}

int Polynomial::degree() const {
  int best = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (const auto& vp : m) d += static_cast<int>(vp.exp);
    best = std::max(best, d);
  }
  return best;
}

std::vector<Root> Polynomial::support() const {
  std::vector<std::uint32_t> idx;
  for (const auto& [m, c] : terms_) {
    for (const auto& vp : m) idx.push_back(vp.var);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  std::vector<Root> out;
  for (auto i : idx) out.push_back(vars_->root(i));
  return out;
}

void Polynomial::add_term(const Monomial& m, const Rational& coef) {
  if (coef == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::require_same_universe(const Polynomial& other) const {
  if (vars_ != other.vars_ && !(*vars_ == *other.vars_)) {
    throw Error(ErrorCode::UnknownVariable,
                "polynomials over different variable universes");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_universe(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_universe(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_universe(b);
  Polynomial out(a.vars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.add_term(multiply(ma, mb), ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.vars_ != b.vars_ && !(*a.vars_ == *b.vars_)) return false;
  return a.terms_ == b.terms_;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1;
    if (!unit || m.empty()) {
      out << mag.get_str();
      if (!m.empty()) out << '*';
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i > 0) out << '*';
      out << p.vars()->name(m[i].var);
      if (m[i].exp > 1) out << '^' << m[i].exp;
    }
  }
  return out.str();
}

Polynomial derivative(const Polynomial& p, Root var) {
  Polynomial out(p.vars());
  const auto idx = p.vars()->index_of(var);
  if (!idx) return out;
  for (const auto& [m, c] : p.terms()) {
    auto it = std::find_if(m.begin(), m.end(),
                           [&](const VarPower& vp) { return vp.var == *idx; });
    if (it == m.end()) continue;
    Monomial dm = m;
    auto& slot = dm[static_cast<std::size_t>(it - m.begin())];
    const Rational factor = c * static_cast<unsigned long>(slot.exp);
    if (--slot.exp == 0) dm.erase(dm.begin() + (it - m.begin()));
    out.add_term(dm, factor);
  }
  return out;
}

Polynomial substitute(const Polynomial& p, const VarSetPtr& target,
                      const std::function<Polynomial(Root)>& image) {
  std::unordered_map<std::uint32_t, Polynomial> cache;
  auto lookup = [&](std::uint32_t var) -> const Polynomial& {
    auto it = cache.find(var);
    if (it == cache.end()) {
      it = cache.emplace(var, image(p.vars()->root(var))).first;
    }
    return it->second;
  };
  Polynomial out(target);
  for (const auto& [m, c] : p.terms()) {
    Polynomial term = Polynomial::constant(target, c);
    for (const auto& vp : m) {
      const Polynomial& base = lookup(vp.var);
      if (base.is_zero()) {
        term = Polynomial(target);
        break;
      }
      for (std::uint32_t e = 0; e < vp.exp; ++e) term *= base;
    }
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Points

PointM::PointM(VarSetPtr vars)
    : vars_(std::move(vars)), values_(vars_->size(), Rational(0)) {}

PointM PointM::from_values(VarSetPtr vars,
                           const std::map<Root, Rational>& values) {
  PointM x(vars);
  for (const auto& [r, v] : values) x.set(r, v);
  for (Root r : vars->roots()) {
    if (!values.contains(r)) {
      throw Error(ErrorCode::MissingVariable,
                  "no value given for " + vars->symbol() + to_string(r));
    }
  }
  return x;
}

const Rational& PointM::at(Root r) const {
  const auto idx = vars_->index_of(r);
  if (!idx) {
    throw Error(ErrorCode::MissingVariable,
                vars_->symbol() + to_string(r) + " is outside the point domain");
  }
  return values_[*idx];
}

void PointM::set(Root r, const Rational& value) {
  values_[vars_->require(r)] = value;
}

std::vector<Root> PointM::support() const {
  std::vector<Root> out;
  for (std::uint32_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0) out.push_back(vars_->root(i));
  }
  return out;
}

bool operator==(const PointM& a, const PointM& b) {
  return *a.vars_ == *b.vars_ && a.values_ == b.values_;
}

namespace {

// Values of p's variables taken from x, indexed by p's variable index.
std::vector<const Rational*> bind(const Polynomial& p, const PointM& x) {
  std::vector<const Rational*> bound(p.vars()->size(), nullptr);
  const bool same = p.vars() == x.vars() || *p.vars() == *x.vars();
  for (const auto& [m, c] : p.terms()) {
    for (const auto& vp : m) {
      if (bound[vp.var]) continue;
      bound[vp.var] = same ? &x.values()[vp.var] : &x.at(p.vars()->root(vp.var));
    }
  }
  return bound;
}

}  // namespace

Rational evaluate(const Polynomial& p, const PointM& x) {
  const auto bound = bind(p, x);
  Rational sum = 0;
  Rational term;
  for (const auto& [m, c] : p.terms()) {
    term = c;
    for (const auto& vp : m) {
      const Rational& v = *bound[vp.var];
      if (v == 0) {
        term = 0;
        break;
      }
      for (std::uint32_t e = 0; e < vp.exp; ++e) term *= v;
    }
    sum += term;
  }
  return sum;
}

std::vector<Rational> gradient(const Polynomial& p, const PointM& x,
                               const VarSet& wrt) {
  const auto bound = bind(p, x);
  std::vector<Rational> grad(wrt.size(), Rational(0));
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t d = 0; d < m.size(); ++d) {
      Rational term = c * static_cast<unsigned long>(m[d].exp);
      for (std::size_t o = 0; o < m.size() && term != 0; ++o) {
        const Rational& v = *bound[m[o].var];
        const std::uint32_t e = o == d ? m[o].exp - 1 : m[o].exp;
        for (std::uint32_t k = 0; k < e; ++k) term *= v;
      }
      if (term == 0) continue;
      const auto target = wrt.index_of(p.vars()->root(m[d].var));
      if (target) grad[*target] += term;
    }
  }
  return grad;
}

// ---------------------------------------------------------------------------
// Rational expressions

RationalExpr::RationalExpr(Polynomial n, Polynomial d)
    : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) {
    throw Error(ErrorCode::VanishingDenominator,
                "rational expression with zero denominator");
  }
}

bool ratexpr_equal(const RationalExpr& a, const RationalExpr& b) {
  return a.num * b.den == b.num * a.den;
}

Rational evaluate(const RationalExpr& f, const PointM& x) {
  const Rational d = evaluate(f.den, x);
  if (d == 0) {
    throw Error(ErrorCode::DegenerateInput,
                "denominator vanishes at the sample point");
  }
  return evaluate(f.num, x) / d;
}

// ---------------------------------------------------------------------------
// Matrices and determinants

PolyMatrix::PolyMatrix(VarSetPtr vars, std::size_t rows, std::size_t cols)
    : vars_(vars), rows_(rows), cols_(cols), cells_(rows * cols, Polynomial(vars)) {}

PolyMatrix PolyMatrix::formal(const BlockStructure& bs, VarSetPtr vars) {
  const auto n = static_cast<std::size_t>(bs.n());
  PolyMatrix m(vars, n, n);
  for (Root r : bs.nilradical()) {
    m.at(static_cast<std::size_t>(r.row - 1), static_cast<std::size_t>(r.col - 1)) =
        Polynomial::variable(vars, r);
  }
  return m;
}

PolyMatrix PolyMatrix::submatrix(std::span<const int> rows,
                                 std::span<const int> cols) const {
  PolyMatrix out(vars_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out.at(i, j) = at(static_cast<std::size_t>(rows[i] - 1),
                        static_cast<std::size_t>(cols[j] - 1));
    }
  }
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(ErrorCode::NotSquare, "matrix product dimension mismatch");
  }
  PolyMatrix out(a.vars_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      Polynomial sum(a.vars_);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
        sum += a.at(i, k) * b.at(k, j);
      }
      out.at(i, j) = std::move(sum);
    }
  }
  return out;
}

Polynomial poly_det(const PolyMatrix& m, std::size_t cap) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NotSquare,
                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const std::size_t n = m.rows();
  if (n > cap) {
    throw Error(ErrorCode::SizeCap, "determinant of size " + std::to_string(n) +
                                        " exceeds cap " + std::to_string(cap));
  }
  if (n == 0) return Polynomial::constant(m.vars(), 1);

  // memo[mask] = det of rows popcount(mask).. against the columns not in mask.
  std::unordered_map<std::uint32_t, Polynomial> memo;
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::function<const Polynomial&(std::uint32_t)> minor =
      [&](std::uint32_t used) -> const Polynomial& {
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    Polynomial acc(m.vars());
    if (used == full) {
      acc = Polynomial::constant(m.vars(), 1);
    } else {
      const auto row = static_cast<std::size_t>(std::popcount(used));
      int position = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (used & (1u << c)) continue;
        const Polynomial& entry = m.at(row, c);
        if (!entry.is_zero()) {
          const Polynomial& rest = minor(used | (1u << c));
          if (!rest.is_zero()) {
            if (position % 2 == 0) {
              acc += entry * rest;
            } else {
              acc -= entry * rest;
            }
          }
        }
        ++position;
      }
    }
    return memo.emplace(used, std::move(acc)).first->second;
  };
  return minor(0);
}

}  // namespace pinv
