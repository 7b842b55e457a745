#include "pinv/json_io.hpp"

#include "pinv/error.hpp"

namespace pinv {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

Rational rational_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  bad(std::string("\"") + key + "\" must be a \"p/q\" string");
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) bad(std::string("\"") + key + "\" must be an array");
  return v;
}

Json entry(int row, int col, const Rational& v) {
  return Json{{"row", row}, {"col", col}, {"value", to_string(v)}};
}

Json factors_json(const std::vector<Factor>& fs) {
  Json a = Json::array();
  for (const Factor& f : fs) {
    a.push_back(Json{{"kind", std::string(to_string(f.kind))}, {"root", to_json(f.root)}});
  }
  return a;
}

Json one(const VarSetPtr& vars) { return to_json(Polynomial::constant(vars, 1)); }

}  // namespace

Json to_json(Root r) { return Json{{"row", r.row}, {"col", r.col}}; }

Root root_from_json(const Json& j) {
  const Root r{int_field(j, "row"), int_field(j, "col")};
  if (r.row < 1 || r.row >= r.col) {
    throw Error(ErrorCode::ParseError, "not a positive root: " + to_string(r));
  }
  return r;
}

Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [mono, coef] : p.terms()) {
    Json vars = Json::array();
    for (const VarPower& vp : mono) {
      const Root r = p.vars()->root(vp.var);
      vars.push_back(Json{{"row", r.row}, {"col", r.col}, {"exp", vp.exp}});
    }
    terms.push_back(Json{{"coef", to_string(coef)}, {"vars", std::move(vars)}});
  }
  return Json{{"terms", std::move(terms)}};
}

Polynomial polynomial_from_json(const Json& j, const VarSetPtr& vars) {
  Polynomial p(vars);
  for (const Json& t : array_field(j, "terms")) {
    const Rational coef = rational_field(t, "coef");
    Polynomial term = Polynomial::constant(vars, coef);
    for (const Json& v : array_field(t, "vars")) {
      const Root r = root_from_json(v);
      const int e = int_field(v, "exp");
      if (e < 0) bad("negative exponent on " + to_string(r));
      const Polynomial x = Polynomial::variable(vars, r);
      for (int k = 0; k < e; ++k) term *= x;
    }
    p += term;
  }
  return p;
}

Json to_json(const PointM& x, int n) {
  Json entries = Json::array();
  const auto values = x.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0) continue;
    const Root r = x.vars()->root(static_cast<std::uint32_t>(i));
    entries.push_back(entry(r.row, r.col, values[i]));
  }
  return Json{{"n", n}, {"entries", std::move(entries)}};
}

PointM point_from_json(const Json& j, const VarSetPtr& vars, int n) {
  const int jn = int_field(j, "n");
  if (jn != n) {
    bad("point has n = " + std::to_string(jn) + " but the blocks give " +
        std::to_string(n));
  }
  PointM x(vars);
  for (const Json& e : array_field(j, "entries")) {
    const Root r = root_from_json(e);
    const Rational v = rational_field(e, "value");
    if (!vars->index_of(r)) {
      if (v == 0) continue;
      throw Error(ErrorCode::UnknownVariable,
                  to_string(r) + " is not a coordinate of the nilradical");
    }
    x.set(r, v);
  }
  return x;
}

Json to_json(const GroupElement& g) {
  Json entries = Json::array();
  for (int i = 1; i <= g.n(); ++i) {
    for (int k = i; k <= g.n(); ++k) {
      if (g.at(i, k) != 0) entries.push_back(entry(i, k, g.at(i, k)));
    }
  }
  return Json{{"n", g.n()}, {"entries", std::move(entries)}};
}

GroupElement group_from_json(const Json& j, bool unipotent_shorthand) {
  const int n = int_field(j, "n");
  if (n < 1) bad("group element needs n >= 1");
  std::vector<std::vector<Rational>> m(
      static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), 0));
  if (unipotent_shorthand) {
    for (int i = 0; i < n; ++i) m[i][i] = 1;
  }
  for (const Json& e : array_field(j, "entries")) {
    const int r = int_field(e, "row");
    const int c = int_field(e, "col");
    if (r < 1 || c < 1 || r > n || c > n) {
      bad("entry (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
    }
    m[r - 1][c - 1] = rational_field(e, "value");
  }
  return GroupElement::from_entries(n, m);
}

Json to_json(const ReductionTranscript& t) {
  Json a = Json::array();
  for (const TranscriptEntry& e : t.entries) {
    a.push_back(Json{{"op", "h"}, {"i", e.i}, {"b", to_string(e.b)}, {"step", e.step}});
  }
  return a;
}

Json minor_json(const InvariantFamily& family, Root xi) {
  const MinorIndex idx = s_gamma(xi, family.combinatorics().ext.base());
  return Json{{"kind", "M"},
              {"root", to_json(xi)},
              {"witnesses", Json{{"rows", idx.rows}, {"cols", idx.cols}}},
              {"num", to_json(family.factor({InvariantKind::M, xi}))},
              {"den", one(family.vars())}};
}

Json l_json(const InvariantFamily& family, Root phi) {
  const AdmissiblePair& q = family.combinatorics().ext.pair_for(phi);
  return Json{{"kind", "L"},
              {"root", to_json(phi)},
              {"witnesses",
               Json{{"first", to_json(q.first)},
                    {"second", to_json(q.second)},
                    {"bridge", to_json(q.bridge)}}},
              {"num", to_json(family.factor({InvariantKind::L, phi}))},
              {"den", one(family.vars())}};
}

Json invariant_json(const InvariantFamily& family, const FactoredInvariant& inv) {
  const PsiCertificates& psi = family.combinatorics().psi;
  Json w = Json::object();
  if (const Psi1Witness* a = psi.find_first(inv.root)) {
    w["xi1"] = to_json(a->xi1);
    w["xi2"] = to_json(a->xi2);
    w["xi3"] = to_json(a->xi3);
    if (a->xi3_in_base) w["gamma"] = to_json(a->gamma);
  } else if (const Psi2Certificate* b = psi.find_second(inv.root)) {
    w["s"] = b->s;
    w["t"] = b->t;
    w["k"] = b->k;
    w["case"] = std::string(to_string(b->case_tag));
    w["simple"] = b->simple;
    w["xi1"] = to_json(b->xi1);
    w["gamma1"] = to_json(b->gamma1);
    w["gamma2"] = to_json(b->gamma2);
    w["gamma3"] = to_json(b->gamma3);
    if (b->gamma4) w["gamma4"] = to_json(*b->gamma4);
    w["gamma5"] = to_json(b->gamma5);
    if (b->xi2) w["xi2"] = to_json(*b->xi2);
    if (b->xi3) w["xi3"] = to_json(*b->xi3);
  }
  const RationalExpr e = family.expand(inv);
  return Json{{"kind", std::string(to_string(inv.kind))},
              {"root", to_json(inv.root)},
              {"witnesses", std::move(w)},
              {"num", to_json(e.num)},
              {"den", to_json(e.den)},
              {"factors",
               Json{{"num", factors_json(inv.num)}, {"den", factors_json(inv.den)}}}};
}

}  // namespace pinv
