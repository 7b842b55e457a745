#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pinv/canonical_form.hpp"
#include "pinv/cli.hpp"
#include "pinv/error.hpp"
#include "pinv/json_io.hpp"

namespace py = pybind11;
using namespace pinv;

namespace {

using RootTuple = std::pair<int, int>;

std::vector<RootTuple> tuples(const std::vector<Root>& roots) {
  std::vector<RootTuple> out;
  for (Root r : roots) out.emplace_back(r.row, r.col);
  return out;
}

py::object loads(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::dict psi_sets(const std::vector<int>& blocks) {
  const Combinatorics c = Combinatorics::build(blocks);
  std::vector<Root> first, second;
  for (const auto& w : c.psi.first) first.push_back(w.psi);
  for (const auto& w : c.psi.second) second.push_back(w.psi);
  py::dict d;
  d["first"] = tuples(first);
  d["second"] = tuples(second);
  d["numbering"] = tuples(psi_numbering(c.psi.all()));
  return d;
}

py::list invariant_docs(const std::vector<int>& blocks) {
  const InvariantFamily f = InvariantFamily::build(blocks);
  py::list out;
  for (const auto& [xi, p] : f.minors()) out.append(loads(minor_json(f, xi)));
  for (const auto& [phi, p] : f.lpolys()) out.append(loads(l_json(f, phi)));
  for (const FactoredInvariant* inv : f.numbered()) out.append(loads(invariant_json(f, *inv)));
  return out;
}

PointM point_from_map(const InvariantFamily& f,
                      const std::map<RootTuple, std::string>& entries) {
  PointM x(f.vars());
  for (const auto& [r, v] : entries) {
    const Root root{r.first, r.second};
    f.vars()->require(root);
    x.set(root, parse_rational(v));
  }
  return x;
}

std::map<RootTuple, std::string> rational_map(const std::map<Root, Rational>& m) {
  std::map<RootTuple, std::string> out;
  for (const auto& [r, v] : m) out.emplace(RootTuple{r.row, r.col}, to_string(v));
  return out;
}

py::dict canonicalize_point(const std::vector<int>& blocks,
                      const std::map<RootTuple, std::string>& entries) {
  const InvariantFamily f = InvariantFamily::build(blocks);
  const PointM x = point_from_map(f, entries);
  py::dict d;
  if (is_Y_point(f.combinatorics(), x)) {
    const Reduction red = t_reduce(f.combinatorics(), x);
    d["method"] = "torus";
    d["coefficients"] = rational_map(red.result.coefficients);
  } else {
    d["method"] = "invariants";
    d["coefficients"] = rational_map(invariants_to_canonical(f, invariant_values(f, x)));
  }
  d["invariants"] = rational_map(invariant_values(f, x));
  return d;
}

py::tuple run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_pinv, m) {
  m.doc() = "B-invariants of parabolic nilradicals in gl(n)";

  // what() starts with the error code name, e.g. "UnknownVariable: ..."
  py::register_exception<Error>(m, "PinvError", PyExc_ValueError);

  m.def(
      "diagram",
      [](const std::vector<int>& blocks, const std::string& format) {
        const Combinatorics c = Combinatorics::build(blocks);
        return render_diagram(c.blocks, c.ext, c.psi, parse_diagram_format(format));
      },
      py::arg("blocks"), py::arg("format") = "ascii");
  m.def(
      "base",
      [](const std::vector<int>& b) { return tuples(Combinatorics::build(b).ext.base().roots()); },
      py::arg("blocks"));
  m.def(
      "phi",
      [](const std::vector<int>& b) { return tuples(Combinatorics::build(b).ext.phi()); },
      py::arg("blocks"));
  m.def("psi", &psi_sets, py::arg("blocks"));
  m.def(
      "orbit_dimension",
      [](const std::vector<int>& b) {
        const Combinatorics c = Combinatorics::build(b);
        return orbit_dimension(c.blocks, c.psi);
      },
      py::arg("blocks"));
  m.def("invariants", &invariant_docs, py::arg("blocks"));
  m.def("canonicalize", &canonicalize_point, py::arg("blocks"), py::arg("entries"));
  m.def("run", &run, py::arg("args"));
}
