#include "pinv/cli.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "pinv/canonical_form.hpp"
#include "pinv/error.hpp"
#include "pinv/json_io.hpp"
#include "pinv/sampling.hpp"

namespace pinv {

namespace {

// A command either writes text or builds one JSON document; batch mode
// collects the documents into an array.
struct Output {
  std::string text;
  std::optional<Json> json;
  int status = kExitOk;
};

std::string block_label(const std::vector<int>& sizes) {
  std::string s;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(sizes[i]);
  }
  return s;
}

OutputFormat format_for(const CliConfig& c) {
  if (c.format) return *c.format;
  return c.command == Command::Canonicalize ? OutputFormat::Json : OutputFormat::Ascii;
}

std::string factor_product(const std::vector<Factor>& fs) {
  if (fs.empty()) return "1";
  std::string s;
  for (const Factor& f : fs) {
    if (!s.empty()) s += '*';
    s += std::string(to_string(f.kind)) + to_string(f.root);
  }
  return s;
}

Output diagram(const Combinatorics& c, OutputFormat f) {
  Output o;
  switch (f) {
    case OutputFormat::Ascii:
      o.text = render_diagram(c.blocks, c.ext, c.psi, DiagramFormat::Ascii);
      break;
    case OutputFormat::Unicode:
      o.text = render_diagram(c.blocks, c.ext, c.psi, DiagramFormat::Unicode);
      break;
    case OutputFormat::Json:
      o.json = Json::parse(render_diagram(c.blocks, c.ext, c.psi, DiagramFormat::Json));
      break;
  }
  return o;
}

Output invariants(const InvariantFamily& fam, Selection which, OutputFormat f) {
  const bool want_m = which == Selection::Base || which == Selection::Extended ||
                      which == Selection::All;
  const bool want_l = which == Selection::Extended || which == Selection::All;
  const bool want_a = which == Selection::A || which == Selection::All;
  const bool want_b = which == Selection::B || which == Selection::All;
  Output o;
  std::ostringstream text;
  Json list = Json::array();
  const bool json = f == OutputFormat::Json;
  if (want_m) {
    for (const auto& [xi, p] : fam.minors()) {
      if (json) {
        list.push_back(minor_json(fam, xi));
      } else {
        text << "M" << to_string(xi) << " = " << to_string(p) << "\n";
      }
    }
  }
  if (want_l) {
    for (const auto& [phi, p] : fam.lpolys()) {
      if (json) {
        list.push_back(l_json(fam, phi));
      } else {
        text << "L" << to_string(phi) << " = " << to_string(p) << "\n";
      }
    }
  }
  for (const auto& [want, invs] :
       {std::pair{want_a, &fam.a_invariants()}, std::pair{want_b, &fam.b_invariants()}}) {
    if (!want) continue;
    for (const FactoredInvariant& inv : *invs) {
      if (json) {
        list.push_back(invariant_json(fam, inv));
      } else {
        text << to_string(inv.kind) << to_string(inv.root) << " = "
             << factor_product(inv.num) << " / (" << factor_product(inv.den) << ")\n";
      }
    }
  }
  if (json) {
    o.json = std::move(list);
  } else {
    o.text = text.str();
  }
  return o;
}

Output check(const InvariantFamily& fam, int trials, std::uint64_t seed,
             OutputFormat f) {
  const Combinatorics& c = fam.combinatorics();
  const int n = c.blocks.n();
  Rng rng(seed);
  std::map<Factor, int> changed;  // M and L under unipotent conjugation
  std::map<Root, int> changed_ab;
  int skipped = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const PointM x = random_point(fam.vars(), rng);
    const PointM ux = adjoint(random_unipotent(n, rng), x);
    const auto before = fam.factor_values(x);
    const auto after = fam.factor_values(ux);
    for (const auto& [key, v] : before) {
      if (after.at(key) != v) ++changed[key];
    }

    const PointM y = random_point(fam.vars(), rng);
    const PointM by = adjoint(random_borel(n, rng), y);
    if (!fam.denominators_nonzero(y) || !fam.denominators_nonzero(by)) {
      ++skipped;
      continue;
    }
    const auto vy = invariant_values(fam, y);
    const auto vby = invariant_values(fam, by);
    for (const auto& [psi, v] : vy) {
      if (vby.at(psi) != v) ++changed_ab[psi];
    }
  }

  const std::size_t nm = fam.minors().size();
  const std::size_t nl = fam.lpolys().size();
  const std::size_t na = fam.a_invariants().size();
  const std::size_t nb = fam.b_invariants().size();
  // aux minors are checked with everything else but not counted as invariants
  bool ok = true;
  std::ostringstream text;
  Json failures = Json::array();
  for (const auto& [key, count] : changed) {
    ok = false;
    text << "changed under unipotent conjugation: " << to_string(key.kind)
         << to_string(key.root) << " in " << count << " of " << trials << " trials\n";
    failures.push_back(Json{{"kind", std::string(to_string(key.kind))},
                            {"root", to_json(key.root)},
                            {"trials", count}});
  }
  for (const auto& [psi, count] : changed_ab) {
    ok = false;
    const auto kind = c.psi.in_first(psi) ? "A" : "B";
    text << "changed under B conjugation: " << kind << to_string(psi) << " in "
         << count << " of " << trials - skipped << " trials\n";
    failures.push_back(Json{{"kind", kind}, {"root", to_json(psi)}, {"trials", count}});
  }
  if (skipped == trials && na + nb > 0) {
    ok = false;
    text << "every B trial hit a vanishing denominator\n";
  }
  if (ok) {
    text << "all invariance checks passed: " << nm << " M, " << nl << " L, " << na
         << " A, " << nb << " B\n";
  }
  if (skipped > 0) {
    text << "skipped " << skipped << " of " << trials
         << " B trials with a vanishing denominator\n";
  }

  Output o;
  o.status = ok ? kExitOk : kExitVerificationFailed;
  if (f == OutputFormat::Json) {
    o.json = Json{{"passed", ok},
                  {"trials", trials},
                  {"seed", seed},
                  {"counts", Json{{"M", nm}, {"L", nl}, {"A", na}, {"B", nb}}},
                  {"skipped", skipped},
                  {"failures", std::move(failures)}};
  } else {
    o.text = text.str();
  }
  return o;
}

Output canonicalize(const InvariantFamily& fam, const std::string& path,
                    OutputFormat f) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  const Combinatorics& c = fam.combinatorics();
  const int n = c.blocks.n();
  const PointM x = point_from_json(doc, fam.vars(), n);

  std::map<Root, Rational> coeffs;
  std::optional<ReductionTranscript> transcript;
  if (is_Y_point(c, x)) {
    Reduction r = t_reduce(c, x);
    coeffs = r.result.coefficients;
    transcript = std::move(r.transcript);
  } else {
    if (!fam.denominators_nonzero(x)) {
      throw Error(ErrorCode::DegenerateInput,
                  "an invariant denominator vanishes at the input point");
    }
    coeffs = invariants_to_canonical(fam, invariant_values(fam, x));
  }
  const SlicePoint xp = make_X_point(c, fam.vars(), coeffs);

  Output o;
  if (f == OutputFormat::Json) {
    Json j = to_json(xp.point, n);
    j["method"] = transcript ? "torus" : "invariants";
    if (transcript) j["transcript"] = to_json(*transcript);
    o.json = std::move(j);
  } else {
    std::ostringstream text;
    for (const auto& [psi, v] : coeffs) {
      text << "c" << to_string(psi) << " = " << to_string(v) << "\n";
    }
    if (transcript) {
      for (const TranscriptEntry& e : transcript->entries) {
        text << "step " << e.step << ": h_" << e.i << "(" << to_string(e.b) << ")\n";
      }
    }
    o.text = text.str();
  }
  return o;
}

Output orbit_dim(const Combinatorics& c, OutputFormat f) {
  const int dim_m = static_cast<int>(c.blocks.nilradical().size());
  const int d = orbit_dimension(c.blocks, c.psi);
  Output o;
  if (f == OutputFormat::Json) {
    o.json = Json{{"blocks", c.blocks.sizes()},
                  {"dim_m", dim_m},
                  {"psi", c.psi.size()},
                  {"orbit_dimension", d}};
  } else {
    o.text = std::to_string(d) + "\n";
  }
  return o;
}

Output run_one(const CliConfig& cfg, const std::vector<int>& sizes) {
  const OutputFormat f = format_for(cfg);
  if (cfg.command == Command::Diagram) return diagram(Combinatorics::build(sizes), f);
  if (cfg.command == Command::OrbitDim) return orbit_dim(Combinatorics::build(sizes), f);
  const InvariantFamily fam = InvariantFamily::build(sizes);
  switch (cfg.command) {
    case Command::Invariants: return invariants(fam, cfg.which, f);
    case Command::Check: return check(fam, cfg.trials, cfg.seed, f);
    case Command::Canonicalize: return canonicalize(fam, *cfg.input_file, f);
    default: break;
  }
  throw Error(ErrorCode::InternalContradiction, "unhandled command");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InternalContradiction:
    case ErrorCode::CertificateFailure:
    case ErrorCode::ReductionFailure:
    case ErrorCode::SupportLeak:
      return kExitVerificationFailed;
    default:
      return kExitUsage;
  }
}

std::vector<std::vector<int>> read_batch(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::vector<std::vector<int>> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(parse_block_list(line.substr(first, last - first + 1)));
  }
  if (out.empty()) throw Error(ErrorCode::EmptyInput, path + " lists no block structures");
  return out;
}

}  // namespace

int run_cli(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.blocks.empty()) {
    err << "error: no block structure given\n";
    return kExitUsage;
  }
  if (cfg.command == Command::Check && cfg.trials < 1) {
    err << "error: --trials must be at least 1\n";
    return kExitUsage;
  }
  if (cfg.command == Command::Canonicalize && !cfg.input_file) {
    err << "error: canonicalize needs --input-file\n";
    return kExitUsage;
  }
  const bool json = format_for(cfg) == OutputFormat::Json;
  Json batch = Json::array();
  int status = kExitOk;
  for (const auto& sizes : cfg.blocks) {
    Output o;
    try {
      o = run_one(cfg, sizes);
    } catch (const Error& e) {
      err << "error [" << block_label(sizes) << "]: " << e.what() << "\n";
      return exit_code_for(e.code());
    }
    status = std::max(status, o.status);
    if (!cfg.batch) {
      if (o.json) {
        out << o.json->dump(2) << "\n";
      } else {
        out << o.text;
      }
    } else if (json) {
      batch.push_back(Json{{"blocks", sizes}, {"result", std::move(*o.json)}});
    } else {
      out << "== blocks " << block_label(sizes) << "\n" << o.text;
    }
  }
  if (cfg.batch && json) out << batch.dump(2) << "\n";
  return status;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"B-invariants on the nilradical of a parabolic subalgebra of gl(n)"};
  app.require_subcommand(1);

  std::string blocks_text;
  std::string batch_file;
  std::string format_text;
  std::string which_text = "all";
  CliConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    auto* b = sub->add_option("--blocks", blocks_text, "Block sizes, e.g. 2,1,3,2");
    auto* f = sub->add_option("--batch-file", batch_file, "One block list per line");
    b->excludes(f);
    sub->add_option("--format", format_text, "ascii, unicode or json")
        ->check(CLI::IsMember({"ascii", "unicode", "json"}));
    sub->add_option("--seed", cfg.seed, "Random seed");
  };
  auto* diagram_cmd = app.add_subcommand("diagram", "Draw S, Phi and Psi on the grid");
  auto* inv_cmd = app.add_subcommand("invariants", "List the invariants");
  auto* check_cmd = app.add_subcommand("check", "Randomized invariance checks");
  auto* canon_cmd = app.add_subcommand("canonicalize", "Canonical X-point of a point");
  auto* dim_cmd = app.add_subcommand("orbit-dim", "Dimension of a generic B-orbit");
  for (auto* sub : {diagram_cmd, inv_cmd, check_cmd, canon_cmd, dim_cmd}) add_common(sub);
  inv_cmd->add_option("--which", which_text, "base, extended, A, B or all")
      ->check(CLI::IsMember({"base", "extended", "A", "B", "all"}));
  check_cmd->add_option("--trials", cfg.trials, "Number of random trials");
  std::string input;
  canon_cmd->add_option("--input-file", input, "Point JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (diagram_cmd->parsed()) cfg.command = Command::Diagram;
  if (inv_cmd->parsed()) cfg.command = Command::Invariants;
  if (check_cmd->parsed()) cfg.command = Command::Check;
  if (canon_cmd->parsed()) cfg.command = Command::Canonicalize;
  if (dim_cmd->parsed()) cfg.command = Command::OrbitDim;
  if (!format_text.empty()) {
    cfg.format = format_text == "json"      ? OutputFormat::Json
                 : format_text == "unicode" ? OutputFormat::Unicode
                                            : OutputFormat::Ascii;
  }
  static const std::map<std::string, Selection> kWhich = {
      {"base", Selection::Base}, {"extended", Selection::Extended},
      {"A", Selection::A},       {"B", Selection::B},
      {"all", Selection::All}};
  cfg.which = kWhich.at(which_text);
  if (!input.empty()) cfg.input_file = input;

  try {
    if (!batch_file.empty()) {
      cfg.batch = true;
      cfg.blocks = read_batch(batch_file);
    } else if (!blocks_text.empty()) {
      cfg.blocks.push_back(parse_block_list(blocks_text));
    } else {
      err << "error: one of --blocks or --batch-file is required\n";
      return kExitUsage;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return run_cli(cfg, out, err);
}

}  // namespace pinv
