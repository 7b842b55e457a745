#include "pinv/root_combinatorics.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "json.hpp"

#include "pinv/error.hpp"

namespace pinv {

std::string to_string(Root r) {
  return "(" + std::to_string(r.row) + "," + std::to_string(r.col) + ")";
}

// ---------------------------------------------------------------------------
// Block structure

BlockStructure BlockStructure::build(std::span<const int> sizes) {
  if (sizes.empty()) {
    throw Error(ErrorCode::EmptyInput, "block size list is empty");
  }
  BlockStructure bs;
  bs.prefix_.push_back(0);
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (sizes[k] < 1) {
      throw Error(ErrorCode::NonPositive,
                  "block " + std::to_string(k + 1) + " has size " +
                      std::to_string(sizes[k]));
    }
    bs.sizes_.push_back(sizes[k]);
    bs.prefix_.push_back(bs.prefix_.back() + sizes[k]);
    for (int i = 0; i < sizes[k]; ++i) {
      bs.block_of_.push_back(static_cast<int>(k) + 1);
    }
  }
  bs.n_ = bs.prefix_.back();
  for (int i = 1; i <= bs.n_; ++i) {
    for (int j = i + 1; j <= bs.n_; ++j) {
      if (bs.block_of_[i - 1] < bs.block_of_[j - 1]) {
        bs.roots_.nilradical.push_back({i, j});
      } else {
        bs.roots_.reductive.push_back({i, j});
      }
    }
  }
  return bs;
}

bool root_gt(Root a, Root b) noexcept {
  return (a.row == b.row && a.col > b.col) || (a.col == b.col && a.row < b.row);
}

bool nested_inside(Root inner, Root outer) noexcept {
  return outer.row < inner.row && outer.col > inner.col;
}

// ---------------------------------------------------------------------------
// Base

Base::Base(std::vector<std::vector<Root>> layers) : layers_(std::move(layers)) {
  for (const auto& layer : layers_) {
    roots_.insert(roots_.end(), layer.begin(), layer.end());
  }
  std::sort(roots_.begin(), roots_.end());
  for (Root r : roots_) {
    by_row_.emplace(r.row, r);
    by_col_.emplace(r.col, r);
  }
}

bool Base::contains(Root r) const {
  return std::binary_search(roots_.begin(), roots_.end(), r);
}

std::optional<Root> Base::in_row(int row) const {
  auto it = by_row_.find(row);
  if (it == by_row_.end()) return std::nullopt;
  return it->second;
}

std::optional<Root> Base::in_col(int col) const {
  auto it = by_col_.find(col);
  if (it == by_col_.end()) return std::nullopt;
  return it->second;
}

Base compute_base(const BlockStructure& bs) {
  std::vector<Root> remaining = bs.nilradical();
  std::vector<std::vector<Root>> layers;
  while (!remaining.empty()) {
    std::vector<Root> layer;
    for (Root g : remaining) {
      const bool minimal = std::none_of(
          remaining.begin(), remaining.end(),
          [g](Root xi) { return root_gt(g, xi); });
      if (minimal) layer.push_back(g);
    }
    std::erase_if(remaining, [&layer](Root g) {
      return std::any_of(layer.begin(), layer.end(), [g](Root xi) {
        return g == xi || root_gt(g, xi);
      });
    });
    layers.push_back(std::move(layer));
  }
  return Base(std::move(layers));
}

// ---------------------------------------------------------------------------
// Extended base

ExtendedBase::ExtendedBase(Base base, std::vector<AdmissiblePair> pairs)
    : base_(std::move(base)), pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end(),
            [](const AdmissiblePair& a, const AdmissiblePair& b) {
              return a.phi < b.phi;
            });
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    phi_.push_back(pairs_[i].phi);
    pair_index_.emplace(pairs_[i].phi, i);
  }
  extended_ = base_.roots();
  extended_.insert(extended_.end(), phi_.begin(), phi_.end());
  std::sort(extended_.begin(), extended_.end());
}

bool ExtendedBase::in_phi(Root r) const { return pair_index_.contains(r); }

CellMark ExtendedBase::mark(Root r) const {
  if (in_base(r)) return CellMark::Base;
  if (in_phi(r)) return CellMark::Phi;
  return CellMark::None;
}

const AdmissiblePair& ExtendedBase::pair_for(Root phi) const {
  auto it = pair_index_.find(phi);
  if (it == pair_index_.end()) {
    throw Error(ErrorCode::NotAdmissible,
                to_string(phi) + " is not produced by an admissible pair");
  }
  return pairs_[it->second];
}

std::vector<Root> ExtendedBase::phi_in_row(int row) const {
  std::vector<Root> out;
  for (Root r : phi_) {
    if (r.row == row) out.push_back(r);
  }
  return out;
}

ExtendedBase compute_extended_base(const BlockStructure& bs, const Base& base) {
  std::vector<AdmissiblePair> pairs;
  for (Root xi : base.roots()) {
    for (Root xi2 : base.roots()) {
      const Root bridge{xi.col, xi2.row};
      if (!bs.in_reductive(bridge)) continue;
      const Root phi{xi.col, xi2.col};
      if (!bs.in_nilradical(phi)) {
        throw Error(ErrorCode::InternalContradiction,
                    "phi " + to_string(phi) + " lies outside M");
      }
      if (base.contains(phi)) {
        throw Error(ErrorCode::InternalContradiction,
                    "phi " + to_string(phi) + " collides with the base");
      }
      pairs.push_back({xi, xi2, bridge, phi});
    }
  }
  std::set<Root> seen;
  for (const auto& q : pairs) {
    if (!seen.insert(q.phi).second) {
      throw Error(ErrorCode::InternalContradiction,
                  "phi " + to_string(q.phi) + " produced by two pairs");
    }
  }
  return ExtendedBase(base, std::move(pairs));
}

// ---------------------------------------------------------------------------
// Psi classification

std::string_view to_string(PsiCase c) noexcept {
  switch (c) {
    case PsiCase::Equal: return "equal";
    case PsiCase::SLess: return "sLess";
    case PsiCase::SGreater: return "sGreater";
  }
  return "?";
}

bool PsiCertificates::in_first(Root r) const { return find_first(r) != nullptr; }
bool PsiCertificates::in_second(Root r) const {
  return find_second(r) != nullptr;
}

const Psi1Witness* PsiCertificates::find_first(Root r) const {
  for (const auto& w : first) {
    if (w.psi == r) return &w;
  }
  return nullptr;
}

const Psi2Certificate* PsiCertificates::find_second(Root r) const {
  for (const auto& c : second) {
    if (c.psi == r) return &c;
  }
  return nullptr;
}

std::vector<Root> PsiCertificates::all() const {
  std::vector<Root> out;
  for (const auto& w : first) out.push_back(w.psi);
  for (const auto& c : second) out.push_back(c.psi);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Psi1Witness> psi1_witnesses(const ExtendedBase& ext, Root psi) {
  std::vector<Psi1Witness> out;
  const int i = psi.row;
  const int b = psi.col;
  // j ascending, a descending: the first entry is the canonical choice.
  for (int j = i + 1; j < b; ++j) {
    const Root xi3{j, b};
    if (!ext.in_extended(xi3)) continue;
    for (int a = b - 1; a > j; --a) {
      const Root xi1{i, a};
      const Root xi2{j, a};
      if (!ext.in_phi(xi1) || !ext.in_phi(xi2)) continue;
      Psi1Witness w;
      w.psi = psi;
      w.xi1 = xi1;
      w.xi2 = xi2;
      w.xi3 = xi3;
      w.xi3_in_base = ext.in_base(xi3);
      w.gamma = ext.pair_for(xi2).first;
      out.push_back(w);
    }
  }
  return out;
}

namespace {

[[noreturn]] void certificate_failure(Root psi, const std::string& what) {
  throw Error(ErrorCode::CertificateFailure,
              "psi " + to_string(psi) + ": " + what);
}

Root require_base(const Base& base, std::optional<Root> r, Root psi,
                  const std::string& what) {
  if (!r) certificate_failure(psi, "missing " + what);
  if (!base.contains(*r)) certificate_failure(psi, what + " not in S");
  return *r;
}

// Largest s < t whose row R_{s-1}+1 satisfies `accept(count of Phi roots)`.
template <typename Pred>
std::optional<int> select_row_block(const BlockStructure& bs,
                                    const ExtendedBase& ext, int t,
                                    Pred accept) {
  for (int s = t - 1; s >= 2; --s) {
    const auto count = ext.phi_in_row(bs.prefix(s - 1) + 1).size();
    if (accept(static_cast<int>(count))) return s;
  }
  return std::nullopt;
}

Psi2Certificate certify_second(const BlockStructure& bs,
                               const ExtendedBase& ext, Root psi, int s, int t,
                               int k) {
  const Base& base = ext.base();
  Psi2Certificate c;
  c.psi = psi;
  c.s = s;
  c.t = t;
  c.k = k;
  const int top_row = bs.prefix(s - 1) + 1;
  const auto row_phi = ext.phi_in_row(top_row);
  c.xi1 = row_phi.at(static_cast<std::size_t>(k - 1));

  c.gamma1 = require_base(base, Root{bs.prefix(s - 1), top_row}, psi,
                          "gamma1");
  const AdmissiblePair& q = ext.pair_for(psi);
  c.gamma2 = q.first;
  c.gamma3 = q.second;
  if (c.gamma3 != Root{bs.prefix(t), bs.prefix(t) + 1}) {
    certificate_failure(psi, "gamma3 is not (R_t, R_t+1)");
  }
  c.gamma4 = base.in_col(bs.prefix(t - 1) + k + 1);

  const int rs = bs.size_of(s);
  const int rt = bs.size_of(t);
  if (rs == rt) {
    c.case_tag = PsiCase::Equal;
    c.gamma5 = require_base(base, Root{top_row, bs.prefix(t)}, psi, "gamma5");
  } else if (rs < rt) {
    c.case_tag = PsiCase::SLess;
    c.gamma5 = require_base(base, base.in_row(top_row), psi, "gamma5");
    const Root bridge{c.gamma5.col, c.gamma3.row};
    if (!bs.in_reductive(bridge)) {
      certificate_failure(psi, "(gamma5, gamma3) is not admissible");
    }
    const Root xi2{c.gamma5.col, c.gamma3.col};
    if (!ext.in_phi(xi2)) certificate_failure(psi, "xi2 not in Phi");
    c.xi2 = xi2;
  } else {
    c.case_tag = PsiCase::SGreater;
    c.gamma5 = require_base(base, base.in_col(bs.prefix(t)), psi, "gamma5");
    const Root bridge{c.gamma1.col, c.gamma5.row};
    if (!bs.in_reductive(bridge)) {
      certificate_failure(psi, "(gamma1, gamma5) is not admissible");
    }
    const Root xi3{c.gamma1.col, c.gamma5.col};
    if (xi3 != Root{top_row, bs.prefix(t)} || !ext.in_phi(xi3)) {
      certificate_failure(psi, "xi3 is not the Phi root (R_{s-1}+1, R_t)");
    }
    c.xi3 = xi3;
  }
  c.simple = (t == s + 1) && (rs == 2 || rt == 2);
  if (!c.simple) {
    if (!c.gamma4 || !base.contains(*c.gamma4)) {
      certificate_failure(psi, "missing gamma4");
    }
  }
  return c;
}

}  // namespace

PsiCertificates compute_psi(const BlockStructure& bs, const ExtendedBase& ext) {
  PsiCertificates out;
  for (Root phi : ext.phi()) {
    // Second series candidates sit in the first column of a block and a
    // non-final row of the block just before it.
    const int t = bs.block_of(phi.row);
    const bool first_column = t < bs.block_count() && phi.col == bs.prefix(t) + 1;
    if (first_column) {
      const int k = phi.row - bs.prefix(t - 1);
      if (k < bs.size_of(t)) {
        const auto at_least = select_row_block(
            bs, ext, t, [k](int count) { return count >= k; });
        const auto exactly = select_row_block(
            bs, ext, t, [k](int count) { return count == k; });
        if (at_least != exactly) out.reading_divergence.push_back(phi);
        if (at_least) {
          out.second.push_back(certify_second(bs, ext, phi, *at_least, t, k));
          continue;
        }
      }
    }
    auto witnesses = psi1_witnesses(ext, phi);
    if (!witnesses.empty()) out.first.push_back(witnesses.front());
  }
  for (const auto& w : out.first) {
    if (out.in_second(w.psi)) {
      throw Error(ErrorCode::InternalContradiction,
                  to_string(w.psi) + " classified into both series");
    }
  }
  return out;
}

std::vector<Root> psi_numbering(std::span<const Root> psi) {
  std::vector<Root> out(psi.begin(), psi.end());
  std::sort(out.begin(), out.end(), [](Root a, Root b) {
    if (a.col != b.col) return a.col < b.col;
    return a.row > b.row;
  });
  return out;
}

namespace {

std::vector<Root> maximal_nested(Root outer, const Base& base) {
  std::vector<Root> inside;
  for (Root mu : base.roots()) {
    if (nested_inside(mu, outer)) inside.push_back(mu);
  }
  std::vector<Root> out;
  for (Root mu : inside) {
    const bool maximal =
        std::none_of(inside.begin(), inside.end(),
                     [mu](Root other) { return nested_inside(mu, other); });
    if (maximal) out.push_back(mu);
  }
  return out;
}

}  // namespace

NestedLayers nested_layers(Root gamma, const Base& base) {
  NestedLayers out;
  out.layer1 = maximal_nested(gamma, base);
  std::set<Root> second;
  for (Root mu : out.layer1) {
    for (Root inner : maximal_nested(mu, base)) second.insert(inner);
  }
  out.layer2.assign(second.begin(), second.end());
  return out;
}

Combinatorics Combinatorics::build(std::span<const int> sizes) {
  Combinatorics c{BlockStructure::build(sizes), {}, {}};
  c.ext = compute_extended_base(c.blocks, compute_base(c.blocks));
  c.psi = compute_psi(c.blocks, c.ext);
  return c;
}

// ---------------------------------------------------------------------------
// Diagrams

DiagramFormat parse_diagram_format(std::string_view name) {
  if (name == "ascii") return DiagramFormat::Ascii;
  if (name == "unicode") return DiagramFormat::Unicode;
  if (name == "json") return DiagramFormat::Json;
  throw Error(ErrorCode::UnsupportedFormat,
              "unknown diagram format '" + std::string(name) + "'");
}

namespace {

std::string render_json(const BlockStructure& bs, const ExtendedBase& ext,
                        const PsiCertificates& psi) {
  nlohmann::ordered_json doc;
  doc["n"] = bs.n();
  doc["blocks"] = bs.sizes();
  auto cells = nlohmann::ordered_json::array();
  for (Root r : ext.extended()) {
    std::string mark;
    if (psi.in_first(r)) {
      mark = "Psi1";
    } else if (psi.in_second(r)) {
      mark = "Psi2";
    } else if (ext.in_base(r)) {
      mark = "S";
    } else {
      mark = "Phi";
    }
    cells.push_back({{"row", r.row}, {"col", r.col}, {"mark", mark}});
  }
  doc["cells"] = std::move(cells);
  return doc.dump(2) + "\n";
}

}  // namespace

std::string render_diagram(const BlockStructure& bs, const ExtendedBase& ext,
                           const PsiCertificates& psi, DiagramFormat format) {
  if (format == DiagramFormat::Json) return render_json(bs, ext, psi);

  const bool unicode = format == DiagramFormat::Unicode;
  const char* base_glyph = unicode ? "⊗" : "O";
  const char* phi_glyph = unicode ? "×" : "x";
  const char* psi_glyph = unicode ? "⊠" : "#";

  std::string rule = "+";
  for (int k = 1; k <= bs.block_count(); ++k) {
    rule += std::string(static_cast<std::size_t>(2 * bs.size_of(k) - 1), '-');
    rule += '+';
  }
  const int width = static_cast<int>(std::to_string(bs.n()).size());

  std::ostringstream out;
  out << rule << '\n';
  for (int i = 1; i <= bs.n(); ++i) {
    out << '|';
    for (int j = 1; j <= bs.n(); ++j) {
      const Root r{i, j};
      if (i == j) {
        out << '1';
      } else if (bs.in_nilradical(r)) {
        if (psi.contains(r)) {
          out << psi_glyph;
        } else if (ext.in_base(r)) {
          out << base_glyph;
        } else if (ext.in_phi(r)) {
          out << phi_glyph;
        } else {
          out << '.';
        }
      } else {
        out << ' ';
      }
      const bool block_end = j == bs.prefix(bs.block_of(j));
      out << (block_end ? '|' : ' ');
    }
    std::string label = std::to_string(i);
    out << ' ' << std::string(static_cast<std::size_t>(width) - label.size(), ' ')
        << label << '\n';
    if (i == bs.prefix(bs.block_of(i))) out << rule << '\n';
  }
  return out.str();
}

std::vector<int> parse_block_list(std::string_view text) {
  std::vector<int> sizes;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    std::string_view item = text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty() && comma == std::string_view::npos && sizes.empty()) {
      break;
    }
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw Error(ErrorCode::ParseError,
                  "bad block size '" + std::string(item) + "'");
    }
    sizes.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (sizes.empty()) throw Error(ErrorCode::EmptyInput, "no block sizes given");
  for (int s : sizes) {
    if (s < 1) {
      throw Error(ErrorCode::NonPositive,
                  "block size " + std::to_string(s) + " is not positive");
    }
  }
  return sizes;
}

}  // namespace pinv
