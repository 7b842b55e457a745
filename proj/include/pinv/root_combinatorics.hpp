#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pinv {

/// A positive root eps_row - eps_col of gl(n), 1-based, row < col. Doubles as
/// the index of a matrix cell and of a coordinate variable x_{row,col}.
struct Root {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Root&, const Root&) = default;
};

std::string to_string(Root r);

struct RootSets {
  std::vector<Root> nilradical;  // M: cells strictly above the block diagonal
  std::vector<Root> reductive;   // positive roots inside one diagonal block
};

/// Diagonal block sizes (r_1, ..., r_u) of a parabolic subalgebra together
/// with the prefix sums R_k and the derived root sets.
class BlockStructure {
 public:
  /// Throws Error(EmptyInput) or Error(NonPositive).
  static BlockStructure build(std::span<const int> sizes);

  int n() const noexcept { return n_; }
  int block_count() const noexcept { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& sizes() const noexcept { return sizes_; }
  /// r_k for 1 <= k <= u.
  int size_of(int block) const { return sizes_.at(block - 1); }
  /// R_k for 0 <= k <= u (R_0 = 0, R_u = n).
  int prefix(int k) const { return prefix_.at(k); }
  /// Block number k with R_{k-1} < index <= R_k.
  int block_of(int index) const { return block_of_.at(index - 1); }

  bool is_valid_root(Root r) const noexcept {
    return 1 <= r.row && r.row < r.col && r.col <= n_;
  }
  bool in_nilradical(Root r) const noexcept {
    return is_valid_root(r) && block_of_[r.row - 1] < block_of_[r.col - 1];
  }
  bool in_reductive(Root r) const noexcept {
    return is_valid_root(r) && block_of_[r.row - 1] == block_of_[r.col - 1];
  }

  const RootSets& roots() const noexcept { return roots_; }
  const std::vector<Root>& nilradical() const noexcept {
    return roots_.nilradical;
  }

 private:
  std::vector<int> sizes_;
  std::vector<int> prefix_;
  std::vector<int> block_of_;
  int n_ = 0;
  RootSets roots_;
};

/// a > b in the sense that a - b is a positive root: same row with a to the
/// right of b, or same column with a above b. Not an order relation.
bool root_gt(Root a, Root b) noexcept;

/// Strict interval nesting: inner < outer iff outer.row < inner.row and
/// outer.col > inner.col.
bool nested_inside(Root inner, Root outer) noexcept;

/// The base S, stored layer by layer as produced by the minimal-element sweep.
class Base {
 public:
  Base() = default;
  explicit Base(std::vector<std::vector<Root>> layers);

  const std::vector<std::vector<Root>>& layers() const noexcept {
    return layers_;
  }
  /// All roots of S in (row, col) order.
  const std::vector<Root>& roots() const noexcept { return roots_; }
  bool contains(Root r) const;
  std::optional<Root> in_row(int row) const;
  std::optional<Root> in_col(int col) const;
  std::size_t size() const noexcept { return roots_.size(); }

 private:
  std::vector<std::vector<Root>> layers_;
  std::vector<Root> roots_;
  std::map<int, Root> by_row_;
  std::map<int, Root> by_col_;
};

Base compute_base(const BlockStructure& bs);

/// Admissible pair (first, second) of base roots chained through the bridge
/// root (col(first), row(second)) of the reductive part; phi = bridge + second.
struct AdmissiblePair {
  Root first;
  Root second;
  Root bridge;
  Root phi;
};

enum class CellMark { None, Base, Phi };

class ExtendedBase {
 public:
  ExtendedBase() = default;
  ExtendedBase(Base base, std::vector<AdmissiblePair> pairs);

  const Base& base() const noexcept { return base_; }
  /// Admissible pairs sorted by phi in (row, col) order.
  const std::vector<AdmissiblePair>& pairs() const noexcept { return pairs_; }
  /// Phi in (row, col) order.
  const std::vector<Root>& phi() const noexcept { return phi_; }
  /// S union Phi in (row, col) order.
  const std::vector<Root>& extended() const noexcept { return extended_; }

  bool in_base(Root r) const { return base_.contains(r); }
  bool in_phi(Root r) const;
  bool in_extended(Root r) const { return in_base(r) || in_phi(r); }
  CellMark mark(Root r) const;
  /// The pair whose phi is `r`; Error(NotAdmissible) if r is not in Phi.
  const AdmissiblePair& pair_for(Root phi) const;
  /// Phi roots lying in `row`, left to right.
  std::vector<Root> phi_in_row(int row) const;

 private:
  Base base_;
  std::vector<AdmissiblePair> pairs_;
  std::vector<Root> phi_;
  std::vector<Root> extended_;
  std::map<Root, std::size_t> pair_index_;
};

/// Throws Error(InternalContradiction) if some phi leaves M or hits S.
ExtendedBase compute_extended_base(const BlockStructure& bs, const Base& base);

/// psi = (i, b) with xi1 = (i, a), xi2 = (j, a), xi3 = (j, b), i < j, a < b.
/// `gamma` is the first root of the admissible pair of xi2; A_psi uses M_gamma
/// when xi3 is in S.
struct Psi1Witness {
  Root psi;
  Root xi1;
  Root xi2;
  Root xi3;
  bool xi3_in_base = false;
  Root gamma;
};

enum class PsiCase { Equal, SLess, SGreater };

std::string_view to_string(PsiCase c) noexcept;

/// psi = (R_{t-1} + k, R_t + 1) classified into the second series.
struct Psi2Certificate {
  Root psi;
  int s = 0;
  int t = 0;
  int k = 0;
  Root xi1;
  Root gamma1;
  Root gamma2;
  Root gamma3;
  std::optional<Root> gamma4;  // always present outside the simple case
  Root gamma5;
  std::optional<Root> xi2;  // SLess only
  std::optional<Root> xi3;  // SGreater only
  PsiCase case_tag = PsiCase::Equal;
  bool simple = false;
};

struct PsiCertificates {
  std::vector<Psi1Witness> first;    // (row, col) order
  std::vector<Psi2Certificate> second;  // (row, col) order
  /// Candidates where "exactly k roots" and "at least k roots" in the
  /// second-series row condition would classify differently.
  std::vector<Root> reading_divergence;

  bool in_first(Root r) const;
  bool in_second(Root r) const;
  bool contains(Root r) const { return in_first(r) || in_second(r); }
  const Psi1Witness* find_first(Root r) const;
  const Psi2Certificate* find_second(Root r) const;
  /// Psi = Psi1 union Psi2 in (row, col) order.
  std::vector<Root> all() const;
  std::size_t size() const noexcept { return first.size() + second.size(); }
};

/// Every witness triple (xi1, xi2 in Phi, xi3 in S or Phi) for a root psi,
/// ordered by ascending j then descending a.
std::vector<Psi1Witness> psi1_witnesses(const ExtendedBase& ext, Root psi);

PsiCertificates compute_psi(const BlockStructure& bs, const ExtendedBase& ext);

/// Roots ordered bottom-up within each column, columns left to right. The
/// position in the result is the 1-based number minus one.
std::vector<Root> psi_numbering(std::span<const Root> psi);

struct NestedLayers {
  std::vector<Root> layer1;
  std::vector<Root> layer2;
};

/// layer1: maximal base roots strictly nested inside gamma; layer2: union of
/// the maximal base roots nested inside each layer1 root.
NestedLayers nested_layers(Root gamma, const Base& base);

/// Everything derived from a block-size list in one value.
struct Combinatorics {
  BlockStructure blocks;
  ExtendedBase ext;
  PsiCertificates psi;

  static Combinatorics build(std::span<const int> sizes);
};

enum class DiagramFormat { Ascii, Unicode, Json };

/// Throws Error(UnsupportedFormat).
DiagramFormat parse_diagram_format(std::string_view name);

std::string render_diagram(const BlockStructure& bs, const ExtendedBase& ext,
                           const PsiCertificates& psi, DiagramFormat format);

/// Parses "2,1,3,2". Throws Error(ParseError), Error(EmptyInput) or
/// Error(NonPositive).
std::vector<int> parse_block_list(std::string_view text);

}  // namespace pinv
