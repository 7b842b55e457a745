#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pinv {

enum class Command { Diagram, Invariants, Check, Canonicalize, OrbitDim };
enum class OutputFormat { Ascii, Unicode, Json };
enum class Selection { Base, Extended, A, B, All };

struct CliConfig {
  Command command = Command::Diagram;
  std::vector<std::vector<int>> blocks;  // more than one in batch mode
  bool batch = false;
  /// Per-command default when unset: json for canonicalize, ascii otherwise.
  std::optional<OutputFormat> format;
  int trials = 20;
  std::uint64_t seed = 0;
  std::optional<std::string> input_file;
  Selection which = Selection::All;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs a validated config. Returns one of the kExit codes.
int run_cli(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs them.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace pinv
