#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "l2cert/report.hpp"

namespace l2cert {

/// Settings for one invocation. Nodes are 1-based on the command line.
struct RunConfig {
  std::string command;
  std::string group_type;
  std::optional<std::string> label;
  std::optional<std::string> marking;
  std::optional<std::vector<int>> lambda1;
  std::optional<int> j;
  int max_order = 4;
  std::optional<int> bound_order;
  /// Exact order even where the catalog only bounds it.
  bool exact = false;
  bool geometry_only = false;
  int workers = 1;
  std::optional<std::filesystem::path> cache_dir;
  bool no_cache = false;
  std::string format = "json";
  bool zeta_check = false;
  int precision = 50;
  std::uint64_t budget = 20000;
  bool force = false;
  bool quiet = false;
  /// External node i (1-based) is Bourbaki node node_permutation[i-1]; empty means identity.
  std::vector<int> node_permutation;
};

/// Runs one line end to end: enumeration (or cache), analysis (or cache),
/// catalog comparison and the optional numeric check. Progress goes to err.
RowReport run_line(const RootSystem& rs, const std::optional<OrbitEntry>& entry, const LineSpec& line,
                   const RunConfig& config, std::ostream& err);

/// Exit codes: 0 certified / table matches, 1 usage or validation error,
/// 2 undetermined at the cap, 3 not square-integrable, 4 table mismatch.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace l2cert
