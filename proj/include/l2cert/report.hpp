#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "l2cert/constantterm.hpp"
#include "l2cert/orbits.hpp"

namespace l2cert {

inline constexpr int kReportSchemaVersion = 1;

enum class AnalysisMode { exact, bound, geometry };
const char* to_string(AnalysisMode m);

/// One rendered row: the analysis plus catalog context and comparisons.
struct RowReport {
  std::optional<OrbitEntry> entry;
  AnalysisMode mode = AnalysisMode::exact;
  VerdictReport result;
  bool skipped = false;
  std::string skip_reason;
  /// Numbers comparable with the catalog columns. For the rho rows these are the
  /// cosets and blocks that contribute at the leading order; otherwise the line data.
  std::uint64_t table_wrel = 0;
  ChamberCounts table_counts;
  /// Per-cell differences against the catalog row ("counts: expected 44/1/0, got 43/2/0").
  std::vector<std::string> mismatches;
  /// Optional numeric check, already formatted.
  std::optional<nlohmann::json> zeta;
};

/// Fills table_wrel, table_counts and mismatches from result and entry.
void compare_with_catalog(RowReport& row);

nlohmann::json to_json(const VerdictReport& r);
VerdictReport verdict_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RowReport& row);
/// Pretty JSON, keys sorted, trailing newline.
std::string render_json(const std::vector<RowReport>& rows, bool table);
/// Six catalog columns plus the verdict.
std::string render_markdown(const std::vector<RowReport>& rows);
std::string render_csv(const std::vector<RowReport>& rows);

}  // namespace l2cert
