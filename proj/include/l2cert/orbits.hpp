#pragma once

#include <optional>
#include <string>
#include <vector>

#include "l2cert/rootsys.hpp"

namespace l2cert {

/// Expected order of vanishing; upper_bound marks entries only known as "<= value".
struct ExpectedOrder {
  int value = 0;
  bool upper_bound = false;
  std::string str() const { return upper_bound ? "<=" + std::to_string(value) : std::to_string(value); }
};

struct ChamberCounts {
  long strict = 0;
  long non_strict = 0;
  long boundary = 0;
  friend bool operator==(const ChamberCounts&, const ChamberCounts&) = default;
  std::string str() const {
    return std::to_string(strict) + "/" + std::to_string(non_strict) + "/" + std::to_string(boundary);
  }
};

struct OrbitEntry {
  std::string group_type;
  /// Label of the orbit O attached to the row; rows are addressed by it.
  std::string label;
  /// lambda_0 written in fundamental weights, e.g. "w1+w4+w6" or "rho-w4".
  std::string lambda0_expr;
  /// 2 * lambda_0 in fundamental-weight coordinates.
  std::vector<int> marking;
  std::vector<int> lambda1_hint;
  std::optional<std::uint64_t> expected_wrel;
  std::optional<ChamberCounts> expected_counts;
  std::optional<ExpectedOrder> expected_ord;

  std::string marking_string() const;
  bool is_rho_row() const;
  RationalWeight lambda0() const;
};

/// Table rows for E6, E7, E8 and F4; empty for any other type.
const std::vector<OrbitEntry>& catalog(std::string_view group_type);

/// Lookup by label (case-insensitive, ignoring '_' and spaces) or by marking string.
std::optional<OrbitEntry> find_by_label(std::string_view group_type, std::string_view label);
std::optional<OrbitEntry> find_by_marking(std::string_view group_type, std::string_view marking);

/// Parses "200202" or "2,0,0,2,0,2". Throws std::invalid_argument on bad digits or length.
std::vector<int> parse_marking(std::string_view text, int rank);
/// Human-readable notes for markings outside {0, 2}.
std::vector<std::string> marking_warnings(const std::vector<int>& marking);

struct LineSpec {
  int j = 0;  ///< 0-based node
  Rational s;
  RationalWeight lambda1;
  RationalWeight lambda2;
  /// apply_word(rs, witness, lambda1) == lambda0.
  Word witness;
  std::uint64_t coset_count = 0;
};

/// Line lambda_1 = 2 s omega_j - rho, lambda_2 = omega_j.
LineSpec make_line(const RootSystem& rs, int j, const Rational& s);

/// All (j, s) with 2 s omega_j - rho in the orbit of lambda0, in node order then ascending s.
std::vector<LineSpec> line_candidates(const RootSystem& rs, const RationalWeight& lambda0);

/// Picks the candidate with the fewest cosets (lowest node, then smaller s, on ties).
/// lambda0 = rho is special-cased to the last node with s = 0.
/// Throws std::invalid_argument("no maximal-parabolic line found") when nothing qualifies.
LineSpec normalize_to_line(const RootSystem& rs, const RationalWeight& lambda0);

/// Line through an explicit lambda_1 on node j; lambda_1 must be -1 away from j.
LineSpec line_from_lambda1(const RootSystem& rs, int j, const RationalWeight& lambda1);

/// The line of a catalog row: its lambda_1 hint on the node where the hint is not -1
/// (the last node for the rho rows).
LineSpec catalog_line(const RootSystem& rs, const OrbitEntry& entry);

/// Versioned tab-separated export, one record per table row.
std::string catalog_tsv();

}  // namespace l2cert
