#include "l2cert/report.hpp"

#include <sstream>

namespace l2cert {

using nlohmann::json;

const char* to_string(AnalysisMode m) {
  switch (m) {
    case AnalysisMode::exact:
      return "exact";
    case AnalysisMode::bound:
      return "bound";
    case AnalysisMode::geometry:
      return "geometry";
  }
  return "?";
}

namespace {

json weight_json(const IntWeight& w) { return std::vector<int>(w.data(), w.data() + w.size()); }

IntWeight weight_from(const json& j) {
  const auto v = j.get<std::vector<int>>();
  IntWeight w(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) w(static_cast<Eigen::Index>(i)) = v[i];
  return w;
}

Chamber chamber_from(const std::string& s) {
  if (s == "strict_interior") return Chamber::strict_interior;
  if (s == "boundary") return Chamber::boundary;
  if (s == "outside") return Chamber::outside;
  throw std::invalid_argument("unknown chamber " + s);
}

Verdict verdict_from(const std::string& s) {
  for (Verdict v : {Verdict::l2_certified, Verdict::not_l2, Verdict::undetermined_at_cap})
    if (s == to_string(v)) return v;
  throw std::invalid_argument("unknown verdict " + s);
}

json counts_json(const ChamberCounts& c) {
  return {{"strict", c.strict}, {"non_strict", c.non_strict}, {"boundary", c.boundary}, {"text", c.str()}};
}

ChamberCounts counts_from(const json& j) {
  return {j.at("strict").get<long>(), j.at("non_strict").get<long>(), j.at("boundary").get<long>()};
}

std::string format_int_weight(const IntWeight& w) {
  std::string s = "[";
  for (int i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w(i));
  return s + "]";
}

std::string certificate_text(const RowReport& row) {
  const VerdictReport& r = row.result;
  if (row.mode == AnalysisMode::geometry) return "geometry only; no coefficients examined";
  std::string s;
  switch (r.verdict) {
    case Verdict::l2_certified:
      s = "at order " + std::to_string(r.ord.value) + " some strict-interior block is nonzero as a formal polynomial";
      s += r.ord.upper_bound ? " and every other block vanishes through that order"
                             : ", every non-strict block vanishes through it and every block vanishes below it";
      if (r.leading_h_dependent) s += "; a leading coefficient depends on H, so it cannot cancel for any value of the zeta constants";
      return s;
    case Verdict::not_l2:
      return "a block outside the strict interior is nonzero at the leading order " + std::to_string(r.ord.value);
    case Verdict::undetermined_at_cap:
      return "no order up to " + std::to_string(r.max_order) + " settles the criterion";
  }
  return s;
}

}  // namespace

json to_json(const VerdictReport& r) {
  json leading = json::array();
  for (const BlockResult& b : r.leading) {
    leading.push_back({{"mu", weight_json(b.mu)},
                       {"classification", to_string(b.classification)},
                       {"eps_power", b.p},
                       {"cosets", b.cosets},
                       {"classes", b.classes},
                       {"order", b.order ? json(*b.order) : json(nullptr)},
                       {"zero_through", b.proven_zero_through},
                       {"h_dependent", b.h_dependent}});
  }
  return {{"group_type", r.group_type},
          {"label", r.label},
          {"marking", r.marking},
          {"line", {{"j", r.j + 1}, {"s", to_string(r.s)}, {"lambda1", weight_json(r.lambda1)}}},
          {"wrel_count", r.wrel_count},
          {"distinct_mu", r.distinct_mu},
          {"counts", counts_json(r.counts)},
          {"ord",
           {{"known", r.ord.known}, {"value", r.ord.value}, {"upper_bound", r.ord.upper_bound}, {"text", r.ord.str()}}},
          {"verdict", to_string(r.verdict)},
          {"max_order", r.max_order},
          {"geometry_only", r.geometry_only},
          {"h_dependence", {{"leading_any", r.leading_h_dependent}, {"leading_all", r.all_leading_h_dependent}}},
          {"leading_blocks", leading},
          {"proofs",
           {{"strict_vanishing_below_ord", r.strict_proven},
            {"nonstrict_vanishing_through_ord", r.nonstrict_proven},
            {"coefficient_components", r.coefficient_tests}}},
          {"min_eps_power", r.min_p}};
}

VerdictReport verdict_from_json(const json& j) {
  VerdictReport r;
  r.group_type = j.at("group_type");
  r.label = j.at("label");
  r.marking = j.at("marking");
  r.j = j.at("line").at("j").get<int>() - 1;
  r.s = parse_rational(j.at("line").at("s").get<std::string>());
  r.lambda1 = weight_from(j.at("line").at("lambda1"));
  r.wrel_count = j.at("wrel_count");
  r.distinct_mu = j.at("distinct_mu");
  r.counts = counts_from(j.at("counts"));
  r.ord.known = j.at("ord").at("known");
  r.ord.value = j.at("ord").at("value");
  r.ord.upper_bound = j.at("ord").at("upper_bound");
  r.verdict = verdict_from(j.at("verdict"));
  r.max_order = j.at("max_order");
  r.geometry_only = j.at("geometry_only");
  r.leading_h_dependent = j.at("h_dependence").at("leading_any");
  r.all_leading_h_dependent = j.at("h_dependence").at("leading_all");
  for (const json& b : j.at("leading_blocks")) {
    BlockResult x;
    x.mu = weight_from(b.at("mu"));
    x.classification = chamber_from(b.at("classification"));
    x.p = b.at("eps_power");
    x.cosets = b.at("cosets");
    x.classes = b.at("classes");
    if (!b.at("order").is_null()) x.order = b.at("order").get<int>();
    x.proven_zero_through = b.at("zero_through");
    x.h_dependent = b.at("h_dependent");
    r.leading.push_back(x);
  }
  r.strict_proven = j.at("proofs").at("strict_vanishing_below_ord");
  r.nonstrict_proven = j.at("proofs").at("nonstrict_vanishing_through_ord");
  r.coefficient_tests = j.at("proofs").at("coefficient_components");
  r.min_p = j.at("min_eps_power");
  return r;
}

void compare_with_catalog(RowReport& row) {
  const VerdictReport& r = row.result;
  row.mismatches.clear();
  row.table_wrel = r.wrel_count;
  row.table_counts = r.counts;
  if (row.entry && row.entry->is_rho_row() && !r.leading.empty()) {
    row.table_wrel = 0;
    row.table_counts = {};
    for (const BlockResult& b : r.leading) {
      row.table_wrel += b.cosets;
      if (b.classification == Chamber::strict_interior)
        ++row.table_counts.strict;
      else
        ++row.table_counts.non_strict;
      if (b.classification == Chamber::boundary) ++row.table_counts.boundary;
    }
  }
  if (!row.entry || row.skipped) return;
  const OrbitEntry& e = *row.entry;
  if (e.expected_wrel && *e.expected_wrel != row.table_wrel)
    row.mismatches.push_back("wrel: expected " + std::to_string(*e.expected_wrel) + ", got " +
                             std::to_string(row.table_wrel));
  if (e.expected_counts && !(*e.expected_counts == row.table_counts))
    row.mismatches.push_back("counts: expected " + e.expected_counts->str() + ", got " + row.table_counts.str());
  if (row.mode == AnalysisMode::geometry) return;
  if (e.expected_ord) {
    const ExpectedOrder& x = *e.expected_ord;
    const bool ok = r.ord.known && (x.upper_bound ? r.ord.value <= x.value
                                                  : (!r.ord.upper_bound && r.ord.value == x.value));
    if (!ok) row.mismatches.push_back("ord: expected " + x.str() + ", got " + r.ord.str());
  }
  if (r.verdict != Verdict::l2_certified)
    row.mismatches.push_back(std::string("verdict: expected L2_certified, got ") + to_string(r.verdict));
}

json to_json(const RowReport& row) {
  json out;
  out["mode"] = to_string(row.mode);
  out["skipped"] = row.skipped;
  out["skip_reason"] = row.skip_reason;
  out["result"] = row.skipped ? json(nullptr) : to_json(row.result);
  if (row.entry) {
    const OrbitEntry& e = *row.entry;
    json expected;
    expected["wrel"] = e.expected_wrel ? json(*e.expected_wrel) : json(nullptr);
    expected["counts"] = e.expected_counts ? json(e.expected_counts->str()) : json(nullptr);
    expected["ord"] = e.expected_ord ? json(e.expected_ord->str()) : json(nullptr);
    out["catalog"] = {{"type", e.group_type},
                      {"label", e.label},
                      {"lambda0", e.lambda0_expr},
                      {"marking", e.marking_string()},
                      {"rho_row", e.is_rho_row()},
                      {"expected", expected}};
  } else {
    out["catalog"] = nullptr;
  }
  if (!row.skipped) {
    out["table"] = {{"wrel", row.table_wrel}, {"counts", row.table_counts.str()}, {"ord", row.result.ord.str()}};
    out["certificate"] = certificate_text(row);
  }
  out["mismatches"] = row.mismatches;
  out["matches"] = row.mismatches.empty();
  out["zeta_check"] = row.zeta ? *row.zeta : json(nullptr);
  return out;
}

std::string render_json(const std::vector<RowReport>& rows, bool table) {
  json doc;
  if (table) {
    doc["schema_version"] = kReportSchemaVersion;
    doc["rows"] = json::array();
    for (const RowReport& r : rows) doc["rows"].push_back(to_json(r));
  } else {
    doc = to_json(rows.at(0));
    doc["schema_version"] = kReportSchemaVersion;
  }
  return doc.dump(2) + "\n";
}

std::string render_markdown(const std::vector<RowReport>& rows) {
  std::ostringstream out;
  out << "| 2lambda0 | O | lambda1 | #W_rel | strict/non-strict/boundary | ord | verdict |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const RowReport& row : rows) {
    const std::string marking = row.entry ? row.entry->marking_string() : row.result.marking;
    const std::string label = row.entry ? row.entry->label : row.result.label;
    if (row.skipped) {
      const std::string l1 = row.entry ? format_int_weight(Eigen::Map<const IntWeight>(
                                             row.entry->lambda1_hint.data(),
                                             static_cast<Eigen::Index>(row.entry->lambda1_hint.size())))
                                       : "";
      out << "| " << marking << " | " << label << " | " << l1 << " | - | - | - | skipped: " << row.skip_reason
          << " |\n";
      continue;
    }
    out << "| " << marking << " | " << label << " | " << format_int_weight(row.result.lambda1) << " | "
        << row.table_wrel << " | " << row.table_counts.str() << " | "
        << (row.mode == AnalysisMode::geometry ? "-" : row.result.ord.str()) << " | "
        << (row.mode == AnalysisMode::geometry ? "geometry" : to_string(row.result.verdict))
        << (row.mismatches.empty() ? "" : " (mismatch)") << " |\n";
  }
  return out.str();
}

std::string render_csv(const std::vector<RowReport>& rows) {
  std::ostringstream out;
  out << "type,label,marking,j,s,lambda1,wrel,counts,ord,verdict,mode,matches\n";
  for (const RowReport& row : rows) {
    const VerdictReport& r = row.result;
    const std::string type = row.entry ? row.entry->group_type : r.group_type;
    const std::string label = row.entry ? row.entry->label : r.label;
    const std::string marking = row.entry ? row.entry->marking_string() : r.marking;
    if (row.skipped) {
      out << type << ',' << label << ',' << marking << ",,,,,,,skipped,"
          << to_string(row.mode) << ",\n";
      continue;
    }
    out << type << ',' << label << ',' << marking << ',' << r.j + 1 << ',' << to_string(r.s) << ",\""
        << format_int_weight(r.lambda1) << "\"," << row.table_wrel << ',' << row.table_counts.str() << ','
        << (row.mode == AnalysisMode::geometry ? "" : r.ord.str()) << ','
        << (row.mode == AnalysisMode::geometry ? "" : to_string(r.verdict)) << ',' << to_string(row.mode) << ','
        << (row.mismatches.empty() ? "yes" : "no") << '\n';
  }
  return out.str();
}

}  // namespace l2cert
