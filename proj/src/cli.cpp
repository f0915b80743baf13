#include "l2cert/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <set>
#include <sstream>

#include "l2cert/cache.hpp"
#include "l2cert/zetacheck.hpp"

namespace l2cert {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string token;
  for (char c : text + ",") {
    if (c == ' ' || c == '[' || c == ']') continue;
    if (c != ',') {
      token.push_back(c);
      continue;
    }
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (token.empty() || used != token.size()) throw UsageError("bad integer list '" + text + "'");
    out.push_back(v);
    token.clear();
  }
  return out;
}

std::vector<int> to_internal(const std::vector<int>& external, const RunConfig& config) {
  if (config.node_permutation.empty()) return external;
  std::vector<int> internal(external.size());
  for (std::size_t i = 0; i < external.size(); ++i)
    internal.at(static_cast<std::size_t>(config.node_permutation.at(i) - 1)) = external[i];
  return internal;
}

int node_to_internal(int j, const RunConfig& config) {
  if (config.node_permutation.empty()) return j - 1;
  return config.node_permutation.at(static_cast<std::size_t>(j - 1)) - 1;
}

void check_permutation(const RunConfig& config, int rank) {
  if (config.node_permutation.empty()) return;
  std::vector<int> sorted = config.node_permutation;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
    if (sorted[static_cast<std::size_t>(i)] != i + 1 || static_cast<int>(sorted.size()) != rank)
      throw UsageError("--node-permutation must be a permutation of 1.." + std::to_string(rank));
}

std::string marking_of(const RootSystem& rs, const LineSpec& line) {
  const auto dom = dominant_representative(rs, to_int_weight(line.lambda1)).first;
  std::string s;
  for (int i = 0; i < dom.size(); ++i) s += std::to_string(2 * dom(i));
  return s;
}

AnalysisMode mode_for(const std::optional<OrbitEntry>& entry, const RunConfig& config, std::optional<int>& bound) {
  bound = config.bound_order;
  if (config.geometry_only) return AnalysisMode::geometry;
  if (bound) return AnalysisMode::bound;
  if (!config.exact && entry && entry->expected_ord && entry->expected_ord->upper_bound) {
    bound = entry->expected_ord->value;
    return AnalysisMode::bound;
  }
  return AnalysisMode::exact;
}

std::string cache_config(AnalysisMode mode, const RunConfig& config, const std::optional<int>& bound) {
  switch (mode) {
    case AnalysisMode::geometry:
      return "geometry";
    case AnalysisMode::bound:
      return "bound" + std::to_string(*bound);
    case AnalysisMode::exact:
      return "exact" + std::to_string(config.max_order);
  }
  return "";
}

std::optional<std::filesystem::path> cache_dir_of(const RunConfig& config) {
  if (config.no_cache) return std::nullopt;
  if (config.cache_dir) return config.cache_dir;
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

CosetTable obtain_table(const RootSystem& rs, const LineSpec& line, ResultCache* cache, const RunConfig& config,
                        std::ostream& err) {
  const auto t0 = Clock::now();
  if (cache) {
    if (auto table = cache->load_wrel(rs, line)) {
      if (!config.quiet) err << "timing: enumeration " << seconds_since(t0) << "s (cached)\n";
      return std::move(*table);
    }
  }
  CosetTable table = enumerate_wrel(rs, line.j, line.lambda1, line.lambda2);
  if (!config.quiet) err << "timing: enumeration " << seconds_since(t0) << "s\n";
  if (cache) cache->store_wrel(rs, line, table);
  return table;
}

nlohmann::json zeta_json(const ZetaCheck& z) {
  return {{"mu", std::vector<int>(z.mu.data(), z.mu.data() + z.mu.size())},
          {"order", z.order},
          {"digits", z.digits},
          {"specialised", format_real(z.specialised)},
          {"direct", format_real(z.direct)},
          {"difference", format_real(z.difference, 6)},
          {"tolerance", format_real(z.tolerance, 6)},
          {"nonzero", z.nonzero},
          {"agrees", z.agrees}};
}

int exit_code_of(const RowReport& row) {
  if (row.mode == AnalysisMode::geometry) return 0;
  switch (row.result.verdict) {
    case Verdict::l2_certified:
      return 0;
    case Verdict::not_l2:
      return 3;
    case Verdict::undetermined_at_cap:
      return 2;
  }
  return 1;
}

std::string render(const std::vector<RowReport>& rows, const RunConfig& config, bool table) {
  if (config.format == "markdown") return render_markdown(rows);
  if (config.format == "csv") return render_csv(rows);
  return render_json(rows, table);
}

struct Selection {
  std::optional<OrbitEntry> entry;
  LineSpec line;
};

Selection select_line(const RootSystem& rs, const RunConfig& config, std::ostream& err) {
  const int given = config.label.has_value() + config.marking.has_value() + config.lambda1.has_value();
  if (given != 1) throw UsageError("give exactly one of --label, --marking, --lambda1");
  if (config.j && !config.lambda1) throw UsageError("--j goes with --lambda1");
  Selection sel;
  if (config.label) {
    sel.entry = find_by_label(config.group_type, *config.label);
    if (!sel.entry) throw UsageError("unknown orbit label '" + *config.label + "' for " + config.group_type);
    sel.line = catalog_line(rs, *sel.entry);
    return sel;
  }
  if (config.marking) {
    const std::vector<int> marking = to_internal(parse_marking(*config.marking, rs.rank), config);
    std::string digits;
    for (int m : marking) digits += std::to_string(m);
    sel.entry = find_by_marking(config.group_type, digits);
    if (sel.entry) {
      sel.line = catalog_line(rs, *sel.entry);
      return sel;
    }
    for (const std::string& w : marking_warnings(marking)) err << "warning: " << w << '\n';
    RationalWeight lambda0(rs.rank);
    for (int i = 0; i < rs.rank; ++i) lambda0(i) = Rational(marking[static_cast<std::size_t>(i)]) / Rational(2);
    sel.line = normalize_to_line(rs, lambda0);
    return sel;
  }
  if (!config.j) throw UsageError("--lambda1 needs --j");
  if (*config.j < 1 || *config.j > rs.rank) throw UsageError("--j must lie in 1.." + std::to_string(rs.rank));
  const std::vector<int> l1 = to_internal(*config.lambda1, config);
  if (static_cast<int>(l1.size()) != rs.rank)
    throw UsageError("--lambda1 needs " + std::to_string(rs.rank) + " entries");
  RationalWeight lambda1(rs.rank);
  for (int i = 0; i < rs.rank; ++i) lambda1(i) = Rational(l1[static_cast<std::size_t>(i)]);
  sel.line = line_from_lambda1(rs, node_to_internal(*config.j, config), lambda1);
  for (const OrbitEntry& e : catalog(config.group_type))
    if (e.lambda1_hint == l1 && catalog_line(rs, e).j == sel.line.j) sel.entry = e;
  return sel;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RootSystem rs = build_root_system(config.group_type);
  check_permutation(config, rs.rank);
  const Selection sel = select_line(rs, config, err);
  const RowReport row = run_line(rs, sel.entry, sel.line, config, err);
  out << render({row}, config, false);
  return exit_code_of(row);
}

int cmd_table(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RootSystem rs = build_root_system(config.group_type);
  const auto& rows = catalog(config.group_type);
  if (rows.empty()) throw UsageError("no catalog for type " + config.group_type);
  std::vector<RowReport> reports;
  bool mismatch = false;
  for (const OrbitEntry& e : rows) {
    if (!config.quiet) err << e.group_type << ' ' << e.label << '\n';
    if (!config.force && e.expected_wrel && *e.expected_wrel > config.budget) {
      RowReport skipped;
      skipped.entry = e;
      skipped.skipped = true;
      skipped.skip_reason = "#W_rel " + std::to_string(*e.expected_wrel) + " exceeds budget " +
                            std::to_string(config.budget);
      std::optional<int> bound;
      skipped.mode = mode_for(e, config, bound);
      reports.push_back(skipped);
      continue;
    }
    reports.push_back(run_line(rs, e, catalog_line(rs, e), config, err));
    for (const std::string& m : reports.back().mismatches) {
      err << "mismatch " << e.group_type << ' ' << e.label << ": " << m << '\n';
      mismatch = true;
    }
  }
  out << render(reports, config, true);
  return mismatch ? 4 : 0;
}

int cmd_cache(const std::string& action, const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto dir = cache_dir_of(config);
  if (!dir) throw UsageError(std::string("no cache directory: pass --cache-dir or set ") + kCacheDirEnv);
  ResultCache cache(*dir, &err);
  if (action == "list") {
    for (const CacheRecordInfo& r : cache.list())
      out << r.file << '\t' << r.kind << '\t' << r.version << '\t' << r.fingerprint << '\t' << r.key << '\t'
          << r.bytes << '\n';
    return 0;
  }
  if (action == "clear") {
    out << "removed " << cache.clear() << " files\n";
    return 0;
  }
  RootSystem rs = build_root_system(config.group_type);
  check_permutation(config, rs.rank);
  std::vector<Selection> targets;
  if (!config.label && !config.marking && !config.lambda1) {
    for (const OrbitEntry& e : catalog(config.group_type)) {
      Selection s{e, catalog_line(rs, e)};
      if (config.j && s.line.j != node_to_internal(*config.j, config)) continue;
      if (!config.force && e.expected_wrel && *e.expected_wrel > config.budget) continue;
      targets.push_back(s);
    }
    if (targets.empty()) throw UsageError("no catalog line to warm");
  } else {
    targets.push_back(select_line(rs, config, err));
  }
  for (const Selection& s : targets) {
    const CosetTable table = obtain_table(rs, s.line, &cache, config, err);
    const auto t0 = Clock::now();
    int min_p = 0;
    for (const MuBlock& b : build_blocks(rs, table, false)) min_p = std::min(min_p, b.p);
    const int N = std::max(1, config.max_order - min_p);
    std::set<std::pair<int, int>> keys;
    for (std::size_t i = 1; i < table.size(); ++i) keys.emplace(table.added_inversion(i).k, table.added_inversion(i).t);
    FactorCache factors;
    for (const auto& [k, t] : keys) factors.get({k, t}, N);
    cache.store_factors(rs, s.line, factors);
    if (!config.quiet) err << "timing: factor series " << seconds_since(t0) << "s\n";
    out << "warmed " << config.group_type << ' ' << line_key(s.line) << ": " << table.size() << " cosets, "
        << factors.size() << " factor series\n";
  }
  return 0;
}

}  // namespace

RowReport run_line(const RootSystem& rs, const std::optional<OrbitEntry>& entry, const LineSpec& line,
                   const RunConfig& config, std::ostream& err) {
  RowReport row;
  row.entry = entry;
  std::optional<int> bound;
  row.mode = mode_for(entry, config, bound);
  std::optional<ResultCache> cache;
  if (const auto dir = cache_dir_of(config)) cache.emplace(*dir, &err);
  ResultCache* cp = cache ? &*cache : nullptr;

  LineAnalysis ctx;
  ctx.rs = &rs;
  ctx.line = line;
  ctx.max_order = config.max_order;
  ctx.workers = config.workers;
  ctx.bound_order = bound;
  ctx.geometry_only = row.mode == AnalysisMode::geometry;
  if (!config.quiet) ctx.progress = [&err](const std::string& m) { err << "  " << m << '\n'; };

  const std::string key = cache_config(row.mode, config, bound);
  std::optional<CosetTable> table;
  std::optional<VerdictReport> cached = cp ? cp->load_report(rs, line, key) : std::nullopt;
  if (cached) {
    row.result = std::move(*cached);
    if (!config.quiet) err << "timing: analysis 0s (cached)\n";
  } else {
    table = obtain_table(rs, line, cp, config, err);
    const auto t0 = Clock::now();
    row.result = analyze(ctx, *table);
    if (!config.quiet) err << "timing: analysis " << seconds_since(t0) << "s\n";
    if (cp) cp->store_report(rs, line, key, row.result);
  }
  row.result.label = entry ? entry->label : "";
  row.result.marking = entry ? entry->marking_string() : marking_of(rs, line);
  compare_with_catalog(row);

  if (config.zeta_check && row.mode != AnalysisMode::geometry) {
    const BlockResult* pick = pick_check_block(row.result);
    if (!pick) {
      row.zeta = nlohmann::json{{"skipped", "no leading strict block"}};
    } else {
      if (!table) table = obtain_table(rs, line, cp, config, err);
      const auto t0 = Clock::now();
      for (const MuBlock& b : build_blocks(rs, *table))
        if (b.mu == pick->mu) row.zeta = zeta_json(zeta_check(b, *pick->order, config.precision));
      if (!config.quiet) err << "timing: zeta check " << seconds_since(t0) << "s\n";
    }
  }
  return row;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Square-integrability certificates for residues of minimal-parabolic Eisenstein series"};
  app.require_subcommand(1);
  RunConfig config;
  std::string lambda1_text, permutation_text;
  std::optional<int> bound_order;

  auto add_type = [&](CLI::App* cmd) {
    cmd->add_option("--type", config.group_type, "Root system type (E6, E7, E8, F4, A2, ...)")->required();
  };
  auto add_selector = [&](CLI::App* cmd) {
    cmd->add_option("--label", config.label, "Catalog orbit label");
    cmd->add_option("--marking", config.marking, "Weighted Dynkin diagram 2*lambda_0, e.g. 200202");
    cmd->add_option("--lambda1", lambda1_text, "Explicit lambda_1, comma separated")->allow_extra_args(false);
    cmd->add_option("--j", config.j, "Node of the line (1-based), with --lambda1");
  };
  auto add_run = [&](CLI::App* cmd) {
    cmd->add_option("--max-order", config.max_order, "Highest eps order examined")->capture_default_str();
    cmd->add_option("--bound-order", bound_order, "Prove the criterion at this order without the exact order");
    cmd->add_flag("--exact", config.exact, "Exact order even where the catalog gives a bound");
    cmd->add_flag("--geometry-only", config.geometry_only, "Blocks and counts only");
    cmd->add_option("--workers", config.workers, "Worker threads")->capture_default_str()->check(CLI::Range(1, 256));
    cmd->add_option("--format", config.format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "markdown", "csv"}));
    cmd->add_option("--cache-dir", config.cache_dir, std::string("Cache directory (default $") + kCacheDirEnv + ")");
    cmd->add_flag("--no-cache", config.no_cache, "Ignore the cache");
    cmd->add_flag("--zeta-check", config.zeta_check, "Numeric check of one leading coefficient");
    cmd->add_option("--precision", config.precision, "Digits for the numeric check")->capture_default_str();
    cmd->add_option("--node-permutation", permutation_text, "External node i is Bourbaki node p_i");
    cmd->add_flag("--quiet", config.quiet, "No progress or timing on stderr");
  };

  CLI::App* verify = app.add_subcommand("verify", "Certify one line");
  add_type(verify);
  add_selector(verify);
  add_run(verify);

  CLI::App* table = app.add_subcommand("table", "Run every catalog row of a type");
  add_type(table);
  add_run(table);
  table->add_option("--budget", config.budget, "Skip rows with more cosets")->capture_default_str();
  table->add_flag("--force", config.force, "Run rows over the budget");

  CLI::App* cache = app.add_subcommand("cache", "Inspect or fill the result cache");
  cache->require_subcommand(1);
  cache->fallthrough();
  cache->add_option("--cache-dir", config.cache_dir, std::string("Cache directory (default $") + kCacheDirEnv + ")");
  cache->add_subcommand("list", "List records");
  cache->add_subcommand("clear", "Remove every record");
  CLI::App* warm = cache->add_subcommand("warm", "Enumerate and build factor series without verdicts");
  add_type(warm);
  add_selector(warm);
  warm->add_option("--max-order", config.max_order, "Highest eps order of the factor series")->capture_default_str();
  warm->add_option("--budget", config.budget, "Skip catalog rows with more cosets")->capture_default_str();
  warm->add_flag("--force", config.force, "Warm rows over the budget");
  warm->add_flag("--quiet", config.quiet, "No timing on stderr");

  app.add_subcommand("catalog", "Print the orbit catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!lambda1_text.empty()) config.lambda1 = parse_int_list(lambda1_text);
    if (!permutation_text.empty()) config.node_permutation = parse_int_list(permutation_text);
    config.bound_order = bound_order;
    if (config.max_order < 0) throw UsageError("--max-order must be non-negative");
    if (config.precision < 10) throw UsageError("--precision must be at least 10");
    if (verify->parsed()) return cmd_verify(config, out, err);
    if (table->parsed()) return cmd_table(config, out, err);
    if (cache->parsed()) {
      for (const char* action : {"list", "clear", "warm"})
        if (cache->get_subcommand(action)->parsed()) return cmd_cache(action, config, out, err);
    }
    out << catalog_tsv();
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace l2cert
