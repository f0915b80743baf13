#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "l2cert/cfactor.hpp"
#include "l2cert/constantterm.hpp"
#include "l2cert/orbits.hpp"
#include "l2cert/rootsys.hpp"

namespace l2cert {

inline constexpr int kCacheVersion = 1;
inline constexpr const char* kCacheMagic = "l2cert-cache";
inline constexpr const char* kCacheDirEnv = "L2CERT_CACHE_DIR";

struct CacheRecordInfo {
  std::string file;
  std::string kind;
  std::string fingerprint;
  std::string key;
  int version = 0;
  std::uintmax_t bytes = 0;
};

/// Text records keyed by root-system fingerprint and line (j, lambda_1).
/// Every record starts with "l2cert-cache <version>" and ends with a checksum
/// line. Records from another version are ignored; unreadable ones are moved
/// to <dir>/quarantine and reported on the diagnostic stream.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir, std::ostream* diag = nullptr);

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<CosetTable> load_wrel(const RootSystem& rs, const LineSpec& line);
  void store_wrel(const RootSystem& rs, const LineSpec& line, const CosetTable& table);

  /// config names the analysis settings, e.g. "exact-4" or "bound-3".
  std::optional<VerdictReport> load_report(const RootSystem& rs, const LineSpec& line, const std::string& config);
  void store_report(const RootSystem& rs, const LineSpec& line, const std::string& config, const VerdictReport& r);

  /// Factor series of the line, one per inversion key, through eps^(eps_power + N).
  void store_factors(const RootSystem& rs, const LineSpec& line, const FactorCache& factors);
  /// Number of factor series in a valid record, or nullopt.
  std::optional<std::size_t> load_factors(const RootSystem& rs, const LineSpec& line);

  std::vector<CacheRecordInfo> list() const;
  /// Removes every record (and the quarantine); returns the number of files removed.
  std::size_t clear();
  std::size_t quarantined() const { return quarantined_; }

 private:
  std::optional<std::vector<std::string>> read_record(const std::filesystem::path& file, const std::string& kind,
                                                      const std::string& fingerprint, const std::string& key);
  void write_record(const std::filesystem::path& file, const std::string& kind, const std::string& fingerprint,
                    const std::string& key, const std::vector<std::string>& body);
  void quarantine(const std::filesystem::path& file, const std::string& why);
  std::filesystem::path record_path(const std::string& kind, const RootSystem& rs, const LineSpec& line,
                                    const std::string& suffix) const;

  std::filesystem::path dir_;
  std::ostream* diag_;
  std::size_t quarantined_ = 0;
};

/// The key line of a record: "j=<1-based> lambda1=[...]".
std::string line_key(const LineSpec& line);

}  // namespace l2cert
