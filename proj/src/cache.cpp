#include "l2cert/cache.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "l2cert/report.hpp"

namespace l2cert {

namespace fs = std::filesystem;

namespace {

std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : text) h = (h ^ c) * 1099511628211ull;
  return h;
}

std::string hex(std::uint64_t h) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::uint64_t body_checksum(const std::vector<std::string>& lines) {
  std::uint64_t h = 1469598103934665603ull;
  for (const std::string& l : lines) h = fnv1a("\n", fnv1a(l, h));
  return h;
}

struct CorruptRecord : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> ints_of(const std::string& line, std::size_t expected) {
  std::istringstream in(line);
  std::vector<int> v;
  int x;
  while (in >> x) v.push_back(x);
  if (!in.eof() || v.size() != expected) throw CorruptRecord("malformed line \"" + line + "\"");
  return v;
}

}  // namespace

std::string line_key(const LineSpec& line) {
  return "j=" + std::to_string(line.j + 1) + " lambda1=" + format_weight(to_int_weight(line.lambda1));
}

ResultCache::ResultCache(fs::path dir, std::ostream* diag) : dir_(std::move(dir)), diag_(diag) {
  fs::create_directories(dir_);
}

fs::path ResultCache::record_path(const std::string& kind, const RootSystem& rs, const LineSpec& line,
                                  const std::string& suffix) const {
  std::string name = kind + "-" + rs.fingerprint() + "-j" + std::to_string(line.j + 1) + "-" +
                     hex(fnv1a(line_key(line))).substr(0, 12);
  if (!suffix.empty()) name += "-" + suffix;
  return dir_ / (name + ".rec");
}

void ResultCache::quarantine(const fs::path& file, const std::string& why) {
  const fs::path qdir = dir_ / "quarantine";
  fs::create_directories(qdir);
  fs::path target = qdir / file.filename();
  for (int n = 1; fs::exists(target); ++n) target = qdir / (file.filename().string() + "." + std::to_string(n));
  std::error_code ec;
  fs::rename(file, target, ec);
  if (ec) fs::remove(file, ec);
  ++quarantined_;
  if (diag_) *diag_ << "cache: corrupt record " << file.filename().string() << " (" << why << "), moved to "
                    << target.string() << '\n';
}

std::optional<std::vector<std::string>> ResultCache::read_record(const fs::path& file, const std::string& kind,
                                                                 const std::string& fingerprint,
                                                                 const std::string& key) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  try {
    if (lines.empty()) throw CorruptRecord("empty file");
    std::istringstream head(lines[0]);
    std::string magic;
    int version = 0;
    if (!(head >> magic >> version) || magic != kCacheMagic) throw CorruptRecord("bad magic header");
    if (version != kCacheVersion) {
      if (diag_) *diag_ << "cache: ignoring " << file.filename().string() << " from version " << version << '\n';
      return std::nullopt;
    }
    if (lines.size() < 5) throw CorruptRecord("truncated");
    const std::string& last = lines.back();
    if (last.rfind("end ", 0) != 0) throw CorruptRecord("missing end line");
    std::vector<std::string> body(lines.begin() + 1, lines.end() - 1);
    if (last.substr(4) != hex(body_checksum(body))) throw CorruptRecord("checksum mismatch");
    if (body[0] != "kind " + kind) throw CorruptRecord("unexpected " + body[0]);
    if (body[1] != "fingerprint " + fingerprint) {
      if (diag_) *diag_ << "cache: ignoring " << file.filename().string() << " for another root system\n";
      return std::nullopt;
    }
    if (body[2] != "key " + key) {
      if (diag_) *diag_ << "cache: ignoring " << file.filename().string() << " for another key\n";
      return std::nullopt;
    }
    return std::vector<std::string>(body.begin() + 3, body.end());
  } catch (const CorruptRecord& e) {
    in.close();
    quarantine(file, e.what());
    return std::nullopt;
  }
}

void ResultCache::write_record(const fs::path& file, const std::string& kind, const std::string& fingerprint,
                               const std::string& key, const std::vector<std::string>& payload) {
  std::vector<std::string> body = {"kind " + kind, "fingerprint " + fingerprint, "key " + key};
  body.insert(body.end(), payload.begin(), payload.end());
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache record " + tmp.string());
    out << kCacheMagic << ' ' << kCacheVersion << '\n';
    for (const std::string& l : body) out << l << '\n';
    out << "end " << hex(body_checksum(body)) << '\n';
  }
  fs::rename(tmp, file);
}

std::optional<CosetTable> ResultCache::load_wrel(const RootSystem& rs, const LineSpec& line) {
  const fs::path file = record_path("wrel", rs, line, "");
  auto body = read_record(file, "wrel", rs.fingerprint(), line_key(line));
  if (!body) return std::nullopt;
  try {
    const std::vector<std::string>& b = *body;
    if (b.empty() || b[0].rfind("count ", 0) != 0) throw CorruptRecord("missing count");
    const std::size_t n = std::stoull(b[0].substr(6));
    if (b.size() != n + 1 || n != coset_count(rs, line.j)) throw CorruptRecord("wrong element count");
    const int r = rs.rank;
    const IntWeight l1 = to_int_weight(line.lambda1);
    std::vector<std::vector<int>> rows(n);
    std::vector<std::size_t> by_length(n);
    for (std::size_t i = 0; i < n; ++i) {
      rows[i] = ints_of(b[i + 1], 5);
      by_length[i] = i;
    }
    std::stable_sort(by_length.begin(), by_length.end(),
                     [&](std::size_t a, std::size_t c) { return rows[a][2] < rows[c][2]; });
    Eigen::MatrixXi img1(r, static_cast<Eigen::Index>(n)), img2(r, static_cast<Eigen::Index>(n));
    std::vector<char> done(n, 0);
    for (std::size_t i : by_length) {
      const auto& row = rows[i];
      const auto c = static_cast<Eigen::Index>(i);
      if (row[0] < 0) {
        if (i != 0 || row[2] != 0) throw CorruptRecord("misplaced root element");
        img1.col(c) = l1;
        img2.col(c) = IntWeight::Unit(r, line.j);
      } else {
        const auto p = static_cast<std::size_t>(row[0]);
        if (p >= n || !done[p] || row[1] < 0 || row[1] >= r || rows[p][2] + 1 != row[2])
          throw CorruptRecord("inconsistent parent of element " + std::to_string(i));
        IntWeight a = img1.col(static_cast<Eigen::Index>(p)), h = img2.col(static_cast<Eigen::Index>(p));
        if (a(row[1]) != row[3] || h(row[1]) != row[4] || row[4] < 1)
          throw CorruptRecord("inversion data of element " + std::to_string(i));
        simple_reflect_inplace(rs, row[1], a);
        simple_reflect_inplace(rs, row[1], h);
        img1.col(c) = a;
        img2.col(c) = h;
      }
      done[i] = 1;
    }
    CosetTable table(r, line.j, l1);
    table.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      table.push(rows[i][0], rows[i][1], rows[i][2], {rows[i][3], rows[i][4]}, IntWeight(),
                 IntWeight());
    table.finalize_images(std::move(img1), std::move(img2));
    return table;
  } catch (const std::exception& e) {
    quarantine(file, e.what());
    return std::nullopt;
  }
}

void ResultCache::store_wrel(const RootSystem& rs, const LineSpec& line, const CosetTable& table) {
  std::vector<std::string> body;
  body.reserve(table.size() + 1);
  body.push_back("count " + std::to_string(table.size()));
  for (std::size_t i = 0; i < table.size(); ++i) {
    const InversionPair x = table.added_inversion(i);
    const int letter = table.parent(i) < 0 ? -1 : table.letter(i);
    body.push_back(std::to_string(table.parent(i)) + ' ' + std::to_string(letter) + ' ' +
                   std::to_string(table.length(i)) + ' ' + std::to_string(x.k) + ' ' + std::to_string(x.t));
  }
  write_record(record_path("wrel", rs, line, ""), "wrel", rs.fingerprint(), line_key(line), body);
}

std::optional<VerdictReport> ResultCache::load_report(const RootSystem& rs, const LineSpec& line,
                                                      const std::string& config) {
  const fs::path file = record_path("report", rs, line, config);
  auto body = read_record(file, "report", rs.fingerprint(), line_key(line) + " config=" + config);
  if (!body) return std::nullopt;
  try {
    if (body->size() != 1) throw CorruptRecord("expected one report line");
    return verdict_from_json(nlohmann::json::parse(body->front()));
  } catch (const std::exception& e) {
    quarantine(file, e.what());
    return std::nullopt;
  }
}

void ResultCache::store_report(const RootSystem& rs, const LineSpec& line, const std::string& config,
                               const VerdictReport& r) {
  write_record(record_path("report", rs, line, config), "report", rs.fingerprint(),
               line_key(line) + " config=" + config, {to_json(r).dump()});
}

void ResultCache::store_factors(const RootSystem& rs, const LineSpec& line, const FactorCache& factors) {
  std::vector<std::string> body;
  std::istringstream in(factors.dump());
  for (std::string l; std::getline(in, l);) body.push_back(l);
  write_record(record_path("factors", rs, line, ""), "factors", rs.fingerprint(), line_key(line), body);
}

std::optional<std::size_t> ResultCache::load_factors(const RootSystem& rs, const LineSpec& line) {
  const fs::path file = record_path("factors", rs, line, "");
  auto body = read_record(file, "factors", rs.fingerprint(), line_key(line));
  if (!body) return std::nullopt;
  try {
    for (const std::string& l : *body) {
      std::istringstream in(l);
      int k, t, n;
      if (!(in >> k >> t >> n)) throw CorruptRecord("malformed factor key");
      std::string rest;
      std::getline(in >> std::ws, rest);
      if (parse_series(rest).str() != rest) throw CorruptRecord("non-canonical series");
    }
    return body->size();
  } catch (const std::exception& e) {
    quarantine(file, e.what());
    return std::nullopt;
  }
}

std::vector<CacheRecordInfo> ResultCache::list() const {
  std::vector<CacheRecordInfo> out;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".rec") continue;
    CacheRecordInfo info;
    info.file = entry.path().filename().string();
    info.bytes = entry.file_size();
    std::ifstream in(entry.path());
    std::string l;
    if (std::getline(in, l)) {
      std::istringstream head(l);
      std::string magic;
      head >> magic >> info.version;
    }
    while (std::getline(in, l)) {
      if (l.rfind("kind ", 0) == 0) info.kind = l.substr(5);
      else if (l.rfind("fingerprint ", 0) == 0) info.fingerprint = l.substr(12);
      else if (l.rfind("key ", 0) == 0) {
        info.key = l.substr(4);
        break;
      }
    }
    out.push_back(info);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.file < b.file; });
  return out;
}

std::size_t ResultCache::clear() {
  std::size_t removed = 0;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".rec" || ext == ".tmp")) removed += fs::remove(entry.path());
  }
  const fs::path qdir = dir_ / "quarantine";
  if (fs::exists(qdir)) removed += fs::remove_all(qdir) - 1;
  return removed;
}

}  // namespace l2cert
