#include "l2cert/orbits.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace l2cert {

namespace {

std::vector<int> digits(std::string_view s) {
  std::vector<int> v;
  for (char c : s) v.push_back(c - '0');
  return v;
}

OrbitEntry row(const char* type, const char* label, const char* expr, const char* marking,
               std::vector<int> l1, std::uint64_t wrel, ChamberCounts counts, ExpectedOrder ord) {
  OrbitEntry e;
  e.group_type = type;
  e.label = label;
  e.lambda0_expr = expr;
  e.marking = digits(marking);
  e.lambda1_hint = std::move(l1);
  e.expected_wrel = wrel;
  e.expected_counts = counts;
  e.expected_ord = ord;
  return e;
}

std::vector<int> line(int rank, int node, int value) {
  std::vector<int> v(rank, -1);
  if (node > 0) v[node - 1] = value;
  return v;
}

const std::map<std::string, std::vector<OrbitEntry>>& tables() {
  static const std::map<std::string, std::vector<OrbitEntry>> data = {
      {"E6",
       {
           row("E6", "A2", "w1+w4+w6", "200202", line(6, 2, 4), 72, {44, 1, 0}, {0}),
           row("E6", "A1", "rho-w4", "222022", line(6, 1, 2), 27, {24, 2, 1}, {0}),
           row("E6", "0", "rho", "222222", line(6, 0, 0), 1, {1, 0, 0}, {0}),
       }},
      {"E7",
       {
           row("E7", "D4(a1)", "w4+w7", "0002002", line(7, 3, 4), 2016, {638, 27, 2}, {1}),
           row("E7", "A2+2A1", "w1+w4+w7", "2002002", line(7, 2, 5), 576, {292, 2, 1}, {0}),
           row("E7", "A2", "w1+w4+w6+w7", "2002022", line(7, 1, 7), 126, {90, 1, 0}, {0}),
           row("E7", "2A1", "rho-w4-w6", "2220202", line(7, 1, 4), 126, {115, 3, 1}, {0}),
           row("E7", "A1", "rho-w4", "2220222", line(7, 1, 2), 126, {97, 28, 0}, {0}),
           row("E7", "0", "rho", "2222222", line(7, 0, 0), 1, {1, 0, 0}, {0}),
       }},
      {"E8",
       {
           row("E8", "E8(a7)", "w5", "00002000", line(8, 5, 4), 241920, {18881, 3897, 1329}, {3, true}),
           row("E8", "D4(a1)+A2", "w4+w8", "00020002", line(8, 2, 7), 17280, {3638, 2, 1}, {0}),
           row("E8", "D4(a1)+A1", "w4+w7", "00020020", line(8, 2, 6), 17280, {8902, 603, 22}, {1}),
           row("E8", "D4(a1)", "w4+w7+w8", "00020022", line(8, 7, 8), 6720, {3143, 49, 1}, {1}),
           row("E8", "2A2", "w1+w4+w7", "20020020", line(8, 1, 10), 2160, {1099, 1, 0}, {0}),
           row("E8", "A2+2A1", "w1+w4+w7+w8", "20020022", line(8, 1, 8), 2160, {1647, 13, 4}, {0}),
           row("E8", "A2+A1", "w1+w4+w6+w8", "20020202", line(8, 1, 7), 2160, {1763, 157, 26}, {0}),
           row("E8", "A2", "rho-w2-w3-w5", "20020222", line(8, 8, 13), 240, {195, 1, 0}, {0}),
           row("E8", "2A1", "rho-w4-w6", "22202022", line(8, 8, 8), 240, {229, 2, 0}, {0}),
           row("E8", "A1", "rho-w4", "22202222", line(8, 8, 4), 240, {224, 15, 0}, {0}),
           row("E8", "0", "rho", "22222222", line(8, 0, 0), 1, {1, 0, 0}, {0}),
       }},
      {"F4",
       {
           row("F4", "F4(a3)", "w3", "0020", line(4, 2, 1), 96, {23, 24, 9}, {2}),
           row("F4", "A1+A1s", "w1+w3", "2020", line(4, 1, 2), 24, {15, 2, 1}, {0}),
           row("F4", "A1s", "rho-w2", "2022", line(4, 1, 1), 24, {17, 6, 0}, {0}),
           row("F4", "0", "rho", "2222", line(4, 0, 0), 1, {1, 0, 0}, {0}),
       }},
  };
  return data;
}

std::string canonical(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != '_' && c != ' ') out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return out;
}

}  // namespace

std::string OrbitEntry::marking_string() const {
  std::string s;
  for (int m : marking) s += static_cast<char>('0' + m);
  return s;
}

bool OrbitEntry::is_rho_row() const {
  return std::all_of(marking.begin(), marking.end(), [](int m) { return m == 2; });
}

RationalWeight OrbitEntry::lambda0() const {
  RationalWeight w(static_cast<Eigen::Index>(marking.size()));
  for (std::size_t i = 0; i < marking.size(); ++i) w(static_cast<Eigen::Index>(i)) = Rational(marking[i], 2);
  return w;
}

const std::vector<OrbitEntry>& catalog(std::string_view group_type) {
  static const std::vector<OrbitEntry> empty;
  const auto& t = tables();
  auto it = t.find(canonical(group_type));
  return it == t.end() ? empty : it->second;
}

std::optional<OrbitEntry> find_by_label(std::string_view group_type, std::string_view label) {
  for (const auto& e : catalog(group_type))
    if (canonical(e.label) == canonical(label)) return e;
  return std::nullopt;
}

std::optional<OrbitEntry> find_by_marking(std::string_view group_type, std::string_view marking) {
  std::string m;
  for (char c : marking)
    if (std::isdigit(static_cast<unsigned char>(c))) m.push_back(c);
  for (const auto& e : catalog(group_type))
    if (e.marking_string() == m) return e;
  return std::nullopt;
}

std::vector<int> parse_marking(std::string_view text, int rank) {
  std::vector<int> out;
  const bool separated = text.find(',') != std::string_view::npos;
  std::string token;
  auto flush = [&] {
    if (token.empty()) throw std::invalid_argument("bad marking '" + std::string(text) + "'");
    out.push_back(std::stoi(token));
    token.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '[' || c == ']') continue;
    if (c == ',') {
      flush();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      token.push_back(c);
      if (!separated) flush();
    } else {
      throw std::invalid_argument("bad marking '" + std::string(text) + "'");
    }
  }
  if (separated) flush();
  if (static_cast<int>(out.size()) != rank)
    throw std::invalid_argument("marking '" + std::string(text) + "' has " + std::to_string(out.size()) +
                                " entries, expected " + std::to_string(rank));
  for (int m : out)
    if (m < 0 || m > 2) throw std::invalid_argument("marking entries must be 0, 1 or 2");
  return out;
}

std::vector<std::string> marking_warnings(const std::vector<int>& marking) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < marking.size(); ++i)
    if (marking[i] == 1) out.push_back("marking entry 1 at node " + std::to_string(i + 1) + " (non-even orbit)");
  return out;
}

LineSpec make_line(const RootSystem& rs, int j, const Rational& s) {
  if (j < 0 || j >= rs.rank) throw std::invalid_argument("node index out of range");
  LineSpec line;
  line.j = j;
  line.s = s;
  line.lambda1 = RationalWeight::Constant(rs.rank, Rational(-1));
  line.lambda1(j) = 2 * s - 1;
  line.lambda2 = rs.fundamental_weight(j);
  line.witness = dominant_representative(rs, line.lambda1).second;
  line.coset_count = coset_count(rs, j);
  return line;
}

LineSpec line_from_lambda1(const RootSystem& rs, int j, const RationalWeight& lambda1) {
  if (lambda1.size() != rs.rank) throw std::invalid_argument("lambda_1 has the wrong length");
  if (j < 0 || j >= rs.rank) throw std::invalid_argument("node index out of range");
  for (int i = 0; i < rs.rank; ++i)
    if (i != j && lambda1(i) != -1)
      throw std::invalid_argument("lambda_1 must equal -1 at every node except the deformation node");
  return make_line(rs, j, (lambda1(j) + 1) / 2);
}

LineSpec catalog_line(const RootSystem& rs, const OrbitEntry& entry) {
  if (static_cast<int>(entry.lambda1_hint.size()) != rs.rank) throw std::invalid_argument("catalog row has no line");
  RationalWeight l1(rs.rank);
  int j = rs.rank - 1;
  for (int i = 0; i < rs.rank; ++i) {
    l1(i) = entry.lambda1_hint[static_cast<std::size_t>(i)];
    if (entry.lambda1_hint[static_cast<std::size_t>(i)] != -1) j = i;
  }
  return line_from_lambda1(rs, j, l1);
}

std::vector<LineSpec> line_candidates(const RootSystem& rs, const RationalWeight& lambda0) {
  std::vector<LineSpec> out;
  const RationalWeight rho = rs.rho();
  const Rational target = norm2(rs, lambda0);
  for (int j = 0; j < rs.rank; ++j) {
    const RationalWeight w = rs.fundamental_weight(j);
    // |2 s w - rho|^2 = |lambda0|^2
    const Rational a = 4 * norm2(rs, w);
    const Rational b = -4 * inner_product(rs, w, rho);
    const Rational c = norm2(rs, rho) - target;
    const Rational disc = b * b - 4 * a * c;
    Rational root;
    if (disc < 0 || !rational_sqrt(disc, root)) continue;
    std::vector<Rational> sols{(-b - root) / (2 * a), (-b + root) / (2 * a)};
    if (root == 0) sols.pop_back();
    for (const Rational& s : sols) {
      RationalWeight l1 = RationalWeight::Constant(rs.rank, Rational(-1));
      l1(j) = 2 * s - 1;
      if (dominant_representative(rs, l1).first == lambda0) out.push_back(make_line(rs, j, s));
    }
  }
  return out;
}

LineSpec normalize_to_line(const RootSystem& rs, const RationalWeight& lambda0) {
  if (lambda0.size() != rs.rank) throw std::invalid_argument("lambda_0 has the wrong length");
  for (int i = 0; i < rs.rank; ++i)
    if (lambda0(i) < 0) throw std::invalid_argument("lambda_0 must be dominant");
  if (lambda0 == rs.rho()) return make_line(rs, rs.rank - 1, Rational(0));
  const auto candidates = line_candidates(rs, lambda0);
  if (candidates.empty()) throw std::invalid_argument("no maximal-parabolic line found");
  const auto best = std::min_element(candidates.begin(), candidates.end(), [](const LineSpec& x, const LineSpec& y) {
    if (x.coset_count != y.coset_count) return x.coset_count < y.coset_count;
    if (x.j != y.j) return x.j < y.j;
    return x.s < y.s;
  });
  return *best;
}

std::string catalog_tsv() {
  std::ostringstream out;
  out << "# l2cert orbit catalog\tversion 1\n";
  out << "type\tlabel\tlambda0\tmarking\tlambda1\twrel\tcounts\tord\n";
  for (const char* type : {"E6", "E7", "E8", "F4"})
    for (const auto& e : catalog(type)) {
      out << e.group_type << '\t' << e.label << '\t' << e.lambda0_expr << '\t' << e.marking_string() << '\t' << '[';
      for (std::size_t i = 0; i < e.lambda1_hint.size(); ++i) out << (i ? "," : "") << e.lambda1_hint[i];
      out << "]\t" << (e.expected_wrel ? std::to_string(*e.expected_wrel) : "-") << '\t'
          << (e.expected_counts ? e.expected_counts->str() : "-") << '\t'
          << (e.expected_ord ? e.expected_ord->str() : "-") << '\n';
    }
  return out.str();
}

}  // namespace l2cert
