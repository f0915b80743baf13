#include "l2cert/rootsys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace l2cert {

namespace {

constexpr const char* kSupported = "A_n (n>=1), B_n (n>=2), C_n (n>=2), D_n (n>=4), E6, E7, E8, F4, G2";

std::pair<char, int> parse_label(std::string_view label) {
  std::string s;
  for (char c : label)
    if (c != '_' && c != ' ') s.push_back(c);
  if (s.size() < 2) throw std::invalid_argument("unknown root system type '" + std::string(label) + "'; supported: " + kSupported);
  char series = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  int rank = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("unknown root system type '" + std::string(label) + "'; supported: " + kSupported);
    rank = rank * 10 + (s[i] - '0');
    if (rank > 64) break;
  }
  bool ok = false;
  switch (series) {
    case 'A': ok = rank >= 1 && rank <= 64; break;
    case 'B':
    case 'C': ok = rank >= 2 && rank <= 64; break;
    case 'D': ok = rank >= 4 && rank <= 64; break;
    case 'E': ok = rank >= 6 && rank <= 8; break;
    case 'F': ok = rank == 4; break;
    case 'G': ok = rank == 2; break;
    default: ok = false;
  }
  if (!ok) throw std::invalid_argument("unknown root system type '" + std::string(label) + "'; supported: " + kSupported);
  return {series, rank};
}

/// Weyl group order of an irreducible component identified from its Cartan matrix.
std::uint64_t irreducible_order(const Eigen::MatrixXi& a) {
  const int n = static_cast<int>(a.rows());
  auto fact = [](int m) {
    std::uint64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
  };
  if (n == 1) return 2;
  int min_entry = 0;
  std::vector<int> degree(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && a(i, j) != 0) {
        ++degree[i];
        min_entry = std::min(min_entry, a(i, j));
      }
  if (min_entry == -3) return 12;
  if (min_entry == -2) {
    // B_n / C_n have the double bond at an end; F4 in the middle.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (a(i, j) == -2 && degree[i] == 2 && degree[j] == 2) return 1152;
    return (std::uint64_t{1} << n) * fact(n);
  }
  int branch = -1;
  for (int i = 0; i < n; ++i)
    if (degree[i] == 3) branch = i;
  if (branch < 0) return fact(n + 1);
  std::vector<int> arms;
  for (int nb = 0; nb < n; ++nb) {
    if (nb == branch || a(branch, nb) == 0) continue;
    int len = 1, prev = branch, cur = nb;
    for (;;) {
      int next = -1;
      for (int x = 0; x < n; ++x)
        if (x != cur && x != prev && a(cur, x) != 0) next = x;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return (std::uint64_t{1} << (n - 1)) * fact(n);
  if (arms == std::vector<int>{1, 2, 2}) return 51840;
  if (arms == std::vector<int>{1, 2, 3}) return 2903040;
  if (arms == std::vector<int>{1, 2, 4}) return 696729600;
  throw std::logic_error("unrecognised Dynkin component");
}

std::vector<std::vector<int>> components(const Eigen::MatrixXi& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s}, members;
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int x = 0; x < n; ++x)
        if (x != v && a(v, x) != 0 && comp[x] < 0) {
          comp[x] = comp[s];
          stack.push_back(x);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

Eigen::MatrixXi submatrix(const Eigen::MatrixXi& a, const std::vector<int>& idx) {
  Eigen::MatrixXi s(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) s(r, c) = a(idx[r], idx[c]);
  return s;
}

std::uint64_t order_from_components(const Eigen::MatrixXi& a) {
  std::uint64_t order = 1;
  for (const auto& c : components(a)) order *= irreducible_order(submatrix(a, c));
  return order;
}

RationalMatrix exact_inverse(const Eigen::MatrixXi& a) {
  const int n = static_cast<int>(a.rows());
  RationalMatrix m = a.cast<Rational>();
  RationalMatrix inv = RationalMatrix::Identity(n, n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && m(piv, col) == 0) ++piv;
    if (piv == n) throw std::logic_error("singular Cartan matrix");
    m.row(col).swap(m.row(piv));
    inv.row(col).swap(inv.row(piv));
    const Rational p = m(col, col);
    for (int c = 0; c < n; ++c) {
      m(col, c) /= p;
      inv(col, c) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (int c = 0; c < n; ++c) {
        m(r, c) -= f * m(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x + 0x9e37)) * 1099511628211ull;
    return h;
  }
};

}  // namespace

Eigen::MatrixXi cartan_matrix(char series, int n) {
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = 2;
  auto link = [&](int i, int j) { a(i, j) = a(j, i) = -1; };
  switch (series) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a(n - 1, n - 2) = -2;  // alpha_n short
      break;
    case 'C':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a(n - 2, n - 1) = -2;  // alpha_n long
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'E':
      link(0, 2);
      link(2, 3);
      link(3, 1);
      for (int i = 3; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'F':
      link(0, 1);
      link(2, 3);
      a(1, 2) = -1;  // <alpha_3, alpha_2^vee>
      a(2, 1) = -2;  // <alpha_2, alpha_3^vee>: alpha_1, alpha_2 long
      break;
    case 'G':
      a(0, 1) = -3;  // alpha_1 short
      a(1, 0) = -1;
      break;
    default: throw std::invalid_argument("unknown series");
  }
  return a;
}

RootSystem build_root_system(std::string_view type_label) {
  const auto [series, n] = parse_label(type_label);
  RootSystem rs;
  rs.type_label = std::string(1, series) + std::to_string(n);
  rs.rank = n;
  rs.cartan = cartan_matrix(series, n);
  rs.node_permutation.resize(n);
  std::iota(rs.node_permutation.begin(), rs.node_permutation.end(), 0);

  // Symmetriser: d_i A(i,j) = d_j A(j,i), propagated along the (connected) diagram.
  std::vector<Rational> d(n, Rational(0));
  d[0] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && rs.cartan(i, j) != 0 && d[i] != 0 && d[j] == 0) {
          d[j] = d[i] * Rational(rs.cartan(i, j)) / Rational(rs.cartan(j, i));
          changed = true;
        }
  }
  const Rational dmin = *std::min_element(d.begin(), d.end());
  for (auto& x : d) x /= dmin;
  rs.half_norms = d;

  // Positive roots by closure of the simple roots under simple reflections.
  std::vector<std::vector<int>> roots;
  std::unordered_map<std::vector<int>, int, VecHash> seen;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    seen.emplace(e, static_cast<int>(roots.size()));
    roots.push_back(e);
  }
  for (std::size_t head = 0; head < roots.size(); ++head) {
    for (int i = 0; i < n; ++i) {
      std::vector<int> beta = roots[head];
      int c = 0;
      for (int k = 0; k < n; ++k) c += rs.cartan(i, k) * beta[k];
      if (c == 0) continue;
      beta[i] -= c;
      if (std::any_of(beta.begin(), beta.end(), [](int x) { return x < 0; })) continue;
      if (seen.emplace(beta, static_cast<int>(roots.size())).second) roots.push_back(beta);
    }
  }
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
    const int hx = std::accumulate(x.begin(), x.end(), 0), hy = std::accumulate(y.begin(), y.end(), 0);
    if (hx != hy) return hx < hy;
    return x > y;
  });
  const int np = static_cast<int>(roots.size());
  rs.positive_roots.resize(n, np);
  rs.positive_coroots.resize(n, np);
  rs.coroot_heights.resize(np);
  for (int r = 0; r < np; ++r) {
    Rational len(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) len += Rational(roots[r][i] * roots[r][j] * rs.cartan(i, j)) * d[i];
    const Rational half = len / 2;
    int height = 0;
    for (int i = 0; i < n; ++i) {
      rs.positive_roots(i, r) = roots[r][i];
      const Rational ni = Rational(roots[r][i]) * d[i] / half;
      rs.positive_coroots(i, r) = static_cast<int>(to_int64(ni));
      height += rs.positive_coroots(i, r);
    }
    rs.coroot_heights[r] = height;
  }
  rs.inverse_cartan = exact_inverse(rs.cartan);
  return rs;
}

RationalWeight RootSystem::fundamental_weight(int i) const {
  RationalWeight w = RationalWeight::Constant(rank, Rational(0));
  w(i) = 1;
  return w;
}

std::uint64_t RootSystem::weyl_order() const {
  // Product of fundamental degrees.
  const char series = type_label[0];
  const int n = rank;
  std::vector<std::uint64_t> deg;
  switch (series) {
    case 'A':
      for (int i = 2; i <= n + 1; ++i) deg.push_back(i);
      break;
    case 'B':
    case 'C':
      for (int i = 1; i <= n; ++i) deg.push_back(2 * i);
      break;
    case 'D':
      for (int i = 1; i < n; ++i) deg.push_back(2 * i);
      deg.push_back(n);
      break;
    case 'E':
      if (n == 6) deg = {2, 5, 6, 8, 9, 12};
      if (n == 7) deg = {2, 6, 8, 10, 12, 14, 18};
      if (n == 8) deg = {2, 8, 12, 14, 18, 20, 24, 30};
      break;
    case 'F': deg = {2, 6, 8, 12}; break;
    case 'G': deg = {2, 6}; break;
  }
  std::uint64_t order = 1;
  for (auto x : deg) order *= x;
  return order;
}

std::string RootSystem::fingerprint() const {
  std::ostringstream text;
  text << type_label << ':';
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) text << cartan(i, j) << ',';
  text << "perm:";
  for (int p : node_permutation) text << p << ',';
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text.str()) h = (h ^ c) * 1099511628211ull;
  std::ostringstream out;
  out << type_label << '-' << std::hex << h;
  return out.str();
}

int RootSystem::root_index(const Eigen::VectorXi& root_coords) const {
  for (int r = 0; r < num_positive_roots(); ++r)
    if (positive_roots.col(r) == root_coords) return r;
  return -1;
}

const char* to_string(Chamber c) {
  switch (c) {
    case Chamber::strict_interior: return "strict_interior";
    case Chamber::boundary: return "boundary";
    case Chamber::outside: return "outside";
  }
  return "?";
}

RationalWeight root_coordinates(const RootSystem& rs, const RationalWeight& w) { return rs.inverse_cartan * w; }

Rational inner_product(const RootSystem& rs, const RationalWeight& a, const RationalWeight& b) {
  // (lambda, mu) = sum_i b_i (alpha_i, mu) = sum_i b_i d_i <mu, alpha_i^vee>.
  const RationalWeight ra = root_coordinates(rs, a);
  Rational acc(0);
  for (int i = 0; i < rs.rank; ++i) acc += ra(i) * rs.half_norms[i] * b(i);
  return acc;
}

IntWeight to_int_weight(const RationalWeight& w) {
  IntWeight out(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!is_integer(w(i))) throw std::domain_error("non-integral deformation line");
    out(i) = static_cast<int>(to_int64(w(i)));
  }
  return out;
}

std::string format_weight(const RationalWeight& w) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += to_string(w(i));
  }
  return s + "]";
}

std::string format_weight(const IntWeight& w) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w(i));
  }
  return s + "]";
}

std::string format_word(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(w[i] + 1);
  }
  return s;
}

// ---------------------------------------------------------------------------

Word CosetTable::word(std::size_t idx) const {
  Word w;
  for (int cur = static_cast<int>(idx); parent_[cur] >= 0; cur = parent_[cur]) w.push_back(letter_[cur]);
  return w;
}

std::vector<InversionPair> CosetTable::inversions(std::size_t idx) const {
  std::vector<InversionPair> inv;
  for (int cur = static_cast<int>(idx); parent_[cur] >= 0; cur = parent_[cur]) inv.push_back(added_[cur]);
  return inv;
}

CosetElement CosetTable::element(std::size_t idx) const {
  return CosetElement{word(idx), image_l1(idx), image_l2(idx), inversions(idx)};
}

void CosetTable::reserve(std::size_t n) {
  parent_.reserve(n);
  letter_.reserve(n);
  length_.reserve(n);
  added_.reserve(n);
}

void CosetTable::push(int parent, int letter, int length, InversionPair added, const IntWeight& img1,
                      const IntWeight& img2) {
  parent_.push_back(parent);
  letter_.push_back(static_cast<std::int8_t>(letter));
  length_.push_back(length);
  added_.push_back(added);
  pending1_.push_back(img1);
  pending2_.push_back(img2);
}

void CosetTable::finalize_images(Eigen::MatrixXi img1, Eigen::MatrixXi img2) {
  if (img1.cols() == 0 && !pending1_.empty() && pending1_.front().size() == rank_) {
    img1.resize(rank_, static_cast<Eigen::Index>(pending1_.size()));
    img2.resize(rank_, static_cast<Eigen::Index>(pending2_.size()));
    for (std::size_t c = 0; c < pending1_.size(); ++c) {
      img1.col(static_cast<Eigen::Index>(c)) = pending1_[c];
      img2.col(static_cast<Eigen::Index>(c)) = pending2_[c];
    }
  }
  images_l1_ = std::move(img1);
  images_l2_ = std::move(img2);
  pending1_.clear();
  pending2_.clear();
  pending1_.shrink_to_fit();
  pending2_.shrink_to_fit();
}

CosetTable enumerate_wrel(const RootSystem& rs, int j, const RationalWeight& l1, const RationalWeight& l2) {
  const int n = rs.rank;
  if (j < 0 || j >= n) throw std::invalid_argument("node index out of range");
  if (l2 != rs.fundamental_weight(j)) throw std::invalid_argument("lambda_2 must be the fundamental weight omega_j");
  const IntWeight lam1 = to_int_weight(l1);

  // Level-by-level traversal of the orbit W.omega_j; an orbit point v at level L
  // reaches level L+1 through s_i whenever v_i > 0.
  struct Node {
    std::vector<int> orbit;
    int parent;
    int letter;
    int level;
  };
  std::vector<Node> nodes;
  std::vector<IntWeight> img1;
  {
    std::vector<int> start(n, 0);
    start[j] = 1;
    nodes.push_back({start, -1, -1, 0});
    img1.push_back(lam1);
  }
  std::size_t level_begin = 0;
  for (int level = 0;; ++level) {
    const std::size_t level_end = nodes.size();
    if (level_begin == level_end) break;
    std::map<std::vector<int>, bool> next;
    for (std::size_t idx = level_begin; idx < level_end; ++idx) {
      const auto& v = nodes[idx].orbit;
      for (int i = 0; i < n; ++i) {
        if (v[i] <= 0) continue;
        std::vector<int> w = v;
        const int c = v[i];
        for (int r = 0; r < n; ++r) w[r] -= c * rs.cartan(r, i);
        next.emplace(std::move(w), true);
      }
    }
    // Parent through the smallest left descent gives the lexicographically least reduced word.
    std::unordered_map<std::vector<int>, int, VecHash> index_of;
    for (std::size_t idx = level_begin; idx < level_end; ++idx) index_of.emplace(nodes[idx].orbit, static_cast<int>(idx));
    for (auto& [w, unused] : next) {
      int first = -1;
      for (int i = 0; i < n; ++i)
        if (w[i] < 0) {
          first = i;
          break;
        }
      std::vector<int> up = w;
      const int c = w[first];
      for (int r = 0; r < n; ++r) up[r] -= c * rs.cartan(r, first);
      const int parent = index_of.at(up);
      nodes.push_back({w, parent, first, level + 1});
      IntWeight im = img1[parent];
      simple_reflect_inplace(rs, first, im);
      img1.push_back(std::move(im));
    }
    level_begin = level_end;
  }

  // Canonical order: reduced words compared lexicographically.
  const std::size_t count = nodes.size();
  std::vector<std::string> words(count);
  for (std::size_t idx = 1; idx < count; ++idx)
    words[idx] = static_cast<char>('a' + nodes[idx].letter) + words[nodes[idx].parent];
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return words[a] < words[b]; });
  std::vector<int> rank_of(count);
  for (std::size_t r = 0; r < count; ++r) rank_of[order[r]] = static_cast<int>(r);

  CosetTable table(n, j, lam1);
  table.reserve(count);
  Eigen::MatrixXi images1(n, static_cast<Eigen::Index>(count)), images2(n, static_cast<Eigen::Index>(count));
  for (std::size_t r = 0; r < count; ++r) {
    const Node& node = nodes[order[r]];
    InversionPair added{};
    int parent = -1;
    if (node.parent >= 0) {
      parent = rank_of[node.parent];
      // New inversion u^{-1} alpha_i of w = s_i u pairs as <u lambda, alpha_i^vee>.
      added.k = img1[node.parent](node.letter);
      added.t = nodes[node.parent].orbit[node.letter];
      if (added.t < 1) throw std::logic_error("inversion with t < 1 in W_rel");
    }
    table.push(parent, node.letter, node.level, added, IntWeight(), IntWeight());
    images1.col(static_cast<Eigen::Index>(r)) = img1[order[r]];
    for (int i = 0; i < n; ++i) images2(i, static_cast<Eigen::Index>(r)) = node.orbit[i];
  }
  table.finalize_images(std::move(images1), std::move(images2));
  return table;
}

std::vector<InversionPair> inversions_by_action(const RootSystem& rs, const Word& word, const IntWeight& l1,
                                                int j) {
  std::vector<InversionPair> out;
  const int n = rs.rank;
  for (int r = 0; r < rs.num_positive_roots(); ++r) {
    Eigen::VectorXi beta = rs.positive_roots.col(r);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      const int i = *it;
      int c = 0;
      for (int k = 0; k < n; ++k) c += rs.cartan(i, k) * beta(k);
      beta(i) -= c;
    }
    if (beta.maxCoeff() <= 0) {
      InversionPair p;
      p.k = pair(rs, l1, r);
      p.t = rs.positive_coroots(j, r);
      out.push_back(p);
    }
  }
  return out;
}

std::uint64_t weyl_order_by_enumeration(const Eigen::MatrixXi& cartan) {
  std::uint64_t total = 1;
  for (const auto& comp : components(cartan)) {
    const Eigen::MatrixXi a = submatrix(cartan, comp);
    const int n = static_cast<int>(a.rows());
    // Orbit of the regular weight rho; |W rho| = |W|. Duplicates only occur within a level.
    std::vector<std::vector<int>> level{std::vector<int>(n, 1)};
    std::uint64_t count = 0;
    while (!level.empty()) {
      count += level.size();
      std::vector<std::vector<int>> next;
      for (const auto& v : level)
        for (int i = 0; i < n; ++i) {
          if (v[i] <= 0) continue;
          std::vector<int> w = v;
          const int c = v[i];
          for (int r = 0; r < n; ++r) w[r] -= c * a(r, i);
          next.push_back(std::move(w));
        }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      level = std::move(next);
    }
    total *= count;
  }
  return total;
}

Eigen::MatrixXi levi_cartan(const RootSystem& rs, int j) {
  std::vector<int> idx;
  for (int i = 0; i < rs.rank; ++i)
    if (i != j) idx.push_back(i);
  return submatrix(rs.cartan, idx);
}

std::uint64_t coset_count(const RootSystem& rs, int j) {
  const Eigen::MatrixXi levi = levi_cartan(rs, j);
  const std::uint64_t levi_order = levi.rows() == 0 ? 1 : order_from_components(levi);
  return rs.weyl_order() / levi_order;
}

}  // namespace l2cert
