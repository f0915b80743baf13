#include "l2cert/constantterm.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "l2cert/parallel.hpp"

namespace l2cert {

namespace {

std::vector<int> key_of(const IntWeight& w) { return std::vector<int>(w.data(), w.data() + w.size()); }

Rational power(const Rational& x, int n) {
  Rational r(1);
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

Poly h_form(const IntWeight& h) {
  std::vector<Poly::Term> terms;
  for (int i = 0; i < h.size(); ++i)
    if (h(i) != 0) terms.emplace_back(Monomial(Symbol::H(i)), Rational(h(i)));
  return Poly::from_terms(std::move(terms));
}

/// sum_w exp(eps <h_w, H>) through eps^bound.
TruncatedSeries member_sum(const std::vector<IntWeight>& members, int bound) {
  std::vector<Poly> c(static_cast<std::size_t>(bound + 1));
  for (const IntWeight& h : members) {
    const Poly x = h_form(h);
    Poly pw(1);
    Rational inv_fact(1);
    for (int e = 0; e <= bound; ++e) {
      if (e > 0) {
        pw = pw * x;
        inv_fact /= e;
      }
      c[static_cast<std::size_t>(e)] += pw * inv_fact;
    }
  }
  return TruncatedSeries(0, bound, std::move(c));
}

using Vec = std::vector<Rational>;

/// Row echelon basis; row i vanishes at the pivots of rows before it.
class Span {
 public:
  explicit Span(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == dim_; }
  const std::vector<Vec>& basis() const { return rows_; }

  bool insert(Vec v) {
    if (full()) return false;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& c = v[pivots_[r]];
      if (c == 0) continue;
      const Rational f = c;
      const Vec& row = rows_[r];
      for (std::size_t i = pivots_[r]; i < dim_; ++i)
        if (row[i] != 0) v[i] -= f * row[i];
    }
    std::size_t piv = 0;
    while (piv < dim_ && v[piv] == 0) ++piv;
    if (piv == dim_) return false;
    const Rational inv = Rational(1) / v[piv];
    for (std::size_t i = piv; i < dim_; ++i)
      if (v[i] != 0) v[i] *= inv;
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

Vec hadamard(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) out[i] = a[i] * b[i];
  return out;
}

/// Span of the degree-m monomials restricted to the given points, m = 0, 1, ...
class RestrictionTower {
 public:
  RestrictionTower() = default;
  explicit RestrictionTower(std::vector<Vec> coordinates, std::size_t points)
      : coords_(std::move(coordinates)), points_(points) {
    Span one(points_);
    one.insert(Vec(points_, Rational(1)));
    levels_.push_back(std::move(one));
  }

  const Span& level(int m) {
    while (static_cast<int>(levels_.size()) <= m) {
      const Span& prev = levels_.back();
      Span next(points_);
      for (const Vec& v : prev.basis()) {
        for (const Vec& x : coords_) {
          next.insert(hadamard(v, x));
          if (next.full()) break;
        }
        if (next.full()) break;
      }
      levels_.push_back(std::move(next));
    }
    return levels_[static_cast<std::size_t>(m)];
  }

 private:
  std::vector<Vec> coords_;
  std::size_t points_ = 0;
  std::vector<Span> levels_;
};

/// Multiplicity vectors m_1..m_r with sum n m_n = r.
void partitions(int r, int largest, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (r == 0) {
    out.push_back(current);
    return;
  }
  for (int n = std::min(r, largest); n >= 1; --n) {
    ++current[static_cast<std::size_t>(n)];
    partitions(r - n, n, current, out);
    --current[static_cast<std::size_t>(n)];
  }
}

const std::vector<std::vector<int>>& partitions_of(int r) {
  static std::mutex mutex;
  static std::map<int, std::vector<std::vector<int>>> memo;
  std::lock_guard lock(mutex);
  auto it = memo.find(r);
  if (it == memo.end()) {
    std::vector<std::vector<int>> out;
    std::vector<int> current(static_cast<std::size_t>(r + 1), 0);
    partitions(r, r, current, out);
    it = memo.emplace(r, std::move(out)).first;
  }
  return it->second;
}

/// True iff sum_i rho_i prod_f u_f(i) = 0 for all u_f in the given spans.
bool orthogonal(const Vec& rho, std::vector<const Span*> factors) {
  for (const Span* f : factors)
    if (f->rank() == 0) return true;
  std::stable_sort(factors.begin(), factors.end(), [](const Span* a, const Span* b) { return a->rank() < b->rank(); });
  Span current(rho.size());
  if (!current.insert(rho)) return true;
  for (std::size_t f = 0; f + 1 < factors.size(); ++f) {
    Span next(rho.size());
    for (const Vec& t : current.basis()) {
      for (const Vec& u : factors[f]->basis()) {
        next.insert(hadamard(t, u));
        if (next.full()) break;
      }
      if (next.full()) break;
    }
    if (next.rank() == 0) return true;
    current = std::move(next);
  }
  const Span& last = *factors.back();
  for (const Vec& t : current.basis())
    for (const Vec& v : last.basis()) {
      Rational dot(0);
      for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] != 0 && v[i] != 0) dot += t[i] * v[i];
      if (dot != 0) return false;
    }
  return true;
}

}  // namespace

Poly class_prefactor(const BlockClass& c) {
  Rational scalar(1);
  Monomial unit;
  for (const InversionPair& inv : c.multiset) {
    const FactorModel m = factor_model({inv.k, inv.t});
    scalar *= m.scalar;
    unit = unit * m.unit;
  }
  return Poly(unit, scalar);
}

std::vector<MuBlock> build_blocks(const RootSystem& rs, const CosetTable& table, bool with_classes) {
  struct Pending {
    MuBlock block;
    std::map<std::vector<InversionPair>, BlockClass> classes;
  };
  std::map<std::vector<int>, Pending> by_mu;
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    std::vector<InversionPair> inv = table.inversions(idx);
    int p = 0;
    for (const InversionPair& x : inv) {
      if (x.t < 1) throw std::logic_error("inversion with t < 1 in W_rel");
      if (x.k == -1) ++p;
      if (x.k == 1) --p;
    }
    const IntWeight mu = table.image_l1(idx);
    auto [it, fresh] = by_mu.try_emplace(key_of(mu));
    Pending& pend = it->second;
    if (fresh) {
      pend.block.mu = mu;
      pend.block.p = p;
      pend.block.classification = langlands_classify(rs, mu);
    } else if (pend.block.p != p) {
      throw std::logic_error("epsilon-power invariance violated");
    }
    ++pend.block.cosets;
    if (with_classes) {
      std::sort(inv.begin(), inv.end());
      BlockClass& c = pend.classes[inv];
      if (c.members.empty()) c.multiset = inv;
      c.members.emplace_back(table.image_l2(idx));
    }
  }
  std::vector<MuBlock> out;
  out.reserve(by_mu.size());
  for (auto& [key, pend] : by_mu) {
    for (auto& [ms, c] : pend.classes) pend.block.classes.push_back(std::move(c));
    out.push_back(std::move(pend.block));
  }
  return out;
}

ChamberCounts count_blocks(const std::vector<MuBlock>& blocks) {
  ChamberCounts c;
  for (const MuBlock& b : blocks) {
    if (b.classification == Chamber::strict_interior)
      ++c.strict;
    else
      ++c.non_strict;
    if (b.classification == Chamber::boundary) ++c.boundary;
  }
  return c;
}

TruncatedSeries block_series(const MuBlock& block, int max_order) {
  if (max_order < block.p) return TruncatedSeries::zero(max_order);
  const int N = max_order - block.p;
  TruncatedSeries total = TruncatedSeries::zero(max_order);
  for (const BlockClass& c : block.classes) {
    std::vector<Poly> ex(static_cast<std::size_t>(N));
    for (const InversionPair& inv : c.multiset) {
      const FactorModel m = factor_model({inv.k, inv.t});
      for (int n = 1; n <= N; ++n) ex[static_cast<std::size_t>(n - 1)] += m.exponent(n, FactorForm::compressed);
    }
    const TruncatedSeries e = series_exp(TruncatedSeries(1, N, std::move(ex)));
    const TruncatedSeries term = series_mul(e, member_sum(c.members, N));
    total = series_add(total, term.scaled(class_prefactor(c)).shifted(block.p));
  }
  return total;
}

// ---------------------------------------------------------------------------

struct BlockCoefficientTester::Impl {
  struct Group {
    std::vector<std::size_t> classes;
    Vec rho;
    /// Per generator family n: restriction spaces on the class points.
    std::map<int, RestrictionTower> towers;
    /// H restriction spaces on (class, w lambda_2) points, then summed per class.
    RestrictionTower member_tower;
    std::vector<std::size_t> member_class;  ///< point -> position in classes
    std::vector<Rational> member_mult;
    std::map<int, Span> h_levels;
  };

  const MuBlock* block;
  std::vector<Group> groups;
  /// Per class: (k, t) -> multiplicity.
  std::vector<std::map<std::pair<int, int>, int>> counts;

  explicit Impl(const MuBlock& b) : block(&b) {
    std::map<Monomial, std::size_t> group_of;
    for (std::size_t c = 0; c < b.classes.size(); ++c) {
      std::map<std::pair<int, int>, int> cnt;
      for (const InversionPair& inv : b.classes[c].multiset) ++cnt[{inv.k, inv.t}];
      counts.push_back(std::move(cnt));
      const Poly pre = class_prefactor(b.classes[c]);
      const auto& [unit, scalar] = pre.terms().front();
      auto [it, fresh] = group_of.try_emplace(unit, groups.size());
      if (fresh) groups.emplace_back();
      Group& g = groups[it->second];
      g.classes.push_back(c);
      g.rho.push_back(scalar);
    }
    for (Group& g : groups) {
      std::vector<IntWeight> pts;
      for (std::size_t pos = 0; pos < g.classes.size(); ++pos) {
        std::map<std::vector<int>, long> distinct;
        for (const IntWeight& h : b.classes[g.classes[pos]].members) ++distinct[key_of(h)];
        for (const auto& [h, m] : distinct) {
          pts.push_back(Eigen::Map<const IntWeight>(h.data(), static_cast<Eigen::Index>(h.size())));
          g.member_class.push_back(pos);
          g.member_mult.emplace_back(m);
        }
      }
      std::vector<Vec> coords;
      const int rank = b.mu.size();
      for (int i = 0; i < rank; ++i) {
        Vec x(pts.size());
        bool any = false;
        for (std::size_t q = 0; q < pts.size(); ++q) {
          x[q] = pts[q](i);
          any = any || pts[q](i) != 0;
        }
        if (any) coords.push_back(std::move(x));
      }
      g.member_tower = RestrictionTower(std::move(coords), pts.size());
    }
  }

  /// Coordinates of the eps^n exponent at each class of the group, one vector
  /// per generator, with the common 1/n! dropped.
  std::vector<Vec> family_coordinates(const Group& g, int n) const {
    std::map<int, Vec> by_generator;  // |k| >= 2 -> D, 0 -> S(0,n), 1 -> G
    const std::size_t P = g.classes.size();
    for (std::size_t pos = 0; pos < P; ++pos) {
      for (const auto& [kt, mult] : counts[g.classes[pos]]) {
        const auto [k, t] = kt;
        Rational v = power(Rational(t), n) * mult;
        int gen;
        if (k == 0) {
          if (n % 2 == 0) continue;
          gen = 0;
          v *= 2;
        } else if (k == 1 || k == -1) {
          gen = 1;
          if (k == 1 && n % 2 == 0) v = -v;
        } else {
          gen = std::abs(k);
          if (k < 0 && n % 2 == 0) v = -v;
        }
        auto [it, fresh] = by_generator.try_emplace(gen, Vec(P));
        it->second[pos] += v;
      }
    }
    std::vector<Vec> out;
    for (auto& [gen, v] : by_generator)
      if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; })) out.push_back(std::move(v));
    return out;
  }

  const Span& family_level(Group& g, int n, int m) {
    auto it = g.towers.find(n);
    if (it == g.towers.end()) it = g.towers.emplace(n, RestrictionTower(family_coordinates(g, n), g.classes.size())).first;
    return it->second.level(m);
  }

  const Span& h_level(Group& g, int b) {
    auto it = g.h_levels.find(b);
    if (it != g.h_levels.end()) return it->second;
    const Span& members = g.member_tower.level(b);
    Span agg(g.classes.size());
    for (const Vec& v : members.basis()) {
      Vec a(g.classes.size());
      for (std::size_t q = 0; q < v.size(); ++q)
        if (v[q] != 0) a[g.member_class[q]] += g.member_mult[q] * v[q];
      agg.insert(std::move(a));
      if (agg.full()) break;
    }
    return g.h_levels.emplace(b, std::move(agg)).first->second;
  }

  CoefficientTest test(int order, bool stop_at_nonzero) {
    CoefficientTest out;
    const int r = order - block->p;
    if (r < 0) return out;
    for (Group& g : groups) {
      // H-carrying components first so the flag settles early.
      for (int step = 0; step <= r; ++step) {
        const int b = step < r ? step + 1 : 0;
        if (stop_at_nonzero && out.nonzero && b == 0) continue;
        for (const std::vector<int>& mult : partitions_of(r - b)) {
          std::vector<const Span*> factors{&h_level(g, b)};
          for (std::size_t n = 1; n < mult.size(); ++n)
            if (mult[n] > 0) factors.push_back(&family_level(g, static_cast<int>(n), mult[n]));
          ++out.components;
          if (orthogonal(g.rho, factors)) continue;
          out.nonzero = true;
          if (b > 0) out.h_dependent = true;
          if (stop_at_nonzero && out.h_dependent) return out;
          if (stop_at_nonzero) break;
        }
      }
    }
    return out;
  }
};

BlockCoefficientTester::BlockCoefficientTester(const MuBlock& block) : impl_(new Impl(block)) {}
BlockCoefficientTester::~BlockCoefficientTester() { delete impl_; }
CoefficientTest BlockCoefficientTester::test(int order, bool stop_at_nonzero) {
  return impl_->test(order, stop_at_nonzero);
}

// ---------------------------------------------------------------------------

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::l2_certified:
      return "L2_certified";
    case Verdict::not_l2:
      return "not_L2";
    case Verdict::undetermined_at_cap:
      return "undetermined_at_cap";
  }
  return "?";
}

std::string OrderValue::str() const {
  if (!known) return "?";
  return upper_bound ? "<=" + std::to_string(value) : std::to_string(value);
}

namespace {

BlockResult summarize(const MuBlock& b) {
  BlockResult r;
  r.mu = b.mu;
  r.classification = b.classification;
  r.p = b.p;
  r.cosets = b.cosets;
  r.classes = b.classes.size();
  r.proven_zero_through = b.p - 1;
  return r;
}

void report_progress(const LineAnalysis& ctx, const std::string& msg) {
  if (ctx.progress) ctx.progress(msg);
}

void exact_mode(const LineAnalysis& ctx, const std::vector<MuBlock>& blocks, VerdictReport& rep) {
  std::vector<std::unique_ptr<BlockCoefficientTester>> testers(blocks.size());
  std::vector<BlockResult> results;
  for (const MuBlock& b : blocks) results.push_back(summarize(b));
  for (int level = rep.min_p; level <= ctx.max_order; ++level) {
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (blocks[i].p <= level) todo.push_back(i);
    std::vector<CoefficientTest> tests(todo.size());
    parallel_for(todo.size(), ctx.workers, [&](std::size_t q) {
      const std::size_t i = todo[q];
      if (!testers[i]) testers[i] = std::make_unique<BlockCoefficientTester>(blocks[i]);
      tests[q] = testers[i]->test(level, true);
    });
    bool any = false, all_strict = true;
    for (std::size_t q = 0; q < todo.size(); ++q) {
      BlockResult& r = results[todo[q]];
      rep.coefficient_tests += tests[q].components;
      if (tests[q].nonzero) {
        any = true;
        r.order = level;
        r.h_dependent = tests[q].h_dependent;
        if (r.classification != Chamber::strict_interior) all_strict = false;
      } else {
        r.proven_zero_through = level;
      }
    }
    report_progress(ctx, "order " + std::to_string(level) + ": " + std::to_string(todo.size()) + " blocks tested");
    if (!any) continue;
    rep.ord = {level, false, true};
    rep.verdict = all_strict ? Verdict::l2_certified : Verdict::not_l2;
    bool some = false, every = true;
    for (std::size_t q = 0; q < todo.size(); ++q) {
      const BlockResult& r = results[todo[q]];
      if (r.order) rep.leading.push_back(r);
      if (r.classification == Chamber::strict_interior) {
        if (r.order) {
          some = some || r.h_dependent;
          every = every && r.h_dependent;
        } else if (r.p < level) {
          ++rep.strict_proven;
        }
      } else if (!r.order) {
        ++rep.nonstrict_proven;
      }
    }
    rep.leading_h_dependent = some;
    rep.all_leading_h_dependent = every && some;
    return;
  }
  rep.verdict = Verdict::undetermined_at_cap;
  for (const BlockResult& r : results)
    if (r.p <= ctx.max_order) {
      if (r.classification == Chamber::strict_interior)
        ++rep.strict_proven;
      else
        ++rep.nonstrict_proven;
    }
}

void bound_mode(const LineAnalysis& ctx, const std::vector<MuBlock>& blocks, VerdictReport& rep) {
  const int m = *ctx.bound_order;
  std::vector<std::size_t> nonstrict, strict;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].p > m) continue;
    (blocks[i].classification == Chamber::strict_interior ? strict : nonstrict).push_back(i);
  }
  std::vector<int> failed(nonstrict.size(), 0);
  std::vector<std::size_t> components(nonstrict.size(), 0);
  parallel_for(nonstrict.size(), ctx.workers, [&](std::size_t q) {
    const MuBlock& b = blocks[nonstrict[q]];
    BlockCoefficientTester tester(b);
    for (int level = b.p; level <= m; ++level) {
      const CoefficientTest t = tester.test(level, true);
      components[q] += t.components;
      if (t.nonzero) {
        failed[q] = 1;
        return;
      }
    }
  });
  for (std::size_t q = 0; q < nonstrict.size(); ++q) rep.coefficient_tests += components[q];
  report_progress(ctx, "bound " + std::to_string(m) + ": " + std::to_string(nonstrict.size()) +
                           " non-strict blocks examined");
  if (std::find(failed.begin(), failed.end(), 1) != failed.end()) {
    rep.verdict = Verdict::undetermined_at_cap;
    return;
  }
  rep.nonstrict_proven = nonstrict.size();
  // Strict witnesses in fixed-size chunks so the report does not depend on the
  // worker count; scanning continues until some witness depends on H.
  constexpr std::size_t kChunk = 64;
  for (std::size_t start = 0; start < strict.size(); start += kChunk) {
    const std::size_t len = std::min(kChunk, strict.size() - start);
    std::vector<CoefficientTest> tests(len);
    parallel_for(len, ctx.workers, [&](std::size_t q) {
      BlockCoefficientTester tester(blocks[strict[start + q]]);
      tests[q] = tester.test(m, true);
    });
    for (std::size_t q = 0; q < len; ++q) {
      rep.coefficient_tests += tests[q].components;
      if (!tests[q].nonzero) continue;
      BlockResult r = summarize(blocks[strict[start + q]]);
      r.order = m;
      r.h_dependent = tests[q].h_dependent;
      rep.leading.push_back(r);
    }
    report_progress(ctx, "bound " + std::to_string(m) + ": " + std::to_string(start + len) + " of " +
                             std::to_string(strict.size()) + " strict blocks examined");
    rep.leading_h_dependent = std::any_of(rep.leading.begin(), rep.leading.end(),
                                          [](const BlockResult& r) { return r.h_dependent; });
    if (rep.leading_h_dependent) break;
  }
  if (!rep.leading.empty()) {
    rep.ord = {m, true, true};
    rep.verdict = Verdict::l2_certified;
    rep.all_leading_h_dependent = std::all_of(rep.leading.begin(), rep.leading.end(),
                                              [](const BlockResult& r) { return r.h_dependent; });
    return;
  }
  rep.verdict = Verdict::undetermined_at_cap;
}

}  // namespace

VerdictReport analyze(const LineAnalysis& ctx) {
  if (!ctx.rs) throw std::invalid_argument("analysis without a root system");
  const CosetTable table = enumerate_wrel(*ctx.rs, ctx.line.j, ctx.line.lambda1, ctx.line.lambda2);
  return analyze(ctx, table);
}

VerdictReport analyze(const LineAnalysis& ctx, const CosetTable& table) {
  const RootSystem& rs = *ctx.rs;
  VerdictReport rep;
  rep.group_type = rs.type_label;
  rep.j = ctx.line.j;
  rep.s = ctx.line.s;
  rep.lambda1 = to_int_weight(ctx.line.lambda1);
  rep.wrel_count = table.size();
  rep.max_order = ctx.bound_order ? *ctx.bound_order : ctx.max_order;
  rep.geometry_only = ctx.geometry_only;
  const std::vector<MuBlock> blocks = build_blocks(rs, table, !ctx.geometry_only);
  rep.distinct_mu = blocks.size();
  rep.counts = count_blocks(blocks);
  rep.min_p = blocks.empty() ? 0 : blocks.front().p;
  for (const MuBlock& b : blocks) rep.min_p = std::min(rep.min_p, b.p);
  report_progress(ctx, std::to_string(table.size()) + " cosets, " + std::to_string(blocks.size()) + " blocks");
  if (ctx.geometry_only) return rep;
  if (ctx.bound_order)
    bound_mode(ctx, blocks, rep);
  else
    exact_mode(ctx, blocks, rep);
  return rep;
}

// ---------------------------------------------------------------------------

std::map<std::vector<int>, TruncatedSeries> brute_force_oracle(const RootSystem& rs, const LineSpec& line,
                                                              int max_order) {
  if (rs.weyl_order() > 10000) throw std::invalid_argument("brute-force oracle limited to |W| <= 10000");
  const IntWeight l1 = to_int_weight(line.lambda1);
  const IntWeight l2 = to_int_weight(line.lambda2);
  // W as the orbit of the regular weight rho; each orbit point carries one reduced word.
  std::map<std::vector<int>, Word> seen;
  std::vector<std::pair<IntWeight, Word>> frontier{{IntWeight::Ones(rs.rank), Word{}}};
  seen.emplace(key_of(frontier.front().first), Word{});
  while (!frontier.empty()) {
    std::vector<std::pair<IntWeight, Word>> next;
    for (const auto& [w, word] : frontier)
      for (int i = 0; i < rs.rank; ++i) {
        if (w(i) <= 0) continue;
        IntWeight v = simple_reflect(rs, i, w);
        Word longer{i};
        longer.insert(longer.end(), word.begin(), word.end());
        if (seen.emplace(key_of(v), longer).second) next.emplace_back(v, longer);
      }
    frontier = std::move(next);
  }
  std::map<std::vector<int>, TruncatedSeries> out;
  for (const auto& [key, word] : seen) {
    const std::vector<InversionPair> inv = inversions_by_action(rs, word, l1, line.j);
    if (std::any_of(inv.begin(), inv.end(), [](const InversionPair& x) { return x.k == -1 && x.t == 0; })) continue;
    if (std::any_of(inv.begin(), inv.end(), [](const InversionPair& x) { return x.k == 1 && x.t == 0; }))
      throw PolarDivisorError();
    int p = 0;
    for (const InversionPair& x : inv) p += (x.k == -1) - (x.k == 1);
    const IntWeight mu = apply_word(rs, word, l1);
    const IntWeight h = apply_word(rs, word, l2);
    auto it = out.find(key_of(mu));
    if (it == out.end()) it = out.emplace(key_of(mu), TruncatedSeries::zero(max_order)).first;
    if (p > max_order) continue;
    const int N = std::max(1, max_order - p);
    TruncatedSeries term = member_sum({h}, N);
    for (const InversionPair& x : inv) term = series_mul(term, factor_series({x.k, x.t}, N));
    it->second = series_add(it->second, term.truncated(max_order));
  }
  return out;
}

}  // namespace l2cert
