#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "l2cert/cfactor.hpp"
#include "l2cert/orbits.hpp"
#include "l2cert/rootsys.hpp"
#include "l2cert/series.hpp"

namespace l2cert {

/// Cosets of one block sharing an inversion multiset.
struct BlockClass {
  /// Sorted (k, t) pairs.
  std::vector<InversionPair> multiset;
  /// w lambda_2 of every member, in coset order.
  std::vector<IntWeight> members;
};

/// All cosets with w lambda_1 = mu.
struct MuBlock {
  IntWeight mu;
  Chamber classification = Chamber::outside;
  /// #(k = -1) - #(k = +1), common to every member.
  int p = 0;
  std::size_t cosets = 0;
  std::vector<BlockClass> classes;
};

/// Scalar * unit of the product of c-factors at eps = 0 after removing eps^p.
Poly class_prefactor(const BlockClass& c);

/// Groups the cosets by mu (blocks sorted by mu) and by inversion multiset
/// (classes sorted by multiset; skipped when with_classes is false). Throws std::logic_error when some inversion
/// has t < 1 or p differs inside a block ("epsilon-power invariance violated").
std::vector<MuBlock> build_blocks(const RootSystem& rs, const CosetTable& table, bool with_classes = true);

/// Strict / non-strict / boundary block counts.
ChamberCounts count_blocks(const std::vector<MuBlock>& blocks);

/// Sum over the block of prod c(k + eps t) * exp(eps <w lambda_2, H>) with the
/// factor e^<mu + rho, H> removed, exact through eps^max_order. Written in
/// D / S(0,n) / G / C / U / H generators.
TruncatedSeries block_series(const MuBlock& block, int max_order);

/// Exact test of the coefficient of eps^order of block_series.
struct CoefficientTest {
  bool nonzero = false;
  /// Some nonzero part has positive degree in H.
  bool h_dependent = false;
  /// Number of independent homogeneous components examined.
  std::size_t components = 0;
};

/// Decides C(mu, order) = 0 without expanding the block series: the coefficient
/// splits into components of fixed degree in each generator family, and each
/// component vanishes iff the prefactor vector is orthogonal to a Hadamard
/// product of polynomial restriction spaces on the class points.
class BlockCoefficientTester {
 public:
  explicit BlockCoefficientTester(const MuBlock& block);
  ~BlockCoefficientTester();
  BlockCoefficientTester(const BlockCoefficientTester&) = delete;
  BlockCoefficientTester& operator=(const BlockCoefficientTester&) = delete;

  /// stop_at_nonzero skips the remaining components once the answer (and the
  /// H flag) is settled.
  CoefficientTest test(int order, bool stop_at_nonzero = true);

 private:
  struct Impl;
  Impl* impl_;
};

enum class Verdict { l2_certified, not_l2, undetermined_at_cap };
const char* to_string(Verdict v);

struct LineAnalysis {
  const RootSystem* rs = nullptr;
  LineSpec line;
  /// Highest eps order examined.
  int max_order = 4;
  int workers = 1;
  /// Criterion mode: prove the non-strict blocks vanish through this order and
  /// find a strict block that does not, without pinning the exact order.
  std::optional<int> bound_order;
  /// Geometry only: blocks and counts, no coefficients.
  bool geometry_only = false;
  /// Called with (blocks done, blocks total) for each completed level.
  std::function<void(const std::string&)> progress;
};

struct BlockResult {
  IntWeight mu;
  Chamber classification = Chamber::outside;
  int p = 0;
  std::size_t cosets = 0;
  std::size_t classes = 0;
  /// Exact order when found; otherwise every order through proven_zero_through vanishes.
  std::optional<int> order;
  int proven_zero_through = 0;
  bool h_dependent = false;
};

struct OrderValue {
  int value = 0;
  bool upper_bound = false;
  bool known = false;
  std::string str() const;
};

struct VerdictReport {
  std::string group_type;
  std::string label;
  std::string marking;
  int j = 0;  ///< 0-based
  Rational s;
  IntWeight lambda1;
  std::uint64_t wrel_count = 0;
  std::size_t distinct_mu = 0;
  ChamberCounts counts;
  OrderValue ord;
  Verdict verdict = Verdict::undetermined_at_cap;
  int max_order = 0;
  bool geometry_only = false;
  /// Some leading strict block has H-dependent coefficient.
  bool leading_h_dependent = false;
  /// Every leading strict block has H-dependent coefficient.
  bool all_leading_h_dependent = false;
  /// Blocks whose coefficient at ord is nonzero (or the witnesses in bound mode).
  std::vector<BlockResult> leading;
  /// Non-strict blocks with p <= ord, all proven to vanish through ord.
  std::size_t nonstrict_proven = 0;
  /// Strict blocks with p < ord, proven to vanish below ord.
  std::size_t strict_proven = 0;
  std::size_t coefficient_tests = 0;
  /// Minimum block eps-power.
  int min_p = 0;
};

/// Enumerates W_rel, builds the blocks and decides the order of vanishing.
/// Blocks are tested level by level from the smallest eps-power upward; the
/// first level with a nonzero coefficient is the order, and the row is
/// certified iff every block nonzero there is strictly interior.
VerdictReport analyze(const LineAnalysis& ctx);
/// Same, reusing an existing enumeration.
VerdictReport analyze(const LineAnalysis& ctx, const CosetTable& table);

/// Per-mu series from a full Weyl group enumeration (small ranks only),
/// exact through eps^max_order, written in S(k,n) generators.
std::map<std::vector<int>, TruncatedSeries> brute_force_oracle(const RootSystem& rs, const LineSpec& line,
                                                              int max_order);

}  // namespace l2cert
