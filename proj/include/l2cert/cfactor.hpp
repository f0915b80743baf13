#pragma once

#include <map>
#include <mutex>
#include <stdexcept>

#include "l2cert/series.hpp"

namespace l2cert {

/// Argument k + eps * t of one c-factor.
struct FactorKey {
  int k = 0;  ///< <lambda_1, alpha^vee>
  int t = 0;  ///< <lambda_2, alpha^vee>
  friend auto operator<=>(const FactorKey&, const FactorKey&) = default;
};

/// Which generators the exponent is written in: the S(k,n) of the model, or
/// the combined D(k,n) with k >= 2.
enum class FactorForm { expanded, compressed };

/// Thrown for the pole at k = +1 with t = 0.
struct PolarDivisorError : std::domain_error {
  PolarDivisorError() : std::domain_error("deformation line lies in a polar divisor") {}
};

/// c(k + eps t) = scalar * unit * eps^eps_power * exp(sum_n eps^n exponent(n)).
struct FactorModel {
  FactorKey key;
  bool vanishes = false;  ///< (k, t) = (-1, 0)
  int eps_power = 0;
  Rational scalar{1};
  Monomial unit;

  /// Linear form multiplying eps^n in the exponent, t^n / n! included.
  Poly exponent(int n, FactorForm form = FactorForm::expanded) const;
  /// Same form without the t^n / n! weight.
  Poly exponent_generator(int n, FactorForm form = FactorForm::expanded) const;
};

/// Throws PolarDivisorError for (1, 0).
FactorModel factor_model(FactorKey key);

/// Expansion with exponent terms n = 1..N; known through eps^(eps_power + N).
TruncatedSeries factor_series(FactorKey key, int N, FactorForm form = FactorForm::expanded);

/// factor_series(k, t) * factor_series(-k, -t) == 1 through eps^N.
bool verify_reciprocity(int k, int t, int N);

/// Memo of factor_series by (k, t, N); safe for concurrent use.
class FactorCache {
 public:
  explicit FactorCache(FactorForm form = FactorForm::compressed) : form_(form) {}
  const TruncatedSeries& get(FactorKey key, int N);
  std::size_t size() const;
  /// Canonical text, one "k t N series" line per entry in key order.
  std::string dump() const;

 private:
  FactorForm form_;
  mutable std::mutex mutex_;
  std::map<std::tuple<int, int, int>, TruncatedSeries> memo_;
};

}  // namespace l2cert
