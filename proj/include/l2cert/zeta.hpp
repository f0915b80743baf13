#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <map>
#include <utility>
#include <vector>

#include "l2cert/series.hpp"

namespace l2cert {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Completed zeta pi^(-s/2) Gamma(s/2) zeta(s), using Xi(s) = Xi(1 - s) below 1/2.
/// Evaluated at the calling thread's default precision.
Real xi(const Real& s);
/// c(s) = Xi(s) / Xi(s + 1).
Real c_value(const Real& s);

/// Numeric values of the generators for c(s) = Xi(s) / Xi(s + 1):
///   S(k,n) = (log Xi)^(n)(k), S(0,n) from log(-s Xi(s)) at 0,
///   G(n)   = n-th derivative at 0 of log(Xi(2 - d) / (-d Xi(d))),
///   C(k)   = c(k), U = -Xi(2), D(k,n) = S(k,n) - (-1)^n S(-k,n).
/// Taylor data come from interpolation on a small symmetric stencil at the
/// working precision; error_estimate() compares two stencil widths.
class ZetaSpecializer {
 public:
  static constexpr int kMaxDerivative = 16;

  /// working_digits = 0 picks digits + 80. Throws std::invalid_argument when
  /// digits is not achievable at the working precision.
  explicit ZetaSpecializer(int digits = 50, int working_digits = 0);

  int digits() const { return digits_; }
  int working_digits() const { return working_; }

  /// Values for H(1..rank); without them H symbols are rejected.
  void set_h(std::vector<Real> h) { h_ = std::move(h); }

  Real value(Symbol s);
  Real evaluate(const Poly& p);
  /// Specialised coefficients, min_power first.
  std::vector<Real> evaluate(const TruncatedSeries& s);
  /// Sum of the specialised series at eps.
  Real evaluate_at(const TruncatedSeries& s, const Real& eps);

  /// Largest stencil discrepancy among the Taylor data used so far.
  const Real& error_estimate() const { return error_; }

 private:
  enum class Fn { log_xi, log_xi_pole0, g_model };
  const std::vector<Real>& taylor(Fn fn, int k);

  int digits_;
  int working_;
  std::vector<Real> h_;
  std::map<Symbol, Real> values_;
  std::map<std::pair<int, int>, std::vector<Real>> taylor_;
  Real error_;
};

}  // namespace l2cert
