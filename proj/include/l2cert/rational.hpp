#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace l2cert {

/// Exact rational scalar. Expression templates are disabled so the type can
/// be used as an Eigen scalar and stored in containers without surprises.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

/// Parses "7", "-3/4" or "2.5" into an exact rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p/q" with q > 0, or "p" when the denominator is one.
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);

/// Requires is_integer(q) and a value that fits in 64 bits.
std::int64_t to_int64(const Rational& q);

/// Exact square root when q is the square of a rational; false otherwise.
bool rational_sqrt(const Rational& q, Rational& root);

}  // namespace l2cert
