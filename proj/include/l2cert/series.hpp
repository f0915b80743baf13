#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "l2cert/rational.hpp"

namespace l2cert {

/// Formal generators of the coefficient ring.
///   S(k,n)  n-th Taylor datum of the c-function model at the integer k
///   D(k,n)  S(k,n) - (-1)^n S(-k,n), k >= 2 (the combination the factors actually use)
///   G(n)    n-th datum of the pole-normalised model at +-1
///   C(k)    unit: c(k), k >= 2
///   U       unit: the residue constant at +-1
///   H(i)    coordinate of H in the simple-coroot basis, 0-based internally
enum class SymbolKind : std::uint8_t { S = 0, D = 1, G = 2, C = 3, U = 4, H = 5 };

/// Packed symbol key; the integer order is the canonical generator order.
class Symbol {
 public:
  Symbol() = default;
  static Symbol S(int k, int n) { return Symbol(SymbolKind::S, k, n); }
  static Symbol D(int k, int n) { return Symbol(SymbolKind::D, k, n); }
  static Symbol G(int n) { return Symbol(SymbolKind::G, 0, n); }
  static Symbol C(int k) { return Symbol(SymbolKind::C, k, 0); }
  static Symbol U() { return Symbol(SymbolKind::U, 0, 0); }
  static Symbol H(int i) { return Symbol(SymbolKind::H, i, 0); }
  static Symbol from_key(std::uint32_t key) {
    Symbol s;
    s.key_ = key;
    return s;
  }

  SymbolKind kind() const { return static_cast<SymbolKind>(key_ >> 24); }
  int k() const { return static_cast<int>((key_ >> 8) & 0xffffu) - 32768; }
  int n() const { return static_cast<int>(key_ & 0xffu); }
  std::uint32_t key() const { return key_; }
  bool is_unit() const { return kind() == SymbolKind::C || kind() == SymbolKind::U; }
  /// "S(-3,2)", "G(1)", "C(4)", "U", "H(2)" (H printed 1-based).
  std::string name() const;

  friend auto operator<=>(const Symbol&, const Symbol&) = default;

 private:
  Symbol(SymbolKind kind, int k, int n);
  std::uint32_t key_ = 0;
};

/// Parses the output of Symbol::name(). Throws std::invalid_argument.
Symbol parse_symbol(std::string_view text);

/// Sorted (symbol, exponent) list without zero exponents. Only unit symbols
/// may carry negative exponents.
class Monomial {
 public:
  using Factor = std::pair<Symbol, int>;
  Monomial() = default;
  explicit Monomial(Symbol s, int e = 1);

  const std::vector<Factor>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }
  int degree_in(SymbolKind kind) const;
  /// Sum of positive exponents of non-unit symbols.
  int degree() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string str() const;

 private:
  std::vector<Factor> f_;
};

/// Canonical sparse polynomial: terms sorted by monomial, no zero coefficients.
class Poly {
 public:
  using Term = std::pair<Monomial, Rational>;
  Poly() = default;
  Poly(const Rational& c);  // NOLINT: constants convert implicitly
  Poly(int c) : Poly(Rational(c)) {}
  explicit Poly(Symbol s, int e = 1);
  Poly(const Monomial& m, const Rational& c);

  const std::vector<Term>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  /// Constant term (zero when absent).
  Rational constant() const;
  bool depends_on(SymbolKind kind) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly&, const Poly&) = default;

  /// Adds c * m without breaking canonical form.
  void add_term(const Monomial& m, const Rational& c);

  /// Deterministic text, e.g. "3/2*D(2,1)^2*H(1) - C(3)^-1 + 1"; "0" for zero.
  std::string str() const;

  /// Builds from unsorted terms; combines duplicates and drops zeros.
  static Poly from_terms(std::vector<Term> terms);

 private:
  std::vector<Term> t_;
};

/// Parses Poly::str() output. Throws std::invalid_argument.
Poly parse_poly(std::string_view text);

inline bool is_zero(const Poly& p) { return p.is_zero(); }

/// Ring homomorphism to Scalar given values for the generators.
template <typename Scalar>
Scalar evaluate(const Poly& p, const std::function<Scalar(Symbol)>& value) {
  Scalar acc(0);
  for (const auto& [m, c] : p.terms()) {
    Scalar term = Scalar(c);
    for (const auto& [s, e] : m.factors()) {
      const Scalar v = value(s);
      if (e > 0)
        for (int i = 0; i < e; ++i) term *= v;
      else
        for (int i = 0; i < -e; ++i) term /= v;
    }
    acc += term;
  }
  return acc;
}

/// Replaces generators by polynomials (unit symbols must not be substituted
/// when they occur with negative exponents).
Poly substitute(const Poly& p, const std::function<const Poly*(Symbol)>& image);

/// Rewrites every D(k,n) as S(k,n) - (-1)^n S(-k,n).
Poly expand_compressed(const Poly& p);

// ---------------------------------------------------------------------------

/// Laurent series in eps, known exactly for eps-exponents up to and including
/// bound(). coeffs[i] is the coefficient of eps^(min_power + i). The leading
/// coefficient is nonzero unless the series is the canonical zero (no coefficients).
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  /// Zero series known through eps^bound.
  static TruncatedSeries zero(int bound);
  static TruncatedSeries constant(const Poly& c, int bound);
  TruncatedSeries(int min_power, int bound, std::vector<Poly> coeffs);

  int min_power() const { return min_; }
  int bound() const { return bound_; }
  bool is_zero() const { return c_.empty(); }
  /// Coefficient of eps^e; throws std::out_of_range beyond the bound.
  Poly coefficient(int e) const;
  const std::vector<Poly>& coeffs() const { return c_; }

  /// Same series with a lower bound (never raises it).
  TruncatedSeries truncated(int bound) const;
  /// Multiplies by eps^k.
  TruncatedSeries shifted(int k) const;
  TruncatedSeries scaled(const Poly& c) const;

  std::string str() const;
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  void normalize();
  int min_ = 1;
  int bound_ = 0;
  std::vector<Poly> c_;
};

TruncatedSeries parse_series(std::string_view text);

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
/// As series_mul, but throws std::invalid_argument naming the achievable bound
/// when the product is not reliable through eps^required_bound.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b, int required_bound);
/// exp(a) for a with no constant or polar part.
TruncatedSeries series_exp(const TruncatedSeries& a);

}  // namespace l2cert
