#include "l2cert/cfactor.hpp"

#include <sstream>

namespace l2cert {

namespace {

Rational factorial(int n) {
  Rational f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Rational power(const Rational& x, int n) {
  Rational r(1);
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

Poly FactorModel::exponent_generator(int n, FactorForm form) const {
  if (n < 1) throw std::invalid_argument("exponent index must be positive");
  if (vanishes || key.t == 0) return Poly();
  const int k = key.k;
  const int sign_n = (n % 2 == 0) ? 1 : -1;  // (-1)^n
  if (k == -1) return Poly(Symbol::G(n));
  if (k == 1) return Poly(Symbol::G(n)) * Rational(-sign_n);
  if (k == 0) return n % 2 == 1 ? Poly(Symbol::S(0, n)) * Rational(2) : Poly();
  if (form == FactorForm::expanded) return Poly(Symbol::S(k, n)) - Poly(Symbol::S(-k, n)) * Rational(sign_n);
  if (k > 0) return Poly(Symbol::D(k, n));
  return Poly(Symbol::D(-k, n)) * Rational(-sign_n);
}

Poly FactorModel::exponent(int n, FactorForm form) const {
  return exponent_generator(n, form) * (power(Rational(key.t), n) / factorial(n));
}

FactorModel factor_model(FactorKey key) {
  FactorModel m;
  m.key = key;
  const int k = key.k, t = key.t;
  if (k == 1 && t == 0) throw PolarDivisorError();
  if (k == -1 && t == 0) {
    m.vanishes = true;
    m.scalar = 0;
    return m;
  }
  if (k >= 2) {
    m.unit = Monomial(Symbol::C(k));
  } else if (k <= -2) {
    m.unit = Monomial(Symbol::C(-k), -1);
  } else if (k == 0) {
    m.scalar = -1;
  } else if (k == -1) {
    m.eps_power = 1;
    m.scalar = t;
    m.unit = Monomial(Symbol::U());
  } else {
    m.eps_power = -1;
    m.scalar = Rational(-1) / Rational(t);
    m.unit = Monomial(Symbol::U(), -1);
  }
  return m;
}

TruncatedSeries factor_series(FactorKey key, int N, FactorForm form) {
  if (N < 1) throw std::invalid_argument("truncation bound must be at least 1");
  const FactorModel m = factor_model(key);
  if (m.vanishes) return TruncatedSeries::zero(N);
  const Poly lead(m.unit, m.scalar);
  if (key.t == 0) return TruncatedSeries::constant(lead, N);
  std::vector<Poly> ex;
  for (int n = 1; n <= N; ++n) ex.push_back(m.exponent(n, form));
  const TruncatedSeries e = series_exp(TruncatedSeries(1, N, std::move(ex)));
  return e.scaled(lead).shifted(m.eps_power);
}

bool verify_reciprocity(int k, int t, int N) {
  if (t == 0) throw std::invalid_argument("reciprocity needs a nonzero t");
  const TruncatedSeries a = factor_series({k, t}, N), b = factor_series({-k, -t}, N);
  const TruncatedSeries p = series_mul(a, b);
  if (p.bound() < N) return false;
  return p.truncated(N) == TruncatedSeries::constant(Poly(1), N);
}

const TruncatedSeries& FactorCache::get(FactorKey key, int N) {
  std::lock_guard lock(mutex_);
  auto id = std::make_tuple(key.k, key.t, N);
  auto it = memo_.find(id);
  if (it == memo_.end()) it = memo_.emplace(id, factor_series(key, N, form_)).first;
  return it->second;
}

std::size_t FactorCache::size() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

std::string FactorCache::dump() const {
  std::lock_guard lock(mutex_);
  std::ostringstream out;
  for (const auto& [id, s] : memo_)
    out << std::get<0>(id) << ' ' << std::get<1>(id) << ' ' << std::get<2>(id) << ' ' << s.str() << '\n';
  return out.str();
}

}  // namespace l2cert
