#include "l2cert/zeta.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <functional>
#include <stdexcept>

namespace l2cert {

namespace {

constexpr int kGuardDigits = 60;
constexpr int kStencilHalf = 16;

class PrecisionScope {
 public:
  explicit PrecisionScope(int digits) : saved_(Real::default_precision()) { Real::default_precision(digits); }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

/// Power-basis coefficients (about 0) of the interpolant through (x_i, y_i).
std::vector<Real> interpolate(const std::vector<Real>& x, std::vector<Real> y, int keep) {
  const std::size_t m = x.size();
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i) y[i] = (y[i] - y[i - 1]) / (x[i] - x[i - level]);
  std::vector<Real> p{y[m - 1]};
  for (std::size_t i = m - 1; i-- > 0;) {
    std::vector<Real> next(p.size() + 1, Real(0));
    for (std::size_t d = 0; d < p.size(); ++d) {
      next[d + 1] += p[d];
      next[d] -= p[d] * x[i];
    }
    next[0] += y[i];
    p = std::move(next);
  }
  p.resize(static_cast<std::size_t>(keep) + 1);
  return p;
}

std::vector<Real> taylor_stencil(const std::function<Real(const Real&)>& f, const Real& h, int keep) {
  std::vector<Real> x, y;
  for (int j = -kStencilHalf; j < kStencilHalf; ++j) {
    x.push_back((Real(j) + Real(1) / 2) * h);
    y.push_back(f(x.back()));
  }
  return interpolate(x, std::move(y), keep);
}

}  // namespace

Real xi(const Real& s) {
  if (s < Real(1) / 2) return xi(Real(1) - s);
  const Real pi = boost::math::constants::pi<Real>();
  return boost::multiprecision::pow(pi, -s / 2) * boost::math::tgamma(s / 2) * boost::math::zeta(s);
}

Real c_value(const Real& s) { return xi(s) / xi(s + 1); }

ZetaSpecializer::ZetaSpecializer(int digits, int working_digits)
    : digits_(digits), working_(working_digits == 0 ? digits + 80 : working_digits) {
  if (digits < 1) throw std::invalid_argument("precision must be positive");
  if (digits > working_ - kGuardDigits)
    throw std::invalid_argument("requested " + std::to_string(digits) + " digits exceeds the achievable bound of " +
                                std::to_string(working_ - kGuardDigits) + " digits at working precision " +
                                std::to_string(working_));
  PrecisionScope scope(working_);
  error_ = 0;
}

const std::vector<Real>& ZetaSpecializer::taylor(Fn fn, int k) {
  const auto id = std::make_pair(static_cast<int>(fn), k);
  if (auto it = taylor_.find(id); it != taylor_.end()) return it->second;
  PrecisionScope scope(working_);
  std::function<Real(const Real&)> f;
  switch (fn) {
    case Fn::log_xi:
      f = [k](const Real& d) { return log(xi(Real(k) + d)); };
      break;
    case Fn::log_xi_pole0:
      f = [](const Real& d) { return log(-d * xi(d)); };
      break;
    case Fn::g_model:
      f = [](const Real& d) { return log(xi(Real(2) - d) / (-d * xi(d))); };
      break;
  }
  const Real h = Real(1) / 10000;
  std::vector<Real> a = taylor_stencil(f, h, kMaxDerivative);
  const std::vector<Real> b = taylor_stencil(f, 2 * h, kMaxDerivative);
  Real fact(1);
  for (int n = 0; n <= kMaxDerivative; ++n) {
    if (n > 0) fact *= n;
    a[n] *= fact;
    const Real diff = abs(a[n] - b[n] * fact);
    // Only the orders the truncation actually reaches are meaningful.
    if (n <= 8 && diff > error_) error_ = diff;
  }
  return taylor_.emplace(id, std::move(a)).first->second;
}

Real ZetaSpecializer::value(Symbol s) {
  if (auto it = values_.find(s); it != values_.end()) return it->second;
  Real v;
  const int k = s.k(), n = s.n();
  if (s.kind() == SymbolKind::S || s.kind() == SymbolKind::D || s.kind() == SymbolKind::G)
    if (n < 1 || n > kMaxDerivative)
      throw std::invalid_argument("derivative order " + std::to_string(n) + " outside 1.." +
                                  std::to_string(kMaxDerivative));
  PrecisionScope scope(working_);
  switch (s.kind()) {
    case SymbolKind::S:
      v = k == 0 ? taylor(Fn::log_xi_pole0, 0)[n] : taylor(Fn::log_xi, k)[n];
      break;
    case SymbolKind::D:
      v = value(Symbol::S(k, n)) - ((n % 2 == 0) ? Real(1) : Real(-1)) * value(Symbol::S(-k, n));
      break;
    case SymbolKind::G:
      v = taylor(Fn::g_model, 0)[n];
      break;
    case SymbolKind::C:
      v = c_value(Real(k));
      break;
    case SymbolKind::U:
      v = -xi(Real(2));
      break;
    case SymbolKind::H:
      if (k >= static_cast<int>(h_.size()))
        throw std::invalid_argument("no value supplied for " + s.name());
      v = h_[static_cast<std::size_t>(k)];
      break;
  }
  values_.emplace(s, v);
  return v;
}

Real ZetaSpecializer::evaluate(const Poly& p) {
  PrecisionScope scope(working_);
  return l2cert::evaluate<Real>(p, [this](Symbol s) { return value(s); });
}

std::vector<Real> ZetaSpecializer::evaluate(const TruncatedSeries& s) {
  std::vector<Real> out;
  for (const Poly& c : s.coeffs()) out.push_back(evaluate(c));
  return out;
}

Real ZetaSpecializer::evaluate_at(const TruncatedSeries& s, const Real& eps) {
  PrecisionScope scope(working_);
  Real acc(0);
  Real p = pow(eps, s.min_power());
  for (const Poly& c : s.coeffs()) {
    acc += evaluate(c) * p;
    p *= eps;
  }
  return acc;
}

}  // namespace l2cert
