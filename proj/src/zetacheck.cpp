#include "l2cert/zetacheck.hpp"

#include <sstream>

namespace l2cert {

ZetaCheck zeta_check(const MuBlock& block, int order, int digits) {
  ZetaCheck out;
  out.mu = block.mu;
  out.order = order;
  out.digits = digits;
  const int rank = static_cast<int>(block.mu.size());
  const Poly coeff = block_series(block, order).coefficient(order);

  // eps = 10^-40 loses about 40 digits per order of cancellation inside the block.
  const int spread = std::max(0, order - block.p) + 2;
  const int working = digits + 60 + 40 * spread;
  const unsigned saved = Real::default_precision();
  Real::default_precision(working);

  std::vector<Real> h;
  for (int i = 0; i < rank; ++i) h.push_back(Real(i + 2) / 7);
  ZetaSpecializer z(digits, std::max(digits + 80, working));
  z.set_h(h);
  out.specialised = z.evaluate(coeff);

  auto grouped = [&](const Real& eps) {
    Real total(0);
    for (const BlockClass& c : block.classes) {
      Real prod(1);
      for (const InversionPair& inv : c.multiset) prod *= c_value(Real(inv.k) + eps * inv.t);
      Real members(0);
      for (const IntWeight& w : c.members) {
        Real dot(0);
        for (int i = 0; i < rank; ++i) dot += Real(w(i)) * h[static_cast<std::size_t>(i)];
        members += exp(eps * dot);
      }
      total += prod * members;
    }
    return total / pow(eps, order);
  };
  const Real eps = pow(Real(10), -40);
  out.direct = 2 * grouped(eps / 2) - grouped(eps);
  out.difference = abs(out.specialised - out.direct);
  out.tolerance = pow(Real(10), -(digits / 2)) * std::max(Real(1), Real(abs(out.direct)));
  out.nonzero = abs(out.specialised) > out.tolerance;
  out.agrees = out.difference <= out.tolerance;
  Real::default_precision(saved);
  return out;
}

const BlockResult* pick_check_block(const VerdictReport& report) {
  const BlockResult* best = nullptr;
  auto rank = [](const BlockResult& b) {
    return std::make_tuple(!b.h_dependent, *b.order - b.p, b.cosets);
  };
  for (const BlockResult& b : report.leading) {
    if (b.classification != Chamber::strict_interior || !b.order) continue;
    if (!best || rank(b) < rank(*best)) best = &b;
  }
  return best;
}

std::string format_real(const Real& x, int significant) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(significant - 1) << x;
  return out.str();
}

}  // namespace l2cert
