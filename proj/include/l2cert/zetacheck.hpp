#pragma once

#include <string>

#include "l2cert/constantterm.hpp"
#include "l2cert/zeta.hpp"

namespace l2cert {

/// Numeric cross-check of one block coefficient over Q: the formal coefficient
/// specialised through ZetaSpecializer against the grouped sum of products of
/// c(k + eps t) = Xi / Xi evaluated directly at small eps.
struct ZetaCheck {
  IntWeight mu;
  int order = 0;
  int digits = 0;
  Real specialised;
  Real direct;
  Real difference;
  Real tolerance;
  bool nonzero = false;
  bool agrees = false;
};

/// H is specialised to H(i) = (i + 2) / 7. Tolerance 10^-(digits/2) relative to max(1, |direct|).
ZetaCheck zeta_check(const MuBlock& block, int order, int digits = 50);

/// The leading strict block used for the check: H-dependent first, then the
/// fewest orders above its eps-power, then the fewest cosets.
const BlockResult* pick_check_block(const VerdictReport& report);

/// Converts to a fixed number of significant digits ("1.2345e-07").
std::string format_real(const Real& x, int significant = 30);

}  // namespace l2cert
