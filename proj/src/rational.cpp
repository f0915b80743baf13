#include "l2cert/rational.hpp"

#include <stdexcept>

namespace l2cert {

namespace mp = boost::multiprecision;

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& v) {
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.erase(v.begin());
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.pop_back();
  };
  trim(s);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto valid_int = [](const std::string& v) {
    std::size_t i = (!v.empty() && (v[0] == '-' || v[0] == '+')) ? 1 : 0;
    if (i == v.size()) return false;
    for (; i < v.size(); ++i)
      if (v[i] < '0' || v[i] > '9') return false;
    return true;
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    trim(num);
    trim(den);
    if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("bad rational literal: " + s);
    BigInt d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(BigInt(num), d);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(whole.begin());
    if (whole.empty()) whole = "0";
    if (frac.empty() || !valid_int(whole) || !valid_int(frac) || frac[0] == '-' || frac[0] == '+')
      throw std::invalid_argument("bad decimal literal: " + s);
    BigInt scale = mp::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    Rational q(BigInt(whole) * scale + BigInt(frac), scale);
    return neg ? Rational(-q) : q;
  }
  if (!valid_int(s)) throw std::invalid_argument("bad rational literal: " + s);
  return Rational(BigInt(s));
}

std::string to_string(const Rational& q) {
  if (mp::denominator(q) == 1) return mp::numerator(q).str();
  return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

bool is_integer(const Rational& q) { return mp::denominator(q) == 1; }

std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q)) throw std::invalid_argument("non-integral value " + to_string(q));
  BigInt n = mp::numerator(q);
  if (n > BigInt(INT64_MAX) || n < BigInt(INT64_MIN)) throw std::overflow_error("integer overflow");
  return n.convert_to<std::int64_t>();
}

bool rational_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  BigInt n = mp::numerator(q), d = mp::denominator(q);
  BigInt rn = mp::sqrt(n), rd = mp::sqrt(d);
  if (rn * rn != n || rd * rd != d) return false;
  root = Rational(rn, rd);
  return true;
}

}  // namespace l2cert
