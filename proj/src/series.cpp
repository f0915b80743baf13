#include "l2cert/series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace l2cert {

namespace {

[[noreturn]] void bad(std::string_view what, std::string_view text) {
  throw std::invalid_argument(std::string(what) + ": '" + std::string(text) + "'");
}

struct Cursor {
  std::string_view s;
  std::size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  long integer() {
    skip();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start])))) bad("expected integer", s);
    return std::stol(std::string(s.substr(start, i - start)));
  }
  std::string_view digits_rational() {
    skip();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i < s.size() && s[i] == '/') {
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    }
    return s.substr(start, i - start);
  }
};

Symbol read_symbol(Cursor& c) {
  c.skip();
  if (c.i >= c.s.size()) bad("expected symbol", c.s);
  const char head = c.s[c.i++];
  switch (head) {
    case 'S':
    case 'D': {
      if (!c.eat('(')) bad("expected '('", c.s);
      const int k = static_cast<int>(c.integer());
      if (!c.eat(',')) bad("expected ','", c.s);
      const int n = static_cast<int>(c.integer());
      if (!c.eat(')')) bad("expected ')'", c.s);
      return head == 'S' ? Symbol::S(k, n) : Symbol::D(k, n);
    }
    case 'G':
    case 'C':
    case 'H': {
      if (!c.eat('(')) bad("expected '('", c.s);
      const int v = static_cast<int>(c.integer());
      if (!c.eat(')')) bad("expected ')'", c.s);
      if (head == 'G') return Symbol::G(v);
      if (head == 'C') return Symbol::C(v);
      if (v < 1) bad("H index is 1-based", c.s);
      return Symbol::H(v - 1);
    }
    case 'U': return Symbol::U();
    default: bad("unknown symbol", c.s);
  }
}

Poly parse_poly_cursor(Cursor& c) {
  std::vector<Poly::Term> terms;
  bool first = true;
  for (;;) {
    if (c.done() || c.peek() == ';' || c.peek() == '}') break;
    int sign = 1;
    if (c.eat('-')) {
      sign = -1;
    } else if (!c.eat('+') && !first) {
      bad("expected '+' or '-'", c.s);
    }
    first = false;
    Rational coef(1);
    Monomial mono;
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
      coef = parse_rational(c.digits_rational());
      if (!c.eat('*')) {
        terms.emplace_back(mono, coef * sign);
        continue;
      }
    }
    for (;;) {
      const Symbol s = read_symbol(c);
      int e = 1;
      if (c.eat('^')) e = static_cast<int>(c.integer());
      mono = mono * Monomial(s, e);
      if (!c.eat('*')) break;
    }
    terms.emplace_back(mono, coef * sign);
  }
  return Poly::from_terms(std::move(terms));
}

}  // namespace

Symbol::Symbol(SymbolKind kind, int k, int n) {
  if (k < -32768 || k > 32767 || n < 0 || n > 255) throw std::out_of_range("symbol index out of range");
  key_ = (static_cast<std::uint32_t>(kind) << 24) | (static_cast<std::uint32_t>(k + 32768) << 8) |
         static_cast<std::uint32_t>(n);
}

std::string Symbol::name() const {
  switch (kind()) {
    case SymbolKind::S: return "S(" + std::to_string(k()) + "," + std::to_string(n()) + ")";
    case SymbolKind::D: return "D(" + std::to_string(k()) + "," + std::to_string(n()) + ")";
    case SymbolKind::G: return "G(" + std::to_string(n()) + ")";
    case SymbolKind::C: return "C(" + std::to_string(k()) + ")";
    case SymbolKind::U: return "U";
    case SymbolKind::H: return "H(" + std::to_string(k() + 1) + ")";
  }
  return "?";
}

Symbol parse_symbol(std::string_view text) {
  Cursor c{text};
  Symbol s = read_symbol(c);
  if (!c.done()) bad("trailing characters in symbol", text);
  return s;
}

// ---------------------------------------------------------------------------

Monomial::Monomial(Symbol s, int e) {
  if (e != 0) f_.emplace_back(s, e);
  if (e < 0 && !s.is_unit()) throw std::invalid_argument("negative exponent on non-unit " + s.name());
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.f_.reserve(a.f_.size() + b.f_.size());
  auto i = a.f_.begin(), j = b.f_.begin();
  while (i != a.f_.end() || j != b.f_.end()) {
    if (j == b.f_.end() || (i != a.f_.end() && i->first < j->first)) {
      out.f_.push_back(*i++);
    } else if (i == a.f_.end() || j->first < i->first) {
      out.f_.push_back(*j++);
    } else {
      const int e = i->second + j->second;
      if (e != 0) out.f_.emplace_back(i->first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

int Monomial::degree_in(SymbolKind kind) const {
  int d = 0;
  for (const auto& [s, e] : f_)
    if (s.kind() == kind) d += e;
  return d;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [s, e] : f_)
    if (!s.is_unit()) d += e;
  return d;
}

std::string Monomial::str() const {
  std::string out;
  for (const auto& [s, e] : f_) {
    if (!out.empty()) out += '*';
    out += s.name();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

// ---------------------------------------------------------------------------

Poly::Poly(const Rational& c) {
  if (c != 0) t_.emplace_back(Monomial(), c);
}

Poly::Poly(Symbol s, int e) { t_.emplace_back(Monomial(s, e), Rational(1)); }

Poly::Poly(const Monomial& m, const Rational& c) {
  if (c != 0) t_.emplace_back(m, c);
}

Rational Poly::constant() const {
  if (!t_.empty() && t_.front().first.is_one()) return t_.front().second;
  return Rational(0);
}

bool Poly::depends_on(SymbolKind kind) const {
  for (const auto& [m, c] : t_)
    for (const auto& [s, e] : m.factors())
      if (s.kind() == kind) return true;
  return false;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.t_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(t_.size() + o.t_.size());
  auto i = t_.begin();
  auto j = o.t_.cbegin();
  while (i != t_.end() || j != o.t_.end()) {
    if (j == o.t_.end() || (i != t_.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == t_.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      Rational c = i->second + j->second;
      if (c != 0) out.emplace_back(std::move(i->first), std::move(c));
      ++i;
      ++j;
    }
  }
  t_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -Poly(o); }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    t_.clear();
    return *this;
  }
  for (auto& term : t_) term.second *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.t_.empty() || b.t_.empty()) return Poly();
  std::vector<Poly::Term> terms;
  terms.reserve(a.t_.size() * b.t_.size());
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) terms.emplace_back(ma * mb, ca * cb);
  return Poly::from_terms(std::move(terms));
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& t, const Monomial& x) { return t.first < x; });
  if (it != t_.end() && it->first == m) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  } else {
    t_.emplace(it, m, c);
  }
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  Poly p;
  for (auto& term : terms) {
    if (!p.t_.empty() && p.t_.back().first == term.first) {
      p.t_.back().second += term.second;
      if (p.t_.back().second == 0) p.t_.pop_back();
    } else if (term.second != 0) {
      p.t_.push_back(std::move(term));
    }
  }
  return p;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : t_) {
    const bool neg = c < 0;
    const Rational a = neg ? Rational(-c) : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (m.is_one()) {
      out += to_string(a);
    } else {
      if (a != 1) out += to_string(a) + "*";
      out += m.str();
    }
  }
  return out;
}

Poly parse_poly(std::string_view text) {
  Cursor c{text};
  if (c.peek() == '0') {
    Cursor probe = c;
    probe.i++;
    if (probe.done()) return Poly();
  }
  Poly p = parse_poly_cursor(c);
  if (!c.done()) bad("trailing characters in polynomial", text);
  return p;
}

Poly substitute(const Poly& p, const std::function<const Poly*(Symbol)>& image) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Poly term(c);
    for (const auto& [s, e] : m.factors()) {
      const Poly* img = image(s);
      if (!img) {
        term = term * Poly(s, e);
        continue;
      }
      if (e < 0) throw std::invalid_argument("cannot substitute a negative power of " + s.name());
      for (int i = 0; i < e; ++i) term = term * *img;
    }
    out += term;
  }
  return out;
}

Poly expand_compressed(const Poly& p) {
  std::vector<std::pair<Symbol, Poly>> memo;
  return substitute(p, [&memo](Symbol s) -> const Poly* {
    if (s.kind() != SymbolKind::D) return nullptr;
    for (const auto& [key, value] : memo)
      if (key == s) return &value;
    const int sign = s.n() % 2 == 0 ? -1 : 1;
    memo.emplace_back(s, Poly(Symbol::S(s.k(), s.n())) + Poly(Symbol::S(-s.k(), s.n())) * Rational(sign));
    return &memo.back().second;
  });
}

// ---------------------------------------------------------------------------

TruncatedSeries TruncatedSeries::zero(int bound) { return TruncatedSeries(bound + 1, bound, {}); }

TruncatedSeries TruncatedSeries::constant(const Poly& c, int bound) { return TruncatedSeries(0, bound, {c}); }

TruncatedSeries::TruncatedSeries(int min_power, int bound, std::vector<Poly> coeffs)
    : min_(min_power), bound_(bound), c_(std::move(coeffs)) {
  const int keep = std::max(0, bound_ - min_ + 1);
  if (static_cast<int>(c_.size()) > keep) c_.resize(keep);
  normalize();
}

void TruncatedSeries::normalize() {
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    min_ = bound_ + 1;
    return;
  }
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    min_ += static_cast<int>(lead);
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly TruncatedSeries::coefficient(int e) const {
  if (e > bound_)
    throw std::out_of_range("coefficient of eps^" + std::to_string(e) + " beyond bound " + std::to_string(bound_));
  const int idx = e - min_;
  if (idx < 0 || idx >= static_cast<int>(c_.size())) return Poly();
  return c_[idx];
}

TruncatedSeries TruncatedSeries::truncated(int bound) const {
  if (bound >= bound_) return *this;
  return TruncatedSeries(min_, bound, c_);
}

TruncatedSeries TruncatedSeries::shifted(int k) const { return TruncatedSeries(min_ + k, bound_ + k, c_); }

TruncatedSeries TruncatedSeries::scaled(const Poly& c) const {
  std::vector<Poly> out;
  out.reserve(c_.size());
  for (const auto& x : c_) out.push_back(x * c);
  return TruncatedSeries(min_, bound_, std::move(out));
}

std::string TruncatedSeries::str() const {
  std::ostringstream out;
  out << "series(min=" << min_ << ", bound=" << bound_ << "){";
  for (std::size_t i = 0; i < c_.size(); ++i) out << (i ? "; " : "") << c_[i].str();
  out << "}";
  return out.str();
}

TruncatedSeries parse_series(std::string_view text) {
  Cursor c{text};
  auto expect = [&](std::string_view word) {
    c.skip();
    if (c.s.substr(c.i, word.size()) != word) bad("malformed series", text);
    c.i += word.size();
  };
  expect("series(min=");
  const int min_power = static_cast<int>(c.integer());
  expect(",");
  expect("bound=");
  const int bound = static_cast<int>(c.integer());
  expect("){");
  std::vector<Poly> coeffs;
  while (!c.eat('}')) {
    if (!coeffs.empty() && !c.eat(';')) bad("expected ';'", text);
    if (c.peek() == '0') {
      Cursor probe = c;
      probe.i++;
      const char next = probe.peek();
      if (next == ';' || next == '}') {
        c = probe;
        coeffs.emplace_back();
        continue;
      }
    }
    coeffs.push_back(parse_poly_cursor(c));
  }
  if (!c.done()) bad("trailing characters in series", text);
  return TruncatedSeries(min_power, bound, std::move(coeffs));
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int bound = std::min(a.bound(), b.bound());
  const int lo = std::min(a.min_power(), b.min_power());
  if (lo > bound) return TruncatedSeries::zero(bound);
  std::vector<Poly> out(static_cast<std::size_t>(bound - lo + 1));
  for (int e = lo; e <= bound; ++e) out[e - lo] = a.coefficient(e) + b.coefficient(e);
  return TruncatedSeries(lo, bound, std::move(out));
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int bound = std::min(a.min_power() + b.bound(), b.min_power() + a.bound());
  if (a.is_zero() || b.is_zero()) return TruncatedSeries::zero(bound);
  const int lo = a.min_power() + b.min_power();
  if (lo > bound) return TruncatedSeries::zero(bound);
  std::vector<Poly> out(static_cast<std::size_t>(bound - lo + 1));
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  for (std::size_t i = 0; i < ca.size(); ++i)
    for (std::size_t j = 0; j < cb.size(); ++j) {
      const int e = lo + static_cast<int>(i + j);
      if (e > bound) break;
      out[e - lo] += ca[i] * cb[j];
    }
  return TruncatedSeries(lo, bound, std::move(out));
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b, int required_bound) {
  TruncatedSeries r = series_mul(a, b);
  if (r.bound() < required_bound)
    throw std::invalid_argument("product reliable only through eps^" + std::to_string(r.bound()) +
                                ", requested eps^" + std::to_string(required_bound));
  return r.truncated(required_bound);
}

TruncatedSeries series_exp(const TruncatedSeries& a) {
  if (!a.is_zero() && a.min_power() < 1) throw std::invalid_argument("constant part must be extracted as a unit");
  const int bound = a.bound();
  if (bound < 0) return TruncatedSeries::zero(bound);
  // m E_m = sum_{n>=1} n a_n E_{m-n}
  std::vector<Poly> e(static_cast<std::size_t>(bound + 1));
  e[0] = Poly(1);
  for (int m = 1; m <= bound; ++m) {
    Poly acc;
    for (int n = std::max(1, a.min_power()); n <= m; ++n) {
      const Poly an = a.coefficient(n);
      if (an.is_zero() || e[m - n].is_zero()) continue;
      acc += (an * e[m - n]) * Rational(n);
    }
    e[m] = acc * Rational(1, m);
  }
  return TruncatedSeries(0, bound, std::move(e));
}

}  // namespace l2cert
