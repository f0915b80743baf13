#include "doctest.h"

#include <random>

#include "l2cert/series.hpp"

using namespace l2cert;

namespace {

Poly random_poly(std::mt19937& rng, int terms) {
  const std::vector<Symbol> pool = {Symbol::S(2, 1), Symbol::S(-2, 1), Symbol::D(3, 2), Symbol::G(1),
                                    Symbol::G(2),     Symbol::H(0),     Symbol::H(1)};
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1), coef(-9, 9), den(1, 4), exp(0, 2),
      unit(-2, 2);
  std::vector<Poly::Term> t;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (int f = 0; f < 3; ++f) m = m * Monomial(pool[pick(rng)], exp(rng));
    m = m * Monomial(Symbol::C(2), unit(rng));
    t.emplace_back(m, Rational(coef(rng), den(rng)));
  }
  return Poly::from_terms(t);
}

TruncatedSeries random_series(std::mt19937& rng, int min_power, int bound) {
  std::vector<Poly> c;
  for (int e = min_power; e <= bound; ++e) c.push_back(random_poly(rng, 3));
  return TruncatedSeries(min_power, bound, c);
}

// exp by the defining sum of powers, using only series_mul/series_add.
TruncatedSeries exp_by_powers(const TruncatedSeries& a) {
  TruncatedSeries sum = TruncatedSeries::constant(Poly(1), a.bound());
  TruncatedSeries power = sum;
  for (int k = 1; k <= a.bound(); ++k) {
    power = series_mul(power, a).scaled(Poly(Rational(1, k)));
    sum = series_add(sum, power);
  }
  return sum;
}

Rational value_of(Symbol s) {
  const auto key = s.key();
  return Rational(static_cast<long>(key % 7) + 2, static_cast<long>(key % 5) + 1);
}

}  // namespace

TEST_CASE("symbol keys and names round-trip") {
  for (Symbol s : {Symbol::S(-3, 2), Symbol::S(0, 5), Symbol::D(7, 1), Symbol::G(4), Symbol::C(11), Symbol::U(),
                   Symbol::H(3)}) {
    CHECK(parse_symbol(s.name()) == s);
    CHECK(Symbol::from_key(s.key()) == s);
  }
  CHECK(Symbol::S(-3, 2).k() == -3);
  CHECK(Symbol::H(3).name() == "H(4)");
  CHECK(Symbol::S(5, 1) < Symbol::G(1));
  CHECK_THROWS_AS(parse_symbol("X(1)"), std::invalid_argument);
}

TEST_CASE("basic polynomial identities") {
  const Poly c2(Symbol::C(2));
  CHECK(is_zero(c2 * Poly(Symbol::C(2), -1) - Poly(1)));
  CHECK_FALSE(is_zero(Poly(Symbol::G(1)) - Poly(Symbol::S(2, 1))));
  CHECK_THROWS_AS(Monomial(Symbol::G(1), -1), std::invalid_argument);
  CHECK(Poly(0).is_zero());
  CHECK((Poly(Symbol::H(0)) * Rational(3) + Poly(Rational(1, 2))).constant() == Rational(1, 2));
}

TEST_CASE("canonical form and ring axioms") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Poly a = random_poly(rng, 5), b = random_poly(rng, 4), c = random_poly(rng, 3);
    CHECK((a - a).is_zero());
    CHECK((a + b) == (b + a));
    CHECK((a * b) == (b * a));
    CHECK(((a * b) * c) == (a * (b * c)));
    CHECK((a * (b + c)) == (a * b + a * c));
    CHECK(parse_poly(a.str()) == a);
    CHECK(evaluate<Rational>(a * b + c, value_of) ==
          evaluate<Rational>(a, value_of) * evaluate<Rational>(b, value_of) + evaluate<Rational>(c, value_of));
  }
}

TEST_CASE("polynomial text form") {
  const Poly p = Poly(Symbol::D(2, 1), 2) * Rational(3, 2) - Poly(Symbol::C(3), -1) + Poly(1);
  CHECK(p.str() == "1 + 3/2*D(2,1)^2 - C(3)^-1");
  CHECK(parse_poly(p.str()) == p);
  CHECK(parse_poly("0").is_zero());
  CHECK(parse_poly("-H(1) + 2*H(1)") == Poly(Symbol::H(0)));
  CHECK_THROWS_AS(parse_poly("2*Q(1)"), std::invalid_argument);
}

TEST_CASE("series arithmetic examples") {
  const TruncatedSeries one_plus(0, 2, {Poly(1), Poly(1)});
  const TruncatedSeries one_minus(0, 2, {Poly(1), Poly(-1)});
  const TruncatedSeries prod = series_mul(one_plus, one_minus);
  CHECK(prod.bound() == 2);
  CHECK(prod.coefficient(0) == Poly(1));
  CHECK(prod.coefficient(1).is_zero());
  CHECK(prod.coefficient(2) == Poly(-1));

  const TruncatedSeries inv_eps(-1, 3, {Poly(1)});
  const TruncatedSeries eps(1, 5, {Poly(1)});
  const TruncatedSeries unit = series_mul(inv_eps, eps);
  CHECK(unit.min_power() == 0);
  CHECK(unit.coefficient(0) == Poly(1));

  const TruncatedSeries c(0, 3, {Poly(Symbol::C(2))});
  const TruncatedSeries cinv(0, 3, {Poly(Symbol::C(2), -1)});
  CHECK(series_mul(c, cinv) == TruncatedSeries::constant(Poly(1), 3));
}

TEST_CASE("multiplication bound rule") {
  std::mt19937 rng(3);
  const TruncatedSeries a = random_series(rng, -2, 3);
  const TruncatedSeries b = random_series(rng, 1, 2);
  const TruncatedSeries p = series_mul(a, b);
  CHECK(p.bound() == std::min(a.min_power() + b.bound(), b.min_power() + a.bound()));
  CHECK_THROWS_WITH_AS(series_mul(a, b, 5), doctest::Contains("reliable only through"), std::invalid_argument);
  CHECK_NOTHROW(series_mul(a, b, 0));
}

TEST_CASE("exp examples") {
  const TruncatedSeries g(1, 2, {Poly(Symbol::G(1))});
  const TruncatedSeries e = series_exp(g);
  CHECK(e.coefficient(0) == Poly(1));
  CHECK(e.coefficient(1) == Poly(Symbol::G(1)));
  CHECK(e.coefficient(2) == Poly(Symbol::G(1), 2) * Rational(1, 2));
  CHECK(series_exp(TruncatedSeries::zero(4)) == TruncatedSeries::constant(Poly(1), 4));
  CHECK_THROWS_WITH_AS(series_exp(TruncatedSeries(0, 3, {Poly(1)})), "constant part must be extracted as a unit",
                       std::invalid_argument);
}

TEST_CASE("exp properties") {
  std::mt19937 rng(5);
  for (int bound = 1; bound <= 4; ++bound) {
    const TruncatedSeries x(1, bound, {Poly(Symbol::G(1)), Poly(Symbol::D(2, 2))});
    const TruncatedSeries y(1, bound, {Poly(Symbol::H(0)), Poly(Symbol::S(0, 1))});
    CHECK(series_exp(series_add(x, y)) == series_mul(series_exp(x), series_exp(y)));
    const TruncatedSeries a = random_series(rng, 1, bound);
    CHECK(series_exp(a) == exp_by_powers(a));
    const TruncatedSeries neg = a.scaled(Poly(-1));
    CHECK(series_mul(series_exp(a), series_exp(neg)) == TruncatedSeries::constant(Poly(1), bound));
  }
}

TEST_CASE("specialisation commutes with series operations") {
  std::mt19937 rng(9);
  auto eval_series = [](const TruncatedSeries& s) {
    std::vector<Rational> out;
    for (int e = s.min_power(); e <= s.bound(); ++e) out.push_back(evaluate<Rational>(s.coefficient(e), value_of));
    return out;
  };
  auto specialise = [](const TruncatedSeries& s) {
    std::vector<Poly> c;
    for (int e = s.min_power(); e <= s.bound(); ++e) c.emplace_back(evaluate<Rational>(s.coefficient(e), value_of));
    return TruncatedSeries(s.min_power(), s.bound(), c);
  };
  for (int trial = 0; trial < 5; ++trial) {
    const TruncatedSeries a = random_series(rng, 1, 3), b = random_series(rng, 1, 3);
    CHECK(eval_series(series_exp(a)) == eval_series(series_exp(specialise(a))));
    CHECK(eval_series(series_mul(a, b)) == eval_series(series_mul(specialise(a), specialise(b))));
    CHECK(eval_series(series_add(a, b)) == eval_series(series_add(specialise(a), specialise(b))));
  }
}

TEST_CASE("series text round trip") {
  std::mt19937 rng(21);
  const TruncatedSeries a = random_series(rng, -1, 2);
  CHECK(parse_series(a.str()) == a);
  const TruncatedSeries z = TruncatedSeries::zero(3);
  CHECK(parse_series(z.str()) == z);
  const TruncatedSeries gap(0, 3, {Poly(1), Poly(), Poly(Symbol::U())});
  CHECK(parse_series(gap.str()) == gap);
}

TEST_CASE("compressed symbols expand to S form") {
  const Poly d = Poly(Symbol::D(3, 2)) * Poly(Symbol::D(2, 1));
  const Poly expected = (Poly(Symbol::S(3, 2)) - Poly(Symbol::S(-3, 2))) * (Poly(Symbol::S(2, 1)) + Poly(Symbol::S(-2, 1)));
  CHECK(expand_compressed(d) == expected);
  CHECK(expand_compressed(Poly(Symbol::C(2), -1)) == Poly(Symbol::C(2), -1));
}
