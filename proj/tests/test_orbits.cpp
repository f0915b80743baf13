#include "doctest.h"

#include <fstream>
#include <sstream>

#include "l2cert/orbits.hpp"

using namespace l2cert;

namespace {

RationalWeight from_ints(const std::vector<int>& v) {
  RationalWeight w(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) w(static_cast<Eigen::Index>(i)) = v[i];
  return w;
}

// lambda0 from an expression such as "rho-w4-w6" or "w1+w4".
RationalWeight parse_expr(const std::string& expr, int rank) {
  RationalWeight w = RationalWeight::Constant(rank, Rational(0));
  int sign = 1;
  for (std::size_t i = 0; i < expr.size();) {
    if (expr[i] == '+') { sign = 1; ++i; continue; }
    if (expr[i] == '-') { sign = -1; ++i; continue; }
    if (expr.compare(i, 3, "rho") == 0) {
      for (int k = 0; k < rank; ++k) w(k) += sign;
      i += 3;
      continue;
    }
    REQUIRE(expr[i] == 'w');
    const int node = expr[i + 1] - '0';
    w(node - 1) += sign;
    i += 2;
  }
  return w;
}

}  // namespace

TEST_CASE("catalog sizes and first rows") {
  CHECK(catalog("E6").size() == 3);
  CHECK(catalog("E7").size() == 6);
  CHECK(catalog("E8").size() == 11);
  CHECK(catalog("F4").size() == 4);
  CHECK(catalog("G2").empty());
  const auto& e6 = catalog("E6").front();
  CHECK(e6.marking_string() == "200202");
  CHECK(e6.label == "A2");
  CHECK(e6.lambda1_hint == std::vector<int>{-1, 4, -1, -1, -1, -1});
  const auto& f4 = catalog("F4").front();
  CHECK(f4.marking_string() == "0020");
  CHECK(f4.expected_ord->value == 2);
  CHECK(f4.expected_counts->str() == "23/24/9");
  const auto& e8 = catalog("E8").front();
  CHECK(*e8.expected_wrel == 241920);
  CHECK(e8.expected_ord->upper_bound);
  CHECK(e8.expected_ord->str() == "<=3");
}

TEST_CASE("markings agree with the lambda0 expressions") {
  for (const char* type : {"E6", "E7", "E8", "F4"}) {
    const RootSystem rs = build_root_system(type);
    for (const auto& e : catalog(type)) {
      CHECK_MESSAGE(parse_expr(e.lambda0_expr, rs.rank) == e.lambda0(), e.label);
      CHECK(dominant_representative(rs, from_ints(e.lambda1_hint)).first == e.lambda0());
    }
  }
}

TEST_CASE("every lambda1 hint is a line candidate") {
  for (const char* type : {"E6", "E7", "E8", "F4"}) {
    const RootSystem rs = build_root_system(type);
    for (const auto& e : catalog(type)) {
      const RationalWeight hint = from_ints(e.lambda1_hint);
      if (e.is_rho_row()) {
        CHECK(normalize_to_line(rs, e.lambda0()).lambda1 == hint);
        continue;
      }
      bool found = false;
      for (const auto& c : line_candidates(rs, e.lambda0())) {
        CHECK(apply_word(rs, c.witness, c.lambda1) == e.lambda0());
        if (c.lambda1 == hint) {
          found = true;
          CHECK(c.coset_count == *e.expected_wrel);
        }
      }
      CHECK_MESSAGE(found, type, " ", e.label);
    }
  }
}

TEST_CASE("normalize_to_line agrees with the hints except where a smaller coset set exists") {
  int agree = 0;
  for (const char* type : {"E6", "E7", "E8", "F4"}) {
    const RootSystem rs = build_root_system(type);
    for (const auto& e : catalog(type)) {
      const LineSpec line = normalize_to_line(rs, e.lambda0());
      CHECK(apply_word(rs, line.witness, line.lambda1) == e.lambda0());
      CHECK(line.lambda2 == rs.fundamental_weight(line.j));
      CHECK_NOTHROW(to_int_weight(line.lambda1));
      if (line.lambda1 == from_ints(e.lambda1_hint)) {
        ++agree;
      } else {
        CHECK(std::string(type) == "E7");
        CHECK(line.j == 6);
        CHECK(line.coset_count == 56);
        CHECK(line.coset_count < *e.expected_wrel);
      }
    }
  }
  CHECK(agree == 22);
}

TEST_CASE("normalize_to_line examples") {
  const RootSystem e6 = build_root_system("E6");
  RationalWeight l0 = RationalWeight::Constant(6, Rational(0));
  l0(0) = l0(3) = l0(5) = 1;
  LineSpec line = normalize_to_line(e6, l0);
  CHECK(line.j == 1);
  CHECK(line.s == Rational(5, 2));

  const RootSystem e8 = build_root_system("E8");
  RationalWeight rho_minus = e8.rho();
  rho_minus(3) = 0;
  line = normalize_to_line(e8, rho_minus);
  CHECK(line.j == 7);
  CHECK(line.s == Rational(5, 2));

  line = normalize_to_line(e8, e8.rho());
  CHECK(line.j == 7);
  CHECK(line.s == 0);
  CHECK(line.coset_count == 240);
}

TEST_CASE("normalize_to_line failures") {
  const RootSystem a2 = build_root_system("A2");
  RationalWeight l0(2);
  l0 << 5, 0;
  CHECK_THROWS_WITH(normalize_to_line(a2, l0), "no maximal-parabolic line found");
  l0 << -1, 0;
  CHECK_THROWS_AS(normalize_to_line(a2, l0), std::invalid_argument);
}

TEST_CASE("line from explicit lambda1") {
  const RootSystem f4 = build_root_system("F4");
  const LineSpec line = line_from_lambda1(f4, 2, from_ints({-1, -1, 1, -1}));
  CHECK(line.s == 1);
  CHECK_THROWS_AS(line_from_lambda1(f4, 2, from_ints({0, -1, 1, -1})), std::invalid_argument);
}

TEST_CASE("marking parsing") {
  CHECK(parse_marking("200202", 6) == std::vector<int>{2, 0, 0, 2, 0, 2});
  CHECK(parse_marking("2,0,1,0", 4) == std::vector<int>{2, 0, 1, 0});
  CHECK(marking_warnings({2, 0, 1, 0}).size() == 1);
  CHECK_THROWS_AS(parse_marking("2002", 6), std::invalid_argument);
  CHECK_THROWS_AS(parse_marking("2x02", 4), std::invalid_argument);
  CHECK(find_by_marking("E8", "00020022")->label == "D4(a1)");
  CHECK(find_by_label("e8", "d4(a1)+a2")->marking_string() == "00020002");
}

TEST_CASE("catalog export matches the checked-in data file") {
  std::ifstream in(L2CERT_DATA_DIR "/catalog.tsv");
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == catalog_tsv());
}
