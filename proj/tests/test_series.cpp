#include "test_util.hpp"

#include <doctest.h>

using namespace monores;
using testutil::P;

TEST_CASE("parse_series examples") {
  auto s = P("x1^2*x2 + x2^3", 2);
  CHECK(s.size() == 2);
  CHECK(s.coeff({2, 1}) == 1);
  CHECK(s.coeff({0, 3}) == 1);
  CHECK(P("0", 3).is_zero());
  CHECK(P("3/2*x1 - 3/2*x1", 1).is_zero());
  CHECK(P(" - 2 * x1*x2 ^2 + 1/3", 2).to_string() == "1/3 - 2*x1*x2^2");
  CHECK(P("x1^2*x2 + x2^3", 2).to_string() == "x2^3 + x1^2*x2");
}

TEST_CASE("parse_series errors") {
  CHECK_THROWS_AS(P("x3", 2), ParseError);
  CHECK_THROWS_AS(P("x1 +", 2), ParseError);
  CHECK_THROWS_AS(P("", 2), ParseError);
  CHECK_THROWS_AS(P("1/0*x1", 2), ParseError);
  CHECK_THROWS_AS(P("x1^0", 2), ParseError);
  try {
    P("x1 + x7", 2);
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("evaluate examples") {
  Vector half{Rational(1, 2), Rational(1, 2)};
  auto r = P("x1^2 + x2^2", 2).evaluate(half, Norm::real());
  CHECK(r.value == Rational(1, 2));
  CHECK(r.log_abs == doctest::Approx(std::log(0.5)));
  auto p = P("x1", 1).evaluate(Vector{Rational(4)}, Norm::padic(2));
  CHECK(std::exp(p.log_abs) == doctest::Approx(0.25));
  CHECK(P("x1^2*x2", 2).evaluate(Vector{Rational(2), Rational(3)}) == 12);
  CHECK_THROWS(P("x1", 2).evaluate(Vector{Rational(1)}));
}

TEST_CASE("directional_derivative examples") {
  Vector ey{0, 1}, ex{1, 0}, diag{Rational(1, 2), Rational(1, 2)};
  CHECK(P("x2^3", 2).directional_derivative(ey, 3) == Series::constant(2, 6));
  CHECK(P("x1^2*x2", 2).directional_derivative(ex, 1) == P("2*x1*x2", 2));
  CHECK(P("x1^2 - x2^2", 2).directional_derivative(diag, 2).is_zero());
  CHECK(P("x1^3", 1).truncated(6).derivative(0).trunc_order() == 5);
}

TEST_CASE("factor_monomial examples") {
  auto [m, u] = factor_monomial(P("x1^2*x2^3 + x1^2*x2^5", 2));
  CHECK(m.exponents == Exponent{2, 3});
  CHECK(u == P("1 + x2^2", 2));
  auto [m2, u2] = factor_monomial(P("5*x1^7", 1));
  CHECK(m2.exponents == Exponent{7});
  CHECK(u2 == Series::constant(1, 5));
  auto [m3, u3] = factor_monomial(P("1 + x1", 1));
  CHECK(m3.exponents == Exponent{0});
  CHECK(u3 == P("1 + x1", 1));
  CHECK_THROWS(factor_monomial(Series(2)));
}

TEST_CASE("truncation bookkeeping") {
  auto s = P("1 + x1 + x1^2 + x1^3", 1).truncated(2);
  CHECK(s.trunc_order() == 2);
  CHECK(s.max_degree() == 2);
  auto t = P("x1", 1).truncated(4);
  // (1 + x + x^2 + O(x^3)) * (x + O(x^5)) is known through degree 3.
  CHECK(s.multiply(t).trunc_order() == 3);
  CHECK((s + t).trunc_order() == 2);
}

TEST_CASE("property: factor_monomial round trip") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    int n = 1 + it % 3;
    auto s = testutil::random_series(rng, n, 6, 5);
    if (s.is_zero()) continue;
    auto [m, u] = factor_monomial(s);
    CHECK(m.to_series() * u == s);
    for (int i = 0; i < n; ++i) {
      bool has_zero = false;
      for (const auto& [e, c] : u.terms()) has_zero = has_zero || e[i] == 0;
      CHECK(has_zero);
    }
  }
}

TEST_CASE("property: directional derivatives compose") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    int n = 1 + it % 3;
    auto s = testutil::random_series(rng, n, 5, 5);
    Vector beta = testutil::random_point(rng, n);
    int p = it % 4;
    Series step = s;
    for (int k = 0; k < p; ++k) step = step.directional_derivative(beta, 1);
    CHECK(step == s.directional_derivative(beta, p));
  }
}

TEST_CASE("property: canonical text round trips through the parser") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    int n = 1 + it % 4;
    auto s = testutil::random_series(rng, n, 5, 6);
    CHECK(P(s.to_string().c_str(), n) == s);
  }
}
