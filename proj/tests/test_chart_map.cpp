#include "monores/chart_map.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace monores;
using testutil::P;

namespace {

ChartMap random_map(std::mt19937_64& rng, int n, bool with_quasi) {
  ChartMap map(n);
  std::uniform_int_distribution<int> kind(0, with_quasi ? 2 : 1), axis(0, n - 1);
  int steps = 1 + static_cast<int>(rng() % 3);
  for (int s = 0; s < steps; ++s) {
    int k = n == 1 ? 0 : kind(rng);
    if (k == 0) {
      Matrix A;
      do {
        A.assign(n, Vector(n));
        for (auto& row : A) {
          for (auto& v : row) v = Rational(static_cast<int>(rng() % 5) - 2);
        }
      } while (sgn(determinant(A)) == 0);
      map.push_back(AffineStep{A, testutil::random_point(rng, n)});
    } else if (k == 1) {
      int j = axis(rng), l = axis(rng);
      if (j == l) l = (l + 1) % n;
      map.push_back(BlowupStep{j, l});
    } else {
      int ax = axis(rng);
      Series a(n);
      for (int i = 0; i < n; ++i) {
        if (i == ax) continue;
        Exponent e(n, 0);
        e[i] = 1 + static_cast<int>(rng() % 2);
        a.add_term(e, testutil::random_rational(rng, 3));
      }
      map.push_back(QuasiStep{ax, a});
    }
  }
  return map;
}

}  // namespace

TEST_CASE("compose_chart examples") {
  ChartMap blow(2);
  blow.push_back(BlowupStep{0, 1});
  CHECK(compose_chart(P("x1^2*x2", 2), blow) == P("x1^2*x2^3", 2));

  ChartMap quasi(2);
  quasi.push_back(QuasiStep{1, P("-x1", 2)});
  CHECK(compose_chart(P("x2^2 + 2*x1*x2", 2), quasi, 4) == P("x2^2 - x1^2", 2));

  ChartMap id(2);
  id.push_back(AffineStep{identity_matrix(2), Vector{0, 0}});
  auto s = P("x1^3 - 7/2*x1*x2 + 1", 2);
  CHECK(compose_chart(s, id) == s);
}

TEST_CASE("chart map validation") {
  ChartMap m(2);
  CHECK_THROWS(m.push_back(AffineStep{Matrix{{1, 1}, {1, 1}}, Vector{0, 0}}));
  CHECK_THROWS(m.push_back(BlowupStep{1, 1}));
  CHECK_THROWS(m.push_back(QuasiStep{1, P("1 + x1", 2)}));
  CHECK_THROWS(m.push_back(QuasiStep{1, P("x2^2", 2)}));
}

TEST_CASE("jacobian examples") {
  ChartMap blow(2);
  blow.push_back(BlowupStep{0, 1});
  CHECK(jacobian(blow, Vector{Rational(3), Rational(5, 7)}).det == Rational(5, 7));

  ChartMap quasi(2);
  quasi.push_back(QuasiStep{1, P("x1^2 - 3*x1", 2)});
  CHECK(jacobian(quasi, Vector{Rational(2), Rational(-1)}).det == 1);

  ChartMap aff(2);
  aff.push_back(AffineStep{Matrix{{2, 1}, {0, 3}}, Vector{1, 1}});
  CHECK(jacobian(aff, Vector{Rational(0), Rational(0)}).det == 6);
}

TEST_CASE("inverse stages undo the map") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 100; ++it) {
    int n = 2 + it % 2;
    auto map = random_map(rng, n, true);
    auto x = testutil::random_point(rng, n, true);
    auto y = map.apply(x);
    auto stages = map.inverse_stages(y);
    if (!stages) continue;
    CHECK(stages->back() == x);
  }
}

TEST_CASE("property: composition matches pointwise evaluation") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 100; ++it) {
    int n = 1 + it % 3;
    auto s = testutil::random_series(rng, n, 4, 4);
    auto map = random_map(rng, n, true);
    auto composed = compose_chart(s, map);
    auto x = testutil::random_point(rng, n);
    CHECK(composed.evaluate(x) == s.evaluate(map.apply(x)));
  }
}

TEST_CASE("property: composition distributes over + and *") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 60; ++it) {
    int n = 1 + it % 3;
    auto a = testutil::random_series(rng, n, 4, 4);
    auto b = testutil::random_series(rng, n, 4, 4);
    auto map = random_map(rng, n, true);
    const int T = 6;
    auto sum = compose_chart(a + b, map, T);
    CHECK(sum == (compose_chart(a, map, T) + compose_chart(b, map, T)).truncated(T));
    auto prod = compose_chart(a * b, map, T);
    CHECK(prod == compose_chart(a, map, T).multiply(compose_chart(b, map, T)).truncated(T));
  }
}

TEST_CASE("property: jacobian matches finite differences") {
  std::mt19937_64 rng(19);
  const double h = 1e-5;
  for (int it = 0; it < 100; ++it) {
    int n = 2 + it % 2;
    auto map = random_map(rng, n, true);
    auto x = testutil::random_point(rng, n);
    auto exact = jacobian(map, x);
    std::vector<std::vector<double>> J(n, std::vector<double>(n));
    for (int c = 0; c < n; ++c) {
      Vector xp = x, xm = x;
      xp[c] += rational_from_double(h);
      xm[c] -= rational_from_double(h);
      auto fp = map.apply(xp), fm = map.apply(xm);
      for (int r = 0; r < n; ++r) J[r][c] = (to_double(fp[r]) - to_double(fm[r])) / (2 * h);
    }
    Matrix Jq(n, Vector(n));
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) Jq[r][c] = rational_from_double(J[r][c]);
    }
    double fd = to_double(determinant(Jq));
    double ex = to_double(exact.det);
    double scale = std::max(1.0, std::abs(ex));
    CHECK(std::abs(fd - ex) / scale <= 1e-6);
    auto series = jacobian_determinant_series(map);
    CHECK(series.evaluate(x) == exact.det);
  }
}
