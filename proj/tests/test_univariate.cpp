#include "doctest.h"
#include "monores/univariate.hpp"

#include <random>

using namespace monores;

namespace {

UPoly U(std::initializer_list<Rational> cs) {
  UPoly p(cs);
  trim(p);
  return p;
}

UPoly mul(const UPoly& a, const UPoly& b) {
  UPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

}  // namespace

TEST_CASE("divmod reconstructs the dividend") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-6, 6);
  for (int t = 0; t < 50; ++t) {
    UPoly a, b;
    for (int i = 0; i < 6; ++i) a.push_back(Rational(c(rng)));
    for (int i = 0; i < 3; ++i) b.push_back(Rational(c(rng)));
    b.push_back(Rational(1));
    trim(a);
    auto [q, r] = divmod(a, b);
    UPoly back = q.empty() ? UPoly{} : mul(q, b);
    back.resize(std::max(back.size(), r.size()), Rational(0));
    for (std::size_t i = 0; i < r.size(); ++i) back[i] += r[i];
    trim(back);
    CHECK(back == a);
    CHECK(degree(r) < degree(b));
  }
}

TEST_CASE("rational roots with multiplicity") {
  // (z - 1)^2 (z + 2) (2z - 1)
  UPoly p = mul(mul(U({-1, 1}), U({-1, 1})), mul(U({2, 1}), U({-1, 2})));
  auto roots = rational_roots(p);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == std::pair<Rational, int>(Rational(-2), 1));
  CHECK(roots[1] == std::pair<Rational, int>(Rational(1, 2), 1));
  CHECK(roots[2] == std::pair<Rational, int>(Rational(1), 2));
  CHECK(degree(squarefree_remainder(p, roots)) == 0);

  // z (z^2 - 2): zero is not reported and the irrational pair stays.
  UPoly q = U({0, -2, 0, 1});
  CHECK(rational_roots(q).empty());
  CHECK(degree(gcd(q, derivative(q))) == 0);
}

TEST_CASE("Sturm counting and isolation of irrational roots") {
  UPoly p = U({-2, 0, 1});  // z^2 - 2
  CHECK(sturm_count(p, Rational(-2), Rational(2)) == 2);
  CHECK(sturm_count(p, Rational(0), Rational(2)) == 1);
  CHECK(sturm_count(p, Rational(2), Rational(3)) == 0);
  const Rational w(1, 32);
  auto iv = isolate_real_roots(p, Rational(-2), Rational(2), w);
  REQUIRE(iv.size() == 2);
  for (auto& [a, b] : iv) {
    CHECK(b - a <= w);
    CHECK(sgn(evaluate(p, a)) != sgn(evaluate(p, b)));
  }

  // 1 + z^3 with the rational root removed leaves z^2 - z + 1: no real roots.
  UPoly c = U({1, 0, 0, 1});
  auto r = rational_roots(c);
  REQUIRE(r.size() == 1);
  CHECK(r[0].first == -1);
  CHECK(isolate_real_roots(squarefree_remainder(c, r), Rational(-2), Rational(2), w).empty());
}

TEST_CASE("p-adic root residues") {
  // z^2 + 7: every odd residue mod 8 is a root mod 8 (-7 is a 2-adic square).
  auto r = padic_root_residues(U({7, 0, 1}), 2, 3);
  CHECK(r == std::vector<Rational>{1, 3, 5, 7});
  // z^2 + 1 has no 3-adic root.
  CHECK(padic_root_residues(U({1, 0, 1}), 3, 2).empty());
  // Rational coefficients are cleared first: z/2 - 1 has the root 2.
  auto s = padic_root_residues(U({-1, Rational(1, 2)}), 5, 2);
  CHECK(s == std::vector<Rational>{2});
}
