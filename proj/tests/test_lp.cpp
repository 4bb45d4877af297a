#include "monores/lp.hpp"

#include <doctest.h>

using namespace monores;
using Rel = LinearProgram::Rel;

TEST_CASE("lp optimum, infeasible and unbounded") {
  // min -x - y s.t. x + 2y <= 4, 3x + y <= 6.
  LinearProgram lp(2);
  lp.add({1, 2}, Rel::LE, 4);
  lp.add({3, 1}, Rel::LE, 6);
  lp.objective = {-1, -1};
  auto r = solve(lp);
  REQUIRE(r.optimal());
  CHECK(r.value == Rational(-14, 5));
  CHECK(r.x[0] == Rational(8, 5));
  CHECK(r.x[1] == Rational(6, 5));

  LinearProgram bad(1);
  bad.add({1}, Rel::GE, 2);
  bad.add({1}, Rel::LE, 1);
  CHECK(solve(bad).status == LpResult::Status::Infeasible);

  LinearProgram open(1);
  open.add({1}, Rel::GE, 2);
  open.objective = {-1};
  CHECK(solve(open).status == LpResult::Status::Unbounded);
}

TEST_CASE("lp free variables and equalities") {
  // min t s.t. t >= x, t >= -x, x = -3/2, t free.
  LinearProgram lp(2);
  lp.free = {true, true};
  lp.add({-1, 1}, Rel::GE, 0);
  lp.add({1, 1}, Rel::GE, 0);
  lp.add({1, 0}, Rel::EQ, Rational(-3, 2));
  lp.objective = {0, 1};
  auto r = solve(lp);
  REQUIRE(r.optimal());
  CHECK(r.value == Rational(3, 2));
}

TEST_CASE("lp degenerate redundant equalities") {
  LinearProgram lp(3);
  lp.add({1, 1, 1}, Rel::EQ, 1);
  lp.add({2, 2, 2}, Rel::EQ, 2);
  lp.objective = {1, 2, 3};
  auto r = solve(lp);
  REQUIRE(r.optimal());
  CHECK(r.value == 1);
}
