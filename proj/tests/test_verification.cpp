#include "doctest.h"
#include "monores/atlas_json.hpp"
#include "test_util.hpp"

using namespace monores;
using testutil::P;

namespace {

bool has_failure(const Report& r, const std::string& check) {
  for (const auto& f : r.failures) {
    if (f.check == check) return true;
  }
  return false;
}

Atlas hyperbola() { return resolve(P("x1^2 - x2^2", 2), EngineConfig{}); }

}  // namespace

TEST_CASE("cover_check: a monomial input is covered by its identity chart") {
  Atlas a = resolve(P("x1*x2", 2), EngineConfig{});
  CoverReport c = cover_check(a, 500, Rational(1, 4), 42);
  CHECK(c.samples == 500);
  CHECK(c.covered == 500);
  CHECK(c.overlaps == 0);
  for (const auto& h : c.hits) {
    CHECK(h.original == h.local);
    for (const auto& x : h.original) {
      CHECK(sgn(x) != 0);
      CHECK(abs(x) < Rational(1, 4));
    }
  }
}

TEST_CASE("cover_check is reproducible") {
  Atlas a = hyperbola();
  CoverReport x = cover_check(a, 200, std::nullopt, 9);
  CoverReport y = cover_check(a, 200, std::nullopt, 9);
  CHECK(x.covered == y.covered);
  REQUIRE(x.hits.size() == y.hits.size());
  for (std::size_t i = 0; i < x.hits.size(); ++i) CHECK(x.hits[i].original == y.hits[i].original);
}

TEST_CASE("finite-difference Jacobian agrees with the recorded factorization") {
  Atlas a = hyperbola();
  std::mt19937_64 rng(1);
  for (const auto& c : a.charts) {
    for (int t = 0; t < 5; ++t) {
      Vector w = sample_cube_point(rng, 2, Rational(1, 2), Norm::real());
      CHECK(jacobian_relative_error(c, w) <= 1e-6);
    }
  }
}

TEST_CASE("corrupted charts are caught") {
  const Series f = P("x1^2 - x2^2", 2);
  Atlas a = hyperbola();
  REQUIRE(atlas_verify(a, f, 300, 4).ok());

  SUBCASE("wrong unit") {
    a.charts[0].f.unit += P("x1", 2);
    CHECK(has_failure(atlas_verify(a, f, 300, 4), "factorization"));
  }
  SUBCASE("wrong Jacobian") {
    a.charts[0].jacobian.monomial.coeff *= 2;
    Report r = atlas_verify(a, f, 300, 4);
    CHECK(has_failure(r, "jacobian factorization"));
    CHECK(has_failure(r, "jacobian"));
  }
  SUBCASE("dropped chart") {
    std::size_t pick = 0;
    for (std::size_t i = 0; i < a.charts.size(); ++i) {
      if (a.charts[i].kind == "region") pick = i;
    }
    a.charts.erase(a.charts.begin() + static_cast<long>(pick));
    CHECK(has_failure(atlas_verify(a, f, 300, 4), "coverage"));
  }
  SUBCASE("duplicated chart") {
    a.charts.push_back(a.charts.back());
    CHECK(has_failure(atlas_verify(a, f, 300, 4), "disjointness"));
  }
  SUBCASE("map step altered") {
    for (auto& c : a.charts) {
      if (c.map.size() == 0) continue;
      ChartMap m(2);
      m.push_back(AffineStep{Matrix{{Rational(2), Rational(0)}, {Rational(0), Rational(1)}}, Vector(2, Rational(0))});
      c.map = m.then(c.map);
      break;
    }
    CHECK(has_failure(atlas_verify(a, f, 300, 4), "factorization"));
  }
}

TEST_CASE("series json round trip keeps the truncation order") {
  Series s = P("1/3*x1*x2 - 7/2*x2^4 + 5", 2).truncated(3);
  Series back = series_from_json(series_to_json(s));
  CHECK(back == s);
  CHECK(back.trunc_order() == std::optional<int>(3));
  CHECK(series_from_json(series_to_json(P("x1", 2))).is_polynomial());
}

TEST_CASE("atlas json round trip re-verifies to the same report") {
  for (const auto& [text, n] : std::vector<std::pair<std::string, int>>{
           {"x1^2 - x2^2", 2}, {"x2^2 + 2*x1*x2 + x1^3", 2}, {"x1^3 + x2^3 + x3^3", 3}}) {
    CAPTURE(text);
    const Series f = P(text.c_str(), n);
    Atlas a = resolve(f, EngineConfig{});
    const Json j = atlas_to_json(a);
    CHECK(j.at("schema") == 1);
    Atlas b = atlas_from_json(Json::parse(j.dump()));
    CHECK(atlas_to_json(b).dump() == j.dump());
    Report ra = atlas_verify(a, f, 300, 8);
    Report rb = atlas_verify(b, b.input, 300, 8);
    CHECK(report_to_json(ra).dump() == report_to_json(rb).dump());
    CHECK(report_to_json(report_from_json(report_to_json(ra))).dump() == report_to_json(ra).dump());
  }
}

TEST_CASE("atlas json rejects other schema versions and missing fields") {
  Json j = atlas_to_json(resolve(P("x1*x2", 2), EngineConfig{}));
  Json wrong = j;
  wrong["schema"] = 2;
  CHECK_THROWS_AS(atlas_from_json(wrong), Error);
  Json missing = j;
  missing.erase("charts");
  CHECK_THROWS_AS(atlas_from_json(missing), Error);
}

TEST_CASE("acceptance fixtures") {
  CHECK(acceptance_fixtures().size() == 6);
  for (const auto& [text, n] : acceptance_fixtures()) CHECK_NOTHROW(parse_series(text, n));
}

TEST_CASE("fixture suite passes at the real and 2-adic places") {
  Report r = run_fixture_suite(Norm::real(), 300, 42);
  for (const auto& f : r.failures) MESSAGE(f.check << ": " << f.got);
  CHECK(r.ok());
  CHECK(run_fixture_suite(Norm::padic(2), 300, 42).ok());
}

TEST_CASE("oracle suites on a small batch") {
  CHECK(hull_suite(30, 5).ok());
  Report o = ordering_suite(30, 5);
  CHECK(o.ok());
  CHECK(o.cases == 30);
}
