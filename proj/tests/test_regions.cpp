#include "doctest.h"
#include "monores/regions.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace monores;
using testutil::P;

namespace {

struct Setup {
  Polyhedron poly;
  FaceData fd;
  BlowupTree tree;
};

Setup setup(const std::string& text, int n) {
  Setup s;
  s.poly = build_polyhedron(P(text.c_str(), n));
  s.fd = FaceData::from(s.poly);
  s.tree = order_monomials(s.poly.vertices);
  return s;
}

Vector gamma_image(const BlowupTree& tree, int leaf, const Vector& w) {
  Vector x(tree.n);
  for (int l = 0; l < tree.n; ++l) {
    Exponent e = tree.leaves[leaf].map.component(l);
    Rational g = 1;
    for (int m = 0; m < tree.n; ++m) g *= rational_pow(w[m], static_cast<unsigned long>(e[m]));
    x[l] = g;
  }
  return x;
}

}  // namespace

TEST_CASE("constants follow the growth recursion") {
  auto a = choose_constants(2, 3);
  REQUIRE(a.C.size() == 2);
  CHECK(a.C[0] == 4);
  CHECK(a.C[1] == 65);
  auto b = choose_constants(3, 2);
  CHECK(b.C == Vector{Rational(3), Rational(10), Rational(101)});
  CHECK_THROWS_AS(choose_constants(2, 1), Error);
  CHECK(a.c(0) == 1);
  CHECK(a.c(2) == 65);
}

TEST_CASE("classification examples") {
  auto s = setup("x1^3 + x2^3", 2);
  auto rc = choose_constants(2, 4);
  const Norm real = Norm::real();
  const Rational t = Rational(1, 1000000);
  auto edge = classify_point({t, t}, rc, s.fd, real);
  REQUIRE(edge);
  CHECK(edge->first == 1);
  auto vert = classify_point({t, rational_pow(t, 100)}, rc, s.fd, real);
  REQUIRE(vert);
  CHECK(vert->first == 0);
  const Face& vf = s.fd.faces[s.fd.find(0, vert->second)];
  CHECK(vf.vertices.front() == Exponent{3, 0});
  CHECK_THROWS_AS(classify_point({Rational(1, 2), t}, rc, s.fd, real), Error);
  CHECK_THROWS_AS(classify_point({Rational(0), t}, rc, s.fd, real), Error);
  CHECK_FALSE(classify_in_E({Rational(1, 2), t}, rc, s.fd, real).has_value());

  // Boundary tie: |y| = C_1^{-1} |x| exactly is accepted by the >= comparison.
  auto lin = setup("x1 + x2", 2);
  const Rational u(1, 1024);
  auto c2 = classify_point({u, u / rc.C[0]}, rc, lin.fd, real);
  REQUIRE(c2);
  CHECK(c2->first == 1);
  auto c3 = classify_point({u, u / rc.C[0] / 2}, rc, lin.fd, real);
  REQUIRE(c3);
  CHECK(c3->first == 0);
}

TEST_CASE("classification is deterministic and total") {
  auto s = setup("x1^2*x2 + x2^3 + x1^4", 2);
  auto rc = choose_constants(2, 4);
  for (const Norm& norm : {Norm::real(), Norm::padic(2)}) {
    std::mt19937_64 a(42), b(42);
    for (int r = 0; r < 2000; ++r) {
      Vector x = sample_E_point(a, 2, rc.C.back(), norm);
      Vector y = sample_E_point(b, 2, rc.C.back(), norm);
      REQUIRE(x == y);
      auto c = classify_point(x, rc, s.fd, norm);
      REQUIRE(c.has_value());
      CHECK(c == classify_point(y, rc, s.fd, norm));
    }
  }
}

TEST_CASE("sampled points lie in E with the requested valuations") {
  auto rc = choose_constants(2, 4);
  std::mt19937_64 rng(7);
  const Rational bound = 1 / rc.C.back();
  for (int r = 0; r < 200; ++r) {
    for (const auto& v : sample_E_point(rng, 2, rc.C.back(), Norm::real())) {
      CHECK(abs(v) < bound);
      CHECK(abs(v) >= bound * bound / 2);
    }
    for (const auto& v : sample_E_point(rng, 2, rc.C.back(), Norm::padic(2))) {
      CHECK(Norm::padic(2).compare_radius(v, bound) < 0);
    }
  }
}

TEST_CASE("domination theorem inclusions on fixtures") {
  for (const char* f : {"x1^2 - x2^2", "x1^2*x2 + x2^3", "x2^2 + 2*x1*x2 + x1^3", "x1^2 + x2^2"}) {
    auto s = setup(f, 2);
    for (const Norm& norm : {Norm::real(), Norm::padic(2)}) {
      auto [rc, rep] = adaptive_constants(s.fd, 3000, 42, norm);
      CAPTURE(f);
      CAPTURE(norm.name());
      CHECK(rep.ok());
      CHECK(rep.mu_hat > 0);
      CHECK(rc.N <= 64);
    }
  }
  auto s3 = setup("x1^3 + x2^3 + x3^3", 3);
  auto [rc, rep] = adaptive_constants(s3.fd, 3000, 42, Norm::real());
  CHECK(rep.ok());
  CHECK(s3.fd.faces.size() == 7);
}

TEST_CASE("region descriptions for x^2 y + y^3") {
  auto s = setup("x1^2*x2 + x2^3", 2);
  auto descs = region_descriptions(s.tree, s.fd);
  REQUIRE(s.tree.leaves.size() == 2);
  const int edge = s.fd.find(1, 0);
  REQUIRE(edge >= 0);
  int found = 0;
  for (const auto& d : descs) {
    if (d.face != edge) continue;
    ++found;
    if (s.tree.leaves[d.k].map.apply({2, 1}) == Exponent{2, 3}) {
      CHECK(d.p_exponent == Exponent{2, 0});
      CHECK(d.z_vars == std::vector<int>{0});
      CHECK(d.y_vars == std::vector<int>{1});
      CHECK(d.alpha == Exponent{3});
    } else {
      CHECK(d.p_exponent == Exponent{0, 2});
      CHECK(d.alpha == Exponent{3});
    }
    CHECK(d.q_exponent.empty());
    CHECK_FALSE(d.empty);
  }
  CHECK(found == 2);
  for (const auto& d : descs) {
    if (d.i == 0) {
      CHECK(d.p_exponent.empty());
      CHECK(d.y_vars.size() == 2);
      if (!d.empty) CHECK(d.s_exponent == d.q_exponent);
    }
  }
}

TEST_CASE("region description invariants on random polyhedra") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    std::vector<Exponent> gens;
    const int m = 2 + static_cast<int>(rng() % 3);
    for (int g = 0; g < m; ++g) {
      Exponent e(n);
      for (auto& v : e) v = static_cast<int>(rng() % 5);
      if (total_degree(e) == 0) e[0] = 1;
      gens.push_back(e);
    }
    auto poly = build_polyhedron(n, gens);
    auto fd = FaceData::from(poly);
    auto tree = order_monomials(poly.vertices);
    for (const auto& d : region_descriptions(tree, fd)) {
      if (d.empty) continue;
      const auto& em = tree.leaves[d.k].map;
      const auto on = fd.face_vertex_indices(d.face);
      std::vector<char> mark(fd.vertices.size(), 0);
      for (int v : on) mark[v] = 1;
      for (std::size_t v = 0; v < fd.vertices.size(); ++v) {
        Exponent img = em.apply(fd.vertices[v]);
        Exponent ypart;
        for (int l : d.y_vars) ypart.push_back(img[l]);
        if (mark[v]) {
          CHECK(ypart == d.alpha);
        } else {
          CHECK(ypart > d.alpha);
        }
      }
      if (d.i > 0) {
        for (int l : d.z_vars) CHECK(d.p_exponent[l] > 0);
        for (int l : d.y_vars) CHECK(d.p_exponent[l] == 0);
      }
      if (!d.q_exponent.empty()) {
        CHECK(d.s_exponent.size() + d.t_exponent.size() == static_cast<std::size_t>(n));
        CHECK(total_degree(d.s_exponent) > 0);
      }
    }
  }
}

TEST_CASE("z floor and region membership on samples") {
  auto s = setup("x1^2 - x2^2 + x1^5", 2);
  auto [rc, rep] = adaptive_constants(s.fd, 2000, 1, Norm::real());
  REQUIRE(rep.ok());
  auto descs = region_descriptions(s.tree, s.fd);
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int r = 0; r < 3000; ++r) {
    Vector x = sample_E_point(rng, 2, rc.C.back(), Norm::real());
    auto cls = classify_point(x, rc, s.fd, Norm::real());
    auto [leaf, w] = s.tree.locate(x, Norm::real());
    CHECK(gamma_image(s.tree, leaf, w) == x);
    CHECK(region_contains(s.tree, leaf, s.fd, rc, cls->first, cls->second, w, Norm::real()));
    for (const auto& d : descs) {
      if (d.k != leaf || d.i != cls->first || d.j != cls->second) continue;
      CHECK_FALSE(d.empty);
      for (int l : d.z_vars) {
        const double floor = -rc.log_c(d.i) / d.p_exponent[l];
        CHECK(log_abs_real(w[l]) >= floor - 1e-12);
        ++checked;
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("tail bound diagnostic") {
  auto s = setup("x1^3 + x2^3 + x1^2*x2^2", 2);
  auto rc = choose_constants(2, 4);
  rc.eta_estimate = 0.5;
  const Rational t(1, 100000);
  const int edge = s.fd.find(1, 0);
  CHECK(tail_bound_check(P("x1^3 + x2^3 + x1^2*x2^2", 2), s.fd, edge, 0, {t, t}, rc, Norm::real()));
  CHECK(tail_bound_check(P("x1^3 + x2^3", 2), s.fd, edge, 1, {t, t}, rc, Norm::real()));
  auto mono = setup("x1^2*x2", 2);
  CHECK(tail_bound_check(P("x1^2*x2", 2), mono.fd, 0, 0, {t, t}, rc, Norm::real()));
}

TEST_CASE("rational direction set") {
  auto dirs = rational_directions(2, {0, 1}, 3);
  REQUIRE(dirs.size() > 4);
  CHECK(dirs[0] == Vector{Rational(0), Rational(1)});
  CHECK(dirs[1] == Vector{Rational(1), Rational(0)});
  for (const auto& b : dirs) {
    Rational t = 0;
    for (const auto& c : b) t += abs(c);
    CHECK(t == 1);
  }
  auto one = rational_directions(3, {2}, 3);
  CHECK(one.size() == 2);  // e_3 and -e_3
}

TEST_CASE("derivative witnesses") {
  auto s = setup("x1^2 - x2^2", 2);
  auto [rc, rep] = adaptive_constants(s.fd, 2000, 1, Norm::real());
  auto descs = region_descriptions(s.tree, s.fd);
  for (const auto& d : descs) {
    if (d.empty) continue;
    auto chart = s.tree.chart_map(d.k);
    Series F = factor_monomial(compose_chart(P("x1^2 - x2^2", 2), chart)).second;
    auto w = derivative_witness(d, s.tree, s.fd, rc, F, 1, 40, 5, Norm::real());
    REQUIRE(w.has_value());
    CHECK(w->delta > 0);
    CHECK(w->order <= 1);
    if (d.i == 0) CHECK(w->order == 0);
    if (d.i > 0) {
      // The first derivative along z is bounded below on the region.
      auto w1 = derivative_witness(d, s.tree, s.fd, rc, F.derivative(d.z_vars[0]), 0, 40, 5, Norm::real());
      REQUIRE(w1.has_value());
    }
  }
  auto q = setup("x1^2 + x2^2", 2);
  auto [rq, rq_rep] = adaptive_constants(q.fd, 2000, 1, Norm::real());
  for (const auto& d : region_descriptions(q.tree, q.fd)) {
    if (d.empty) continue;
    Series F = factor_monomial(compose_chart(P("x1^2 + x2^2", 2), q.tree.chart_map(d.k))).second;
    auto w = derivative_witness(d, q.tree, q.fd, rq, F, 1, 40, 5, Norm::real());
    REQUIRE(w.has_value());
    CHECK(w->order == 0);
  }
}
