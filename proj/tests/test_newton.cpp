#include "monores/newton.hpp"
#include "monores/oracles.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace monores;
using testutil::P;

TEST_CASE("build_polyhedron examples") {
  CHECK(build_polyhedron(P("x1^2*x2 + x2^3", 2)).vertices == std::vector<Exponent>{{0, 3}, {2, 1}});
  CHECK(build_polyhedron(P("x1^3 + x2^3 + x3^3", 3)).vertices ==
        std::vector<Exponent>{{0, 0, 3}, {0, 3, 0}, {3, 0, 0}});
  CHECK(build_polyhedron(P("x1^2*x2^5", 2)).vertices == std::vector<Exponent>{{2, 5}});
  CHECK(build_polyhedron(P("x1*x2 + x1^2*x2^2 + x1^3", 2)).vertices == std::vector<Exponent>{{1, 1}, {3, 0}});
  CHECK_THROWS(build_polyhedron(Series(2)));
}

TEST_CASE("compact_faces examples") {
  auto faces = compact_faces(build_polyhedron(P("x1^2*x2 + x2^3", 2)));
  REQUIRE(faces.size() == 3);
  CHECK(faces[0].dim == 0);
  CHECK(faces[1].dim == 0);
  CHECK(faces[2].dim == 1);
  CHECK(faces[2].vertices == std::vector<Exponent>{{0, 3}, {2, 1}});
  CHECK(faces[2].id() == "1:0");

  auto cube = compact_faces(build_polyhedron(P("x1^3 + x2^3 + x3^3", 3)));
  CHECK(cube.size() == 7);  // one per nonempty subset of the axes
  int by_dim[3] = {0, 0, 0};
  for (const auto& f : cube) {
    ++by_dim[f.dim];
    for (const auto& a : f.normal) CHECK(sgn(a) > 0);
  }
  CHECK(by_dim[0] == 3);
  CHECK(by_dim[1] == 3);
  CHECK(by_dim[2] == 1);

  CHECK(compact_faces(build_polyhedron(P("x1^2*x2^5", 2))).size() == 1);
}

TEST_CASE("face_series examples") {
  auto s = P("x1^2*x2 + x2^3 + x1^5", 2);
  auto faces = compact_faces(build_polyhedron(s));
  const Face* edge = nullptr;
  for (const auto& f : faces) {
    if (f.vertices == std::vector<Exponent>{{0, 3}, {2, 1}}) edge = &f;
  }
  REQUIRE(edge != nullptr);
  CHECK(face_series(s, *edge) == P("x1^2*x2 + x2^3", 2));
  CHECK(face_series(s, faces[0]) == P("x2^3", 2));
  auto t = P("x1^2 - x2^2", 2);
  CHECK(face_series(t, compact_faces(build_polyhedron(t)).back()) == t);
  CHECK_THROWS(face_series(P("x1 + x2", 2), *edge));
}

TEST_CASE("newton_distance and central_face examples") {
  auto p = build_polyhedron(P("x1^2*x2 + x2^3", 2));
  CHECK(newton_distance(p) == Rational(3, 2));
  auto cf = central_face(p);
  CHECK(!cf.noncompact);
  CHECK(cf.face.vertices == std::vector<Exponent>{{0, 3}, {2, 1}});

  auto q = build_polyhedron(P("x1^3 + x2^3 + x3^3", 3));
  CHECK(newton_distance(q) == 1);
  CHECK(central_face(q).face.dim == 2);

  auto mono = build_polyhedron(P("x1^4", 1));
  CHECK(newton_distance(mono) == 4);
  CHECK(central_face(mono).face.vertices == std::vector<Exponent>{{4}});

  // x^2 y^5: the diagonal meets the unbounded face w_2 = 5.
  auto r = central_face(build_polyhedron(P("x1^2*x2^5", 2)));
  CHECK(r.noncompact);
  CHECK(r.face.vertices == std::vector<Exponent>{{2, 5}});
  CHECK(newton_distance(build_polyhedron(P("x1^2*x2^5", 2))) == 5);
}

TEST_CASE("hull_oracle examples") {
  CHECK(hull_oracle({{2, 1}, {0, 3}}) == std::vector<Exponent>{{0, 3}, {2, 1}});
  CHECK(hull_oracle({{1, 1}, {2, 2}}) == std::vector<Exponent>{{1, 1}});
  CHECK(hull_oracle({{4, 2, 1}}) == std::vector<Exponent>{{4, 2, 1}});
}

TEST_CASE("property: polyhedron agrees with independent oracles") {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 60; ++it) {
    int n = 1 + it % 3;
    std::uniform_int_distribution<int> count(1, 6), entry(0, 6);
    std::vector<Exponent> gens(count(rng), Exponent(n));
    for (auto& g : gens) {
      for (auto& v : g) v = entry(rng);
    }
    auto p = build_polyhedron(n, gens);
    CHECK(p.vertices == hull_oracle(gens));
    CHECK(newton_distance(p) == newton_distance_lp(gens));
    // Sanity bounds on the distance.
    int min_deg = 1 << 20, min_max = 1 << 20;
    for (const auto& v : p.vertices) {
      min_deg = std::min(min_deg, total_degree(v));
      min_max = std::min(min_max, *std::max_element(v.begin(), v.end()));
    }
    CHECK(newton_distance(p) >= Rational(min_deg, n));
    CHECK(newton_distance(p) <= min_max);
    // Every generator satisfies every facet; every face's functional exposes exactly its vertices.
    for (const auto& g : p.generators) {
      for (const auto& f : p.facets) CHECK(dot(f.normal, g) >= f.offset);
    }
    for (const auto& face : compact_faces(p)) {
      for (const auto& v : p.vertices) {
        bool on = std::find(face.vertices.begin(), face.vertices.end(), v) != face.vertices.end();
        CHECK(on == face.contains(v));
        if (!on) CHECK(dot(face.normal, v) > face.offset);
      }
    }
  }
}
