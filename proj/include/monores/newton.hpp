#pragma once

#include "monores/chart_map.hpp"
#include "monores/series.hpp"

#include <string>
#include <vector>

namespace monores {

/// Supporting inequality normal . w >= offset, normal nonnegative.
struct Facet {
  Vector normal;
  Rational offset;
};

/// Newton polyhedron: convex hull of the orthants alpha + R_{>=0}^n over the support.
struct Polyhedron {
  int n = 0;
  std::vector<Exponent> generators;  // support, sorted
  std::vector<Exponent> vertices;    // sorted
  std::vector<Facet> facets;
};

/// Face of N(f) given by its vertex set and an exposing functional (a, b): a . w = b on the
/// face and a . w > b elsewhere on N(f). Compact faces have strictly positive a.
struct Face {
  int dim = 0;
  int index = 0;  // enumeration index j among faces of dimension dim
  std::vector<Exponent> vertices;
  Vector normal;
  Rational offset;

  bool contains(const Exponent& alpha) const;
  std::string id() const { return std::to_string(dim) + ":" + std::to_string(index); }
};

Polyhedron build_polyhedron(const Series& s);
Polyhedron build_polyhedron(int n, std::vector<Exponent> generators);

/// All compact faces sorted by dimension, then lexicographically by sorted vertex list.
std::vector<Face> compact_faces(const Polyhedron& p);

/// Sum of the terms of s whose exponents lie on the face.
Series face_series(const Series& s, const Face& face);

/// min { t : (t,...,t) in N(f) }, from the facet description.
Rational newton_distance(const Polyhedron& p);

struct CentralFace {
  Face face;             // compact face (largest one inside the true face when noncompact)
  bool noncompact = false;
  std::vector<Exponent> tight_vertices;  // vertices of the true (possibly unbounded) face
};

CentralFace central_face(const Polyhedron& p);

/// Affine dimension of a finite point set.
int affine_dimension(const std::vector<Exponent>& points);

Rational dot(const Vector& a, const Exponent& e);

}  // namespace monores
