#pragma once

#include "monores/regions.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace monores {

// Every atom reads the point at one stage of a chart map: stage 0 is the original frame and
// stage k (the number of steps) is the chart coordinate.

/// |p_l| < radius for the listed coordinates (all when empty).
struct CubeAtom {
  int stage = 0;
  Rational radius;
  std::vector<int> coords;
};

/// |p_l| <= 1, or < 1 where strict, for every coordinate: one cell of a blowup tree.
struct LeafAtom {
  int stage = 0;
  std::vector<bool> strict;
};

/// Faces and constants shared by the classification atoms of one decomposition.
struct ClassContext {
  FaceData faces;
  RegionConstants consts;
};

/// The stage point lies in E and is classified into (i, j).
struct ClassAtom {
  int stage = 0;
  std::shared_ptr<const ClassContext> ctx;
  int i = 0;
  int j = 0;
};

/// |p_coord - center| < radius, or its negation.
struct BallAtom {
  int stage = 0;
  int coord = 0;
  Rational center;
  Rational radius;
  bool negate = false;
};

/// |u(p)| >= floor.
struct FloorAtom {
  int stage = 0;
  Series u;
  Rational floor;
  bool negate = false;
};

using Atom = std::variant<CubeAtom, LeafAtom, ClassAtom, BallAtom, FloorAtom>;

int atom_stage(const Atom& a);
bool atom_holds(const Atom& a, const Vector& point, const Norm& norm);

/// Conjunction of atoms.
struct RegionPredicate {
  std::vector<Atom> atoms;

  /// stages[s] is the point at stage s.
  bool contains(const std::vector<Vector>& stages, const Norm& norm) const;
  void add(Atom a) { atoms.push_back(std::move(a)); }
};

}  // namespace monores
