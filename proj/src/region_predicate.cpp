#include "monores/region_predicate.hpp"

namespace monores {

int atom_stage(const Atom& a) {
  return std::visit([](const auto& x) { return x.stage; }, a);
}

namespace {

struct Holds {
  const Vector& p;
  const Norm& norm;

  bool operator()(const CubeAtom& a) const {
    if (a.coords.empty()) {
      for (const auto& v : p) {
        if (norm.compare_radius(v, a.radius) >= 0) return false;
      }
      return true;
    }
    for (int l : a.coords) {
      if (norm.compare_radius(p.at(l), a.radius) >= 0) return false;
    }
    return true;
  }

  bool operator()(const LeafAtom& a) const {
    const Rational one = 1;
    for (std::size_t l = 0; l < p.size(); ++l) {
      if (sgn(p[l]) == 0) return false;
      const int c = norm.compare_abs(p[l], one);
      if (c > 0 || (c == 0 && a.strict[l])) return false;
    }
    return true;
  }

  bool operator()(const ClassAtom& a) const {
    auto cls = classify_in_E(p, a.ctx->consts, a.ctx->faces, norm);
    return cls && cls->first == a.i && cls->second == a.j;
  }

  bool operator()(const BallAtom& a) const {
    const bool inside = norm.compare_radius(p.at(a.coord) - a.center, a.radius) < 0;
    return inside != a.negate;
  }

  bool operator()(const FloorAtom& a) const {
    const bool above = norm.compare_radius(a.u.evaluate(p), a.floor) >= 0;
    return above != a.negate;
  }
};

}  // namespace

bool atom_holds(const Atom& a, const Vector& point, const Norm& norm) {
  return std::visit(Holds{point, norm}, a);
}

bool RegionPredicate::contains(const std::vector<Vector>& stages, const Norm& norm) const {
  for (const auto& a : atoms) {
    const int s = atom_stage(a);
    if (s < 0 || s >= static_cast<int>(stages.size())) return false;
    if (!atom_holds(a, stages[s], norm)) return false;
  }
  return true;
}

}  // namespace monores
