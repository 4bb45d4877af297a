#pragma once

#include "monores/engine.hpp"

#include <cstdint>
#include <vector>

namespace monores {

struct CoverHit {
  std::size_t chart = 0;
  Vector original;
  Vector local;  // chart coordinates
};

struct CoverReport {
  Rational radius;
  std::size_t samples = 0;
  std::size_t covered = 0;
  std::size_t overlaps = 0;       // points claimed by more than one chart
  std::size_t unit_zero = 0;      // claimed, but the chart unit vanishes there
  std::size_t in_unresolved = 0;  // misses inside a recorded unresolved piece
  std::vector<Vector> misses;     // first few uncovered points
  std::vector<CoverHit> hits;     // one per covered point

  double fraction() const { return samples == 0 ? 1.0 : static_cast<double>(covered) / samples; }
};

/// Samples {0 < |x_l| < radius} and pulls every point back through each chart map. radius
/// defaults to the atlas radius.
CoverReport cover_check(const Atlas& atlas, std::size_t samples, std::optional<Rational> radius,
                        std::uint64_t seed);

}  // namespace monores
