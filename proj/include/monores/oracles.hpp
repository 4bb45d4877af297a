#pragma once

#include "monores/series.hpp"

#include <vector>

namespace monores {

/// Vertices of the Newton polyhedron by exhaustive search: a generator is a vertex iff some
/// strictly positive integer functional from the grid {1..K}^n is uniquely minimized at it.
/// At most 8 generators and n <= 3.
std::vector<Exponent> hull_oracle(std::vector<Exponent> generators);

/// min { t : (t,...,t) in conv(generators) + orthant } as a linear program over convex
/// weights, independent of the facet description.
Rational newton_distance_lp(const std::vector<Exponent>& generators);

}  // namespace monores
