#pragma once

#include "monores/region_predicate.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace monores {

class InputZero : public Error {
public:
  InputZero() : Error("input series is identically zero") {}
};

/// No rational direction or recentring resolves a region within the configured caps.
class NoWitness : public Error {
public:
  using Error::Error;
};

struct EngineConfig {
  int trunc_order = 12;
  int growth_N = 0;  // 0 picks N adaptively (4, 8, ..., 64)
  std::size_t max_charts = 4096;
  int max_depth = 32;
  std::size_t samples = 1000;  // coverage and verification samples
  std::uint64_t seed = 42;
  Norm norm;
  std::optional<Rational> radius;  // coverage radius; default derived from the atlas
  int direction_den_cap = 3;
  std::size_t theorem_samples = 2000;  // per decomposition, for the N search
  std::size_t radius_samples = 400;    // per job, for the radius search
};

/// (monomial, unit) with unit(0) != 0 expected.
struct Factored {
  Monomial monomial;
  Series unit;
};

struct Chart {
  std::string path;
  std::string kind;  // "unit", "monomial", "region", "zero-cell"
  int depth = 0;
  ChartMap map;
  RegionPredicate region;
  Vector base_point;  // chart coordinates of the recentring point, always 0
  Factored f;
  Factored jacobian;
  std::vector<Factored> coordinates;  // x_k o alpha in the rotated frame, k <= n-2
  bool truncated = false;             // some step or the input carries a truncated series
};

/// A piece of the neighbourhood no chart covers, with the reason.
struct Unresolved {
  std::string path;
  ChartMap map;
  RegionPredicate region;
  std::string reason;
};

struct AtlasStats {
  std::size_t jobs = 0;
  int max_depth = 0;
  int max_m = 0;
  std::size_t recentre_checks = 0;
  std::size_t recentre_order_violations = 0;
  std::size_t radius_shrinks = 0;
  std::size_t radius_failures = 0;  // jobs whose sampled floors never held
  std::vector<int> growth_N;         // N chosen per decomposition
  std::size_t domination_violations = 0;
};

struct Atlas {
  int n = 0;
  Series input;
  EngineConfig config;
  int frame_steps = 0;  // leading steps forming the top rotation
  Rational radius;      // cube radius in the original frame inside the top job's cube
  std::vector<Chart> charts;
  std::vector<Unresolved> unresolved;
  AtlasStats stats;
};

struct DirectionResult {
  int m = 0;
  Vector v;
};

/// m = ord(s) and the first rational direction (axes first, last coordinate first; then
/// denominators <= max(cap, m+1)) with (d_v)^m s(0) != 0, restricted to vars when given.
DirectionResult min_order_direction(const Series& s, int den_cap = 3,
                                    const std::vector<int>& vars = {});

struct Rotation {
  Series s_rot;
  AffineStep A;
  int axis = 0;
};

/// Integer linear map sending e_axis to a primitive multiple of v (axis defaults to the last
/// coordinate). When v_axis = 0 the last coordinate in the support of v takes e_axis.
Rotation rotate_to_axis(const Series& s, const Vector& v, std::optional<int> axis = std::nullopt);

/// g in the variables other than axis with d_axis^{m-1} s(x', g(x')) = 0. Returned exact
/// (no truncation order) when the Newton iteration closes on a polynomial.
Series graph_function(const Series& s, int m, int T, std::optional<int> axis = std::nullopt);

/// Coefficients of x_axis^p in s(x', x_axis + g(x')). Throws when the x_axis^{m-1} coefficient
/// survives or h_m(0) = 0.
std::map<int, Series> weierstrass_form(const Series& s, const Series& g, int m,
                                       std::optional<int> axis = std::nullopt);

/// Product of the coordinates other than axis and every nonzero h_p with p < m-1, as a
/// series in n-1 variables.
Series coefficient_product(const std::map<int, Series>& h, int m, int n,
                           std::optional<int> axis = std::nullopt);

/// Largest dyadic (real) or p-power (p-adic) radius on which u stays within half of u(0).
Rational unit_radius(const Series& u, const Norm& norm);

Atlas resolve(const Series& f, const EngineConfig& cfg);

/// Point with every |x_l| < r: uniform in the cube (real) or Haar-distributed valuations
/// (p-adic); with log_mix half the real coordinates are log-uniform towards 0 instead.
Vector sample_cube_point(std::mt19937_64& rng, int n, const Rational& r, const Norm& norm,
                         bool log_mix = false);

/// The same map with every quasitranslation series read as the polynomial it stores.
ChartMap as_polynomial(const ChartMap& map);

/// s o map truncated at T. A polynomial s is pulled back exactly through the stored polynomial
/// map and truncated once at the end: truncating before a recentring shift would let the shift
/// move unknown terms into known degrees.
Series chart_pullback(const Series& s, const ChartMap& map, std::optional<int> T);

/// Steps from..end of map as a map of their own.
ChartMap chart_suffix(const ChartMap& map, std::size_t from);

}  // namespace monores
