#include "monores/cover.hpp"

namespace monores {

CoverReport cover_check(const Atlas& atlas, std::size_t samples, std::optional<Rational> radius,
                        std::uint64_t seed) {
  CoverReport rep;
  rep.radius = radius ? *radius : atlas.radius;
  const Norm& norm = atlas.config.norm;
  std::mt19937_64 rng(seed);
  while (rep.samples < samples) {
    Vector x = sample_cube_point(rng, atlas.n, rep.radius, norm);
    bool on_axis = false;
    for (const auto& c : x) on_axis = on_axis || sgn(c) == 0;
    if (on_axis) continue;
    ++rep.samples;
    int claims = 0;
    bool zero = false;
    for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
      const Chart& c = atlas.charts[i];
      auto stages = c.map.inverse_stages(x);
      if (!stages || !c.region.contains(*stages, norm)) continue;
      if (sgn(c.f.unit.evaluate(stages->back())) == 0) {
        zero = true;
        continue;
      }
      if (claims++ == 0) rep.hits.push_back({i, x, stages->back()});
    }
    if (claims > 0) ++rep.covered;
    if (claims > 1) ++rep.overlaps;
    if (claims > 0) continue;
    if (zero) ++rep.unit_zero;
    for (const auto& u : atlas.unresolved) {
      auto stages = u.map.inverse_stages(x);
      if (stages && u.region.contains(*stages, norm)) {
        ++rep.in_unresolved;
        break;
      }
    }
    if (rep.misses.size() < 16) rep.misses.push_back(x);
  }
  return rep;
}

}  // namespace monores
