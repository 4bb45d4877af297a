#include "monores/verification.hpp"
#include "monores/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace monores {

void Report::fail(std::string check, std::string input, std::string expected, std::string got) {
  failures.push_back({std::move(check), std::move(input), std::move(expected), std::move(got)});
}

void Report::absorb(const Report& other) {
  cases += other.cases;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  for (const auto& [k, v] : other.metrics) metrics[other.suite + "." + k] = v;
}

const std::vector<std::pair<std::string, int>>& acceptance_fixtures() {
  static const std::vector<std::pair<std::string, int>> fx = {
      {"x1*x2", 2},          {"x1^2 - x2^2", 2},        {"x1^2 + x2^2", 2},
      {"x1^2*x2 + x2^3", 2}, {"x1^3 + x2^3 + x3^3", 3}, {"x2^2 + 2*x1*x2 + x1^3", 2},
  };
  return fx;
}

namespace {

std::string vec_text(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

std::string exps_text(const std::vector<Exponent>& es) {
  std::string s = "{";
  for (std::size_t i = 0; i < es.size(); ++i) {
    s += i ? ";" : "";
    for (std::size_t j = 0; j < es[i].size(); ++j) s += (j ? "," : "") + std::to_string(es[i][j]);
  }
  return s + "}";
}

bool same(const Factored& a, const Monomial& m, const Series& u) {
  return a.monomial.exponents == m.exponents && a.monomial.coeff == m.coeff && a.unit == u;
}

Rational dyadic_floor(const Rational& q) {
  // Largest power of two not above |q| (q nonzero).
  const long e = static_cast<long>(std::floor(log_abs_real(q) / std::log(2.0)));
  Rational p = 1;
  if (e >= 0) {
    mpz_mul_2exp(p.get_num_mpz_t(), p.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(p.get_den_mpz_t(), p.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return p;
}

}  // namespace

double jacobian_relative_error(const Chart& chart, const Vector& w) {
  const int n = chart.map.dim();
  Matrix J(n, Vector(n, Rational(0)));
  for (int j = 0; j < n; ++j) {
    Rational scale = sgn(w[j]) == 0 ? Rational(1) : dyadic_floor(w[j]);
    scale = std::max(scale, Rational(1, 1024));
    Rational h = scale;
    mpz_mul_2exp(h.get_den_mpz_t(), h.get_den_mpz_t(), 26);
    h.canonicalize();
    Vector a = w, b = w;
    a[j] += h;
    b[j] -= h;
    const Vector fa = chart.map.apply(a), fb = chart.map.apply(b);
    for (int i = 0; i < n; ++i) J[i][j] = (fa[i] - fb[i]) / (2 * h);
  }
  const Rational fd = determinant(J);
  Rational exact = chart.jacobian.monomial.to_series().evaluate(w) * chart.jacobian.unit.evaluate(w);
  if (sgn(exact) == 0) return sgn(fd) == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::fabs(to_double((fd - exact) / exact));
}

Report atlas_verify(const Atlas& atlas, const Series& f, std::size_t samples, std::uint64_t seed) {
  Report rep;
  rep.suite = "atlas";
  const int n = atlas.n;
  const std::string input = "f=" + f.to_string() + " n=" + std::to_string(n) + " norm=" +
                            atlas.config.norm.name() + " seed=" + std::to_string(seed);
  const int T = atlas.config.trunc_order;
  for (const auto& c : atlas.charts) {
    ++rep.cases;
    const std::string where = input + " chart=" + c.path;
    const std::optional<int> t = c.truncated ? std::optional<int>(T) : std::nullopt;
    auto [mono, unit] = factor_monomial(chart_pullback(f, c.map, t));
    if (!same(c.f, mono, unit)) {
      rep.fail("factorization", where, mono.to_string() + " * (" + unit.to_string() + ")",
               c.f.monomial.to_string() + " * (" + c.f.unit.to_string() + ")");
    } else if (sgn(c.f.unit.constant_term()) == 0) {
      rep.fail("factorization", where, "unit(0) != 0", "unit(0) = 0");
    }
    auto [jm, ju] = factor_monomial(jacobian_determinant_series(as_polynomial(c.map)));
    if (!same(c.jacobian, jm, ju) || sgn(ju.constant_term()) == 0) {
      rep.fail("jacobian factorization", where, jm.to_string() + " * (" + ju.to_string() + ")",
               c.jacobian.monomial.to_string() + " * (" + c.jacobian.unit.to_string() + ")");
    }
    const ChartMap tail = chart_suffix(c.map, static_cast<std::size_t>(atlas.frame_steps));
    if (static_cast<int>(c.coordinates.size()) != std::max(0, n - 1)) {
      rep.fail("coordinates", where, std::to_string(n - 1) + " coordinate factorizations",
               std::to_string(c.coordinates.size()));
    }
    for (std::size_t k = 0; k < c.coordinates.size(); ++k) {
      auto [cm, cu] = factor_monomial(chart_pullback(Series::variable(n, static_cast<int>(k)), tail, t));
      if (!same(c.coordinates[k], cm, cu) || sgn(cu.constant_term()) == 0) {
        rep.fail("coordinates", where + " k=" + std::to_string(k + 1), "monomial * unit with unit(0) != 0",
                 cm.to_string() + " * (" + cu.to_string() + ")");
      }
    }
  }

  const CoverReport cov = cover_check(atlas, samples, atlas.config.radius, seed);
  rep.metrics["coverage"] = cov.fraction();
  rep.metrics["overlaps"] = static_cast<double>(cov.overlaps);
  rep.metrics["in_unresolved"] = static_cast<double>(cov.in_unresolved);
  rep.metrics["radius"] = to_double(cov.radius);
  if (cov.fraction() < 0.999) {
    rep.fail("coverage", input + " radius=" + to_string(cov.radius), ">= 0.999",
             std::to_string(cov.fraction()) + (cov.misses.empty() ? "" : " first miss " + vec_text(cov.misses[0])));
  }
  if (cov.overlaps > 0) rep.fail("disjointness", input, "0 overlapping claims", std::to_string(cov.overlaps));

  // Region points per chart from the coverage sample, topped up with chart-local points.
  std::vector<std::vector<const CoverHit*>> by_chart(atlas.charts.size());
  for (const auto& h : cov.hits) by_chart[h.chart].push_back(&h);
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  double jac_max = 0;
  double floor_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
    const Chart& c = atlas.charts[i];
    const std::string where = input + " chart=" + c.path;
    // Finite differences are a real-place test; the Jacobian identity is polynomial, so a
    // p-adic atlas is checked at real points of the half cube.
    std::vector<Vector> pts;
    for (const auto* h : by_chart[i]) {
      if (pts.size() >= 20 || !atlas.config.norm.is_real()) break;
      pts.push_back(h->local);
    }
    while (pts.size() < 20) pts.push_back(sample_cube_point(rng, n, Rational(1, 2), Norm::real()));
    for (const auto& w : pts) {
      const double e = jacobian_relative_error(c, w);
      jac_max = std::max(jac_max, e);
      if (!(e <= 1e-6)) {
        rep.fail("jacobian", where + " w=" + vec_text(w), "relative error <= 1e-6", std::to_string(e));
        break;
      }
    }
    for (const auto* h : by_chart[i]) {
      if (c.map.apply(h->local) != h->original) {
        rep.fail("injectivity", where + " x=" + vec_text(h->original), "alpha(w) = x", "round trip differs");
        break;
      }
      const double lu = atlas.config.norm.log_abs(c.f.unit.evaluate(h->local));
      if (!std::isfinite(lu)) {
        rep.fail("unit floor", where + " w=" + vec_text(h->local), "|unit| > 0", "0");
        break;
      }
      floor_min = std::min(floor_min, lu);
    }
  }
  rep.metrics["jacobian_max_rel_error"] = jac_max;
  rep.metrics["unit_log_floor"] = std::isfinite(floor_min) ? floor_min : 0.0;
  rep.metrics["charts"] = static_cast<double>(atlas.charts.size());
  rep.metrics["unresolved"] = static_cast<double>(atlas.unresolved.size());
  return rep;
}

Report run_fixture_suite(const Norm& norm, std::size_t samples, std::uint64_t seed) {
  Report rep;
  rep.suite = "fixtures";
  // a) Single-edge polygons: the edge region is |x^v1 / x^v2| within a factor C_1.
  for (const char* text : {"x1^2*x2 + x2^3", "x1^2 - x2^2", "x1^2 + x2^2"}) {
    ++rep.cases;
    const Series f = parse_series(text, 2);
    const FaceData fd = FaceData::from(build_polyhedron(f));
    const RegionConstants rc = choose_constants(2, 4);
    const int e = fd.find(1, 0);
    const auto& v1 = fd.vertices.at(0);
    const auto& v2 = fd.vertices.at(1);
    const double logc1 = rc.log_c(1);
    std::mt19937_64 rng(seed);
    std::size_t agree = 0, counted = 0;
    for (std::size_t s = 0; s < samples; ++s) {
      const Vector x = sample_E_point(rng, 2, rc.C.back(), norm);
      const double lx = norm.log_abs(x[0]), ly = norm.log_abs(x[1]);
      const double gap = (v1[0] - v2[0]) * lx + (v1[1] - v2[1]) * ly;
      if (std::fabs(std::fabs(gap) - logc1) < 1e-9) continue;  // tie on the boundary
      const bool closed = std::fabs(gap) < logc1;
      auto cls = classify_point(x, rc, fd, norm);
      const bool pred = cls && fd.find(cls->first, cls->second) == e;
      ++counted;
      agree += closed == pred ? 1 : 0;
    }
    const double frac = counted ? static_cast<double>(agree) / counted : 1.0;
    rep.metrics[std::string("edge_agreement ") + text] = frac;
    if (frac < 0.99) rep.fail("edge region", text, ">= 0.99", std::to_string(frac));
  }
  // b) x^3 + y^3 + z^3: 2^3 - 1 faces, every face populated by the classification.
  {
    ++rep.cases;
    const Series f = parse_series("x1^3 + x2^3 + x3^3", 3);
    const FaceData fd = FaceData::from(build_polyhedron(f));
    std::vector<int> per_dim(3, 0);
    for (const auto& face : fd.faces) ++per_dim.at(face.dim);
    if (fd.faces.size() != 7 || per_dim != std::vector<int>{3, 3, 1}) {
      rep.fail("face census", "x1^3 + x2^3 + x3^3", "3 vertices, 3 edges, 1 triangle",
               std::to_string(per_dim[0]) + "," + std::to_string(per_dim[1]) + "," + std::to_string(per_dim[2]));
    }
    auto [rc, tr] = adaptive_constants(fd, samples, seed, norm);
    for (std::size_t g = 0; g < tr.census.size(); ++g) {
      rep.metrics["census face " + fd.faces[g].id()] = static_cast<double>(tr.census[g]);
    }
    if (!tr.ok()) rep.fail("domination", "x1^3 + x2^3 + x3^3", "no violations", "violations found");
  }
  // c) Nondegenerate principal part: every piece is a unit chart, nothing left over.
  {
    ++rep.cases;
    EngineConfig cfg;
    cfg.norm = norm;
    cfg.seed = seed;
    const Series f = parse_series("x1^2 + x2^2 + x3^2", 3);
    const Atlas a = resolve(f, cfg);
    std::size_t zero_cells = 0;
    for (const auto& c : a.charts) zero_cells += c.kind == "zero-cell" ? 1 : 0;
    if (!a.unresolved.empty() || zero_cells != 0) {
      rep.fail("sum of squares", "x1^2 + x2^2 + x3^2 norm=" + norm.name(), "unit pieces only",
               std::to_string(zero_cells) + " zero cells, " + std::to_string(a.unresolved.size()) + " unresolved");
    }
    const Report av = atlas_verify(a, f, samples, seed);
    if (!av.ok()) rep.fail("sum of squares", "x1^2 + x2^2 + x3^2 norm=" + norm.name(), "atlas verifies", av.failures[0].check);
    rep.metrics["sum_of_squares_charts"] = static_cast<double>(a.charts.size());
  }
  // d) Two variables: the prepared series goes straight to the polygon, no recursion in x1.
  {
    ++rep.cases;
    EngineConfig cfg;
    cfg.norm = norm;
    cfg.seed = seed;
    const Series f = parse_series("x2^2 + 2*x1*x2 + x1^3", 2);
    const Atlas a = resolve(f, cfg);
    bool ok = !a.charts.empty();
    for (const auto& c : a.charts) {
      const auto& st = c.map.steps();
      const auto* q = st.empty() ? nullptr : std::get_if<QuasiStep>(&st[0]);
      ok = ok && q && q->axis == 1 && q->a == parse_series("-x1", 2);
      ok = ok && st.size() >= 2 && std::holds_alternative<BlowupStep>(st[1]);
    }
    if (!ok) rep.fail("two-variable flow", "x2^2 + 2*x1*x2 + x1^3", "x2 -> x2 - x1 then blowups", "other steps");
  }
  return rep;
}

Report hull_suite(std::size_t sets, std::uint64_t seed) {
  Report rep;
  rep.suite = "hull";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 3), count(1, 6), entry(0, 6);
  for (std::size_t it = 0; it < sets; ++it) {
    ++rep.cases;
    const int n = dim(rng);
    std::vector<Exponent> gens(count(rng), Exponent(n));
    for (auto& g : gens) {
      for (auto& v : g) v = entry(rng);
    }
    const Polyhedron p = build_polyhedron(n, gens);
    const auto oracle = hull_oracle(gens);
    if (p.vertices != oracle) rep.fail("hull oracle", exps_text(gens), exps_text(oracle), exps_text(p.vertices));
    const Rational d = newton_distance(p), dl = newton_distance_lp(gens);
    if (d != dl) rep.fail("lp oracle", exps_text(gens), to_string(dl), to_string(d));
  }
  return rep;
}

Report ordering_suite(std::size_t sets, std::uint64_t seed, std::size_t node_budget) {
  Report rep;
  rep.suite = "ordering";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 4), count(1, 5), entry(0, 6);
  std::size_t max_nodes = 0;
  for (std::size_t it = 0; it < sets; ++it) {
    ++rep.cases;
    const int n = dim(rng);
    std::vector<Exponent> exps;
    const int target = count(rng);
    while (static_cast<int>(exps.size()) < target) {
      Exponent e(n);
      for (auto& v : e) v = entry(rng);
      if (std::find(exps.begin(), exps.end(), e) == exps.end()) exps.push_back(e);
    }
    BlowupTree tree;
    try {
      tree = order_monomials(exps, node_budget);
    } catch (const BudgetError& e) {
      rep.fail("node budget", exps_text(exps), "<= " + std::to_string(node_budget) + " nodes", e.what());
      continue;
    }
    max_nodes = std::max(max_nodes, tree.nodes.size());
    for (std::size_t l = 0; l < tree.leaves.size(); ++l) {
      const auto& leaf = tree.leaves[l];
      std::vector<Exponent> img;
      for (const auto& e : tree.exponents) img.push_back(leaf.map.apply(e));
      bool ordered = true;
      for (std::size_t a = 0; a < img.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) ordered = ordered && compare_componentwise(img[a], img[b]) != 0;
      }
      if (!ordered) rep.fail("leaf order", exps_text(exps) + " leaf=" + std::to_string(l), "totally ordered", exps_text(img));
      if (std::llabs(int_determinant(leaf.map.L)) != 1) {
        rep.fail("unimodular", exps_text(exps) + " leaf=" + std::to_string(l), "|det L| = 1", "other");
      }
      // Substitution is the expensive check: every leaf of small trees, a spread of 8 otherwise.
      const std::size_t L = tree.leaves.size();
      if (L > 8 && l % ((L + 7) / 8) != 0 && l + 1 != L) continue;
      const ChartMap map = tree.chart_map(static_cast<int>(l));
      for (std::size_t v = 0; v < tree.exponents.size(); ++v) {
        if (compose_chart(Series::monomial(n, tree.exponents[v]), map) != Series::monomial(n, img[v])) {
          rep.fail("substitution", exps_text(exps) + " leaf=" + std::to_string(l), exps_text({img[v]}), "differs");
        }
      }
    }
  }
  rep.metrics["max_nodes"] = static_cast<double>(max_nodes);
  return rep;
}

Report run_oracle_suite(std::size_t sets, std::uint64_t seed) {
  Report rep;
  rep.suite = "oracles";
  rep.absorb(hull_suite(sets, seed));
  rep.absorb(ordering_suite(sets, seed));
  return rep;
}

Report run_atlas_suite(const Norm& norm, std::size_t samples, std::uint64_t seed) {
  Report rep;
  rep.suite = "atlas";
  for (const auto& [text, n] : acceptance_fixtures()) {
    EngineConfig cfg;
    cfg.norm = norm;
    cfg.seed = seed;
    const Series f = parse_series(text, n);
    Report one = atlas_verify(resolve(f, cfg), f, samples, seed);
    one.suite = text;
    rep.absorb(one);
  }
  return rep;
}

}  // namespace monores
