#include "monores/engine.hpp"
#include "monores/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <set>

namespace monores {

namespace {

std::uint64_t mix(std::uint64_t seed, const std::string& path) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : path) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL + h;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rational prime_power(unsigned long p, long k) {
  const Rational pk = rational_pow(Rational(mpz_class(p)), static_cast<unsigned long>(std::labs(k)));
  return k >= 0 ? pk : Rational(1) / pk;
}

// |q| as an exact rational (p^-v for the p-adic norm).
Rational abs_value(const Rational& q, const Norm& norm) {
  if (sgn(q) == 0) return 0;
  if (norm.is_real()) return abs(q);
  return prime_power(norm.prime, -padic_valuation(q, norm.prime));
}

// Upper bound for |A^-1 x| / |x| in the sup norm.
Rational inverse_gain(const Matrix& A, const Norm& norm) {
  const Matrix inv = inverse(A);
  Rational best = 0;
  for (const auto& row : inv) {
    Rational acc = 0;
    for (const auto& c : row) {
      if (norm.is_real()) {
        acc += abs(c);
      } else {
        acc = std::max(acc, abs_value(c, norm));
      }
    }
    best = std::max(best, acc);
  }
  return best;
}

// Bound for |g(x)| / |x| on the unit cube: sum |g_alpha|, or the largest p-adic coefficient.
Rational graph_gain(const Series& g, const Norm& norm) {
  Rational acc = 0;
  for (const auto& [e, c] : g.terms()) {
    if (norm.is_real()) {
      acc += abs(c);
    } else {
      acc = std::max(acc, abs_value(c, norm));
    }
  }
  return norm.is_real() ? 1 + acc : std::max(Rational(1), acc);
}

Rational shrink_factor(const Norm& norm) {
  return norm.is_real() ? Rational(1, 4) : prime_power(norm.prime, norm.prime >= 4 ? -1 : -2);
}

// Restriction of u to y = 0, as a univariate polynomial in the single variable zv.
UPoly restrict_univariate(const Series& u, int zv) {
  UPoly p;
  for (const auto& [e, c] : u.terms()) {
    bool only_z = true;
    for (std::size_t l = 0; l < e.size(); ++l) {
      if (static_cast<int>(l) != zv && e[l] != 0) only_z = false;
    }
    if (!only_z) continue;
    if (static_cast<int>(p.size()) <= e[zv]) p.resize(e[zv] + 1, Rational(0));
    p[e[zv]] += c;
  }
  trim(p);
  return p;
}

// Terms of u free of the y variables.
Series restrict_to_z(const Series& u, const std::vector<int>& y) {
  Series out(u.dim(), u.trunc_order());
  for (const auto& [e, c] : u.terms()) {
    bool keep = true;
    for (int l : y) keep = keep && e[l] == 0;
    if (keep) out.add_term(e, c);
  }
  return out;
}

struct Cell {
  Rational center;
  Rational radius;
  bool resolved = false;
  Rational other;  // bound on the remaining coordinates inside a resolved cell
};

// What the radius search checks on samples falling in one (face, leaf) region.
struct RegionCheck {
  enum class Kind { Vertex, Zeros, Floor } kind = Kind::Vertex;
  Series U;  // leaf unit
  Series P;  // U with the y variables set to 0
  std::vector<int> y_vars;
  int zv = -1;
  std::vector<Cell> cells;
};

struct JobResult {
  Rational radius;
  Rational other;  // bound on the protected coordinates, equal to radius unless sized separately
  std::vector<std::size_t> charts;
  std::vector<std::size_t> unresolved;
};

class Engine {
public:
  Engine(const EngineConfig& cfg, Atlas& atlas) : cfg_(cfg), atlas_(atlas), norm_(cfg.norm) {}

  JobResult run(const Series& G, const ChartMap& prefix, const std::vector<bool>& prot, const std::string& path,
                int depth);

private:
  std::size_t add_chart(const std::string& path, const std::string& kind, int depth, const ChartMap& map,
                        RegionPredicate region);
  std::size_t add_unresolved(const std::string& path, const ChartMap& map, RegionPredicate region,
                             const std::string& reason);
  void add_atom(JobResult& res, std::size_t from_c, std::size_t from_u, const Atom& a);
  JobResult decompose(const Series& H, const ChartMap& prefix, const ChartMap& local, const std::string& path,
                      int depth, int m, const Rational& r_cap, std::mt19937_64& rng);
  bool sample_ok(const Vector& x, const ChartMap& local, const FaceData& fd, const RegionConstants& consts,
                 const BlowupTree& tree, const std::map<std::pair<int, int>, RegionCheck>& checks) const;

  const EngineConfig& cfg_;
  Atlas& atlas_;
  Norm norm_;
};

std::size_t Engine::add_chart(const std::string& path, const std::string& kind, int depth, const ChartMap& map,
                              RegionPredicate region) {
  if (atlas_.charts.size() >= cfg_.max_charts) {
    throw BudgetError("chart budget of " + std::to_string(cfg_.max_charts) + " exceeded");
  }
  Chart c;
  c.path = path;
  c.kind = kind;
  c.depth = depth;
  c.map = map;
  c.region = std::move(region);
  c.base_point.assign(map.dim(), Rational(0));
  atlas_.charts.push_back(std::move(c));
  return atlas_.charts.size() - 1;
}

std::size_t Engine::add_unresolved(const std::string& path, const ChartMap& map, RegionPredicate region,
                                   const std::string& reason) {
  atlas_.unresolved.push_back({path, map, std::move(region), reason});
  return atlas_.unresolved.size() - 1;
}

void Engine::add_atom(JobResult& res, std::size_t from_c, std::size_t from_u, const Atom& a) {
  for (std::size_t t = from_c; t < res.charts.size(); ++t) atlas_.charts[res.charts[t]].region.add(a);
  for (std::size_t t = from_u; t < res.unresolved.size(); ++t) atlas_.unresolved[res.unresolved[t]].region.add(a);
}

JobResult Engine::run(const Series& G, const ChartMap& prefix, const std::vector<bool>& prot,
                      const std::string& path, int depth) {
  if (depth > cfg_.max_depth) throw BudgetError("recursion depth " + std::to_string(cfg_.max_depth) + " exceeded");
  ++atlas_.stats.jobs;
  atlas_.stats.max_depth = std::max(atlas_.stats.max_depth, depth);
  const int n = G.dim();
  const int base = static_cast<int>(prefix.size());
  std::mt19937_64 rng(mix(cfg_.seed, path));
  JobResult res;
  auto close = [&](const std::string& kind, const ChartMap& map, const Rational& r) {
    RegionPredicate reg;
    reg.add(CubeAtom{base, r, {}});
    res.radius = r;
    res.other = r;
    res.charts.push_back(add_chart(path, kind, depth, map, std::move(reg)));
    return res;
  };
  // A recentred child with a single free axis: the protected coordinates get their own bound R, as
  // large as the unit allows, and the zero w = g(y) stays inside half the axis radius.
  auto close_split = [&](const std::string& kind, const ChartMap& map, const Series& u, const Series& g,
                         int axis) -> std::optional<JobResult> {
    if (depth == 0 || !norm_.is_real()) return std::nullopt;
    const double u0 = std::fabs(to_double(u.constant_term()));
    for (int j = 0; j <= 20; ++j) {
      const double R = std::ldexp(1.0, -j);
      double pure = 0;
      for (const auto& [e, c] : u.terms()) {
        if (e[axis] == 0 && total_degree(e) > 0) pure += std::fabs(to_double(c)) * std::pow(R, total_degree(e));
      }
      if (pure > u0 / 8) continue;
      double gb = 0;
      for (const auto& [e, c] : g.terms()) gb += std::fabs(to_double(c)) * std::pow(R, total_degree(e));
      for (int k = 1; k < 200; ++k) {
        const double r = std::ldexp(1.0, -k);
        if (gb > r / 4) break;
        double sum = pure;
        for (const auto& [e, c] : u.terms()) {
          if (e[axis] > 0) sum += std::fabs(to_double(c)) * std::pow(R, total_degree(e) - e[axis]) * std::pow(r, e[axis]);
        }
        if (sum > u0 / 4) continue;
        std::vector<int> others;
        for (int l = 0; l < n; ++l) {
          if (l != axis) others.push_back(l);
        }
        const Rational Rq(mpz_class(1), mpz_class(1) << j);
        const Rational rho(mpz_class(1), mpz_class(1) << (k + 1));
        RegionPredicate reg;
        reg.add(CubeAtom{base, Rq, others});
        reg.add(CubeAtom{base, rho, {axis}});
        res.radius = rho;
        res.other = Rq;
        res.charts.push_back(add_chart(path, kind, depth, map, std::move(reg)));
        return res;
      }
    }
    return std::nullopt;
  };
  if (G.is_zero()) throw InputZero();
  if (sgn(G.constant_term()) != 0) return close("unit", prefix, unit_radius(G, norm_));
  std::vector<int> free;
  for (int l = 0; l < n; ++l) {
    if (!prot[l]) free.push_back(l);
  }
  if (auto [mono, u] = factor_monomial(G); sgn(u.constant_term()) != 0) {
    if (free.size() == 1) {
      if (auto split = close_split("monomial", prefix, u, Series(n), free[0])) return *split;
    }
    return close("monomial", prefix, unit_radius(u, norm_));
  }
  const int m = G.min_degree();
  atlas_.stats.max_m = std::max(atlas_.stats.max_m, m);

  // Preparation along a free direction: rotate it to an axis and quasitranslate by the graph.
  ChartMap local(n);
  Series H = G;
  Rational kappa = 1;
  Series graph(n);
  int graph_axis = -1;
  if (!free.empty()) {
    auto dir = min_order_direction(G, cfg_.direction_den_cap, free);
    if (!dir.v.empty()) {
      int axis = -1;
      for (int l : free) {
        if (sgn(dir.v[l]) != 0) axis = l;
      }
      auto rot = rotate_to_axis(G, dir.v, axis);
      if (rot.A.A != identity_matrix(n)) {
        local.push_back(rot.A);
        kappa *= inverse_gain(rot.A.A, norm_);
      }
      H = rot.s_rot;
      if (local.size() == 0) graph_axis = axis;
      const Series g = graph_function(H, m, cfg_.trunc_order, axis);
      if (!g.is_zero()) {
        weierstrass_form(H, g, m, axis);  // asserts the prepared shape
        std::vector<Series> im;
        for (int l = 0; l < n; ++l) im.push_back(Series::variable(n, l));
        im[axis] = im[axis] + g.with_trunc(std::nullopt);
        const bool exact = H.is_polynomial() && g.is_polynomial();
        H = H.substitute(im, exact ? std::nullopt : std::optional<int>(cfg_.trunc_order));
        if (!exact) H = H.truncated(cfg_.trunc_order);
        local.push_back(QuasiStep{axis, g});
        kappa *= graph_gain(g, norm_);
        graph = g;
      }
    }
  }
  if (auto [mono, u] = factor_monomial(H); sgn(u.constant_term()) != 0) {
    if (free.size() == 1 && graph_axis >= 0) {
      if (auto split = close_split("monomial", prefix.then(local), u, graph, graph_axis)) return *split;
    }
    Rational r = unit_radius(u, norm_) / kappa;
    return close("monomial", prefix.then(local), r);
  }
  JobResult out = decompose(H, prefix, local, path, depth, m, Rational(1) / kappa, rng);
  add_atom(out, 0, 0, CubeAtom{base, out.radius, {}});
  out.other = out.radius;
  return out;
}

bool Engine::sample_ok(const Vector& x, const ChartMap& local, const FaceData& fd, const RegionConstants& consts,
                       const BlowupTree& tree, const std::map<std::pair<int, int>, RegionCheck>& checks) const {
  auto stages = local.inverse_stages(x);
  if (!stages) return true;
  const Vector& xh = stages->back();
  auto cls = classify_in_E(xh, consts, fd, norm_);
  if (!cls) return true;
  const auto [k, w] = tree.locate(xh, norm_);
  auto it = checks.find({fd.find(cls->first, cls->second), k});
  if (it == checks.end()) return true;
  const RegionCheck& chk = it->second;
  const Rational u = chk.U.evaluate(w);
  auto dominates = [&](const Rational& ref) {
    if (sgn(ref) == 0 || sgn(u) == 0) return false;
    if (norm_.is_real()) return norm_.compare_abs(u * 2, ref) >= 0;
    return norm_.compare_abs(u, ref) == 0;
  };
  switch (chk.kind) {
    case RegionCheck::Kind::Vertex:
      return dominates(chk.U.constant_term());
    case RegionCheck::Kind::Floor:
      return true;
    case RegionCheck::Kind::Zeros:
      for (const auto& cell : chk.cells) {
        if (norm_.compare_radius(w[chk.zv] - cell.center, cell.radius) >= 0) continue;
        if (!cell.resolved) return true;
        for (std::size_t l = 0; l < w.size(); ++l) {
          if (static_cast<int>(l) != chk.zv && norm_.compare_radius(w[l], cell.other) >= 0) return false;
        }
        return true;
      }
      return dominates(chk.P.evaluate(w));
  }
  return true;
}

JobResult Engine::decompose(const Series& H, const ChartMap& prefix, const ChartMap& local,
                            const std::string& path, int depth, int m, const Rational& r_cap,
                            std::mt19937_64& rng) {
  const int n = H.dim();
  const ChartMap hmap = prefix.then(local);
  const int sH = static_cast<int>(hmap.size());
  JobResult res;
  const Polyhedron poly = build_polyhedron(H);
  auto ctx = std::make_shared<ClassContext>();
  ctx->faces = FaceData::from(poly);
  const FaceData& fd = ctx->faces;
  const BlowupTree tree = order_monomials(fd.vertices);
  const auto descs = region_descriptions(tree, fd);
  const std::uint64_t tseed = mix(cfg_.seed, path + "#N");
  if (cfg_.growth_N > 0) {
    ctx->consts = choose_constants(n, cfg_.growth_N);
    auto rep = verify_domination(fd, ctx->consts, cfg_.theorem_samples, tseed, norm_);
    ctx->consts.mu_estimate = rep.mu_hat;
    atlas_.stats.domination_violations += rep.violations_a + rep.violations_b;
  } else {
    auto [rc, rep] = adaptive_constants(fd, cfg_.theorem_samples, tseed, norm_);
    ctx->consts = rc;
    atlas_.stats.domination_violations += rep.violations_a + rep.violations_b;
  }
  atlas_.stats.growth_N.push_back(ctx->consts.N);
  const RegionConstants& consts = ctx->consts;
  const Series Hp = H.with_trunc(std::nullopt);

  // Leaf units U_k with H o gamma_k = x^{L_k v'} U_k.
  std::vector<Series> units;
  std::vector<ChartMap> leaf_maps;
  for (std::size_t k = 0; k < tree.leaves.size(); ++k) {
    const ChartMap gamma = tree.chart_map(static_cast<int>(k));
    auto [mono, u] = factor_monomial(compose_chart(Hp, gamma));
    if (sgn(u.constant_term()) == 0) throw Error("leaf unit vanishes at the origin");
    units.push_back(u);
    leaf_maps.push_back(hmap.then(gamma));
  }

  std::map<std::pair<int, int>, RegionCheck> checks;
  for (const auto& d : descs) {
    if (d.empty) continue;
    const Series& U = units[d.k];
    const ChartMap& lmap = leaf_maps[d.k];
    const int sL = static_cast<int>(lmap.size());
    const ClassAtom cls{sH, ctx, d.i, d.j};
    const LeafAtom leaf{sL, tree.leaves[d.k].strict};
    const std::string rpath = path + "/f" + std::to_string(d.face) + "k" + std::to_string(d.k);
    RegionCheck chk;
    chk.U = U;
    chk.y_vars = d.y_vars;
    RegionPredicate reg;
    reg.add(cls);
    reg.add(leaf);
    if (d.i == 0) {
      chk.kind = RegionCheck::Kind::Vertex;
      res.charts.push_back(add_chart(rpath, "region", depth, lmap, std::move(reg)));
      checks[{d.face, d.k}] = std::move(chk);
      continue;
    }
    chk.P = restrict_to_z(U, d.y_vars);
    if (d.z_vars.size() >= 2) {
      // Unit where |U| stays above a sampled floor; the rest is left to the report.
      chk.kind = RegionCheck::Kind::Floor;
      double pmax = 0;
      double pmin = std::numeric_limits<double>::infinity();
      std::vector<Vector> zs;
      for (int s = 0; s < 600; ++s) {
        Vector w(n, Rational(0));
        for (int l : d.z_vars) {
          const Rational lo = std::max(Rational(1, 64), Rational(Rational(1) / consts.c(std::max(d.i, 1))));
          // Leaf cells allow |z| = 1, so the p-adic draw uses radius p.
          Vector one = sample_cube_point(rng, 1, norm_.is_real() ? Rational(1) : Rational(norm_.prime), norm_);
          w[l] = one[0];
          if (norm_.is_real() && norm_.compare_radius(w[l], lo) < 0) w[l] = sgn(w[l]) < 0 ? -lo : lo;
        }
        const double v = norm_.abs(chk.P.evaluate(w));
        pmax = std::max(pmax, v);
        pmin = std::min(pmin, v);
      }
      const Rational floor = rational_from_double(std::ldexp(pmax, -5));
      reg.add(FloorAtom{sL, U, floor, false});
      res.charts.push_back(add_chart(rpath, "region", depth, lmap, reg));
      if (pmin < 2 * std::ldexp(pmax, -5)) {
        RegionPredicate rest;
        rest.add(cls);
        rest.add(leaf);
        rest.add(FloorAtom{sL, U, floor, true});
        res.unresolved.push_back(add_unresolved(rpath, lmap, std::move(rest), "zero set of a face polynomial in " +
                                                                               std::to_string(d.z_vars.size()) +
                                                                               " variables"));
      }
      checks[{d.face, d.k}] = std::move(chk);
      continue;
    }
    // One z variable: recentre at the rational zeros of the face polynomial.
    chk.kind = RegionCheck::Kind::Zeros;
    const int zv = d.z_vars[0];
    chk.zv = zv;
    const UPoly P = restrict_univariate(U, zv);
    auto roots = rational_roots(P);
    std::vector<std::pair<Rational, int>> inside;
    for (const auto& rt : roots) {
      if (norm_.compare_abs(rt.first, Rational(1)) <= 0) inside.push_back(rt);
    }
    int ridx = 0;
    for (const auto& [z0, mult] : inside) {
      ++atlas_.stats.recentre_checks;
      if (mult > m - 1) ++atlas_.stats.recentre_order_violations;
      ChartMap cmap = lmap;
      AffineStep shift{identity_matrix(n), Vector(n, Rational(0))};
      shift.b[zv] = z0;
      cmap.push_back(shift);
      std::vector<Series> im;
      for (int l = 0; l < n; ++l) im.push_back(Series::variable(n, l));
      im[zv] = im[zv] + Series::constant(n, z0);
      Series Gc = U.with_trunc(std::nullopt).substitute(im);
      if (U.trunc_order()) Gc = Gc.truncated(*U.trunc_order());
      std::vector<bool> cprot(n, true);
      cprot[zv] = false;
      const std::size_t c0 = res.charts.size();
      const std::size_t u0 = res.unresolved.size();
      JobResult child = run(Gc, cmap, cprot, rpath + "r" + std::to_string(ridx++), depth + 1);
      res.charts.insert(res.charts.end(), child.charts.begin(), child.charts.end());
      res.unresolved.insert(res.unresolved.end(), child.unresolved.begin(), child.unresolved.end());
      add_atom(res, c0, u0, cls);
      add_atom(res, c0, u0, leaf);
      add_atom(res, c0, u0, BallAtom{sL, zv, z0, child.radius, false});
      for (std::size_t t = c0; t < res.charts.size(); ++t) atlas_.charts[res.charts[t]].kind = "zero-cell";
      chk.cells.push_back({z0, child.radius, true, child.other});
    }
    // Zeros without a rational centre stay unresolved cells.
    const UPoly R = squarefree_remainder(P, roots);
    if (R.size() >= 2) {
      std::vector<Cell> bad;
      if (norm_.is_real()) {
        for (const auto& [a, b] : isolate_real_roots(R, Rational(-1), Rational(1), Rational(1, 32))) {
          bad.push_back({(a + b) / 2, (b - a) / 2 + Rational(1, 128), false, Rational(0)});
        }
      } else {
        int K = 1;
        while (std::pow(static_cast<double>(norm_.prime), K + 1) <= 4096.0) ++K;
        for (const auto& r0 : padic_root_residues(R, norm_.prime, K)) {
          bad.push_back({r0, prime_power(norm_.prime, -(K - 1)), false, Rational(0)});
        }
      }
      for (const auto& cell : bad) {
        RegionPredicate rest;
        rest.add(cls);
        rest.add(leaf);
        rest.add(BallAtom{sL, zv, cell.center, cell.radius, false});
        res.unresolved.push_back(add_unresolved(rpath, lmap, std::move(rest), "irrational zero of a face polynomial"));
        chk.cells.push_back(cell);
      }
    }
    for (const auto& cell : chk.cells) reg.add(BallAtom{sL, zv, cell.center, cell.radius, true});
    res.charts.push_back(add_chart(rpath, "region", depth, lmap, std::move(reg)));
    checks[{d.face, d.k}] = std::move(chk);
  }

  // Radius: inside E after the preparation, then shrunk until the sampled floors hold.
  Rational r = r_cap / consts.C.back();
  if (norm_.is_real()) {
    r = std::min(r, Rational(1, 2));
  } else {
    Rational pr = 1;
    while (pr >= r) pr /= norm_.prime;  // p-power at or below r
    r = pr;
  }
  bool ok = false;
  for (int iter = 0; iter < 12 && !ok; ++iter) {
    ok = true;
    for (std::size_t s = 0; s < cfg_.radius_samples && ok; ++s) {
      const Vector x = sample_cube_point(rng, n, r, norm_, true);
      ok = sample_ok(x, local, fd, consts, tree, checks);
    }
    if (!ok) {
      r *= shrink_factor(norm_);
      ++atlas_.stats.radius_shrinks;
    }
  }
  if (!ok) ++atlas_.stats.radius_failures;
  res.radius = r;
  return res;
}

}  // namespace

Vector sample_cube_point(std::mt19937_64& rng, int n, const Rational& r, const Norm& norm, bool log_mix) {
  Vector x(n);
  std::uniform_int_distribution<unsigned long> mant(1, (1UL << 31) - 1);
  if (norm.is_real()) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int l = 0; l < n; ++l) {
      Rational q = r * Rational(mpz_class(mant(rng)));
      mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), 31);
      if (log_mix && (rng() & 1ULL)) {
        // Extra dyadic scale 2^-s, s uniform in [0, 30).
        const auto s = static_cast<mp_bitcnt_t>(unit(rng) * 30);
        mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), s);
      }
      q.canonicalize();
      if (rng() & 1ULL) q = -q;
      x[l] = q;
    }
    return x;
  }
  // Smallest valuation strictly inside the radius, then Haar-distributed increments.
  long v = 0;
  const Rational p(mpz_class(norm.prime));
  Rational pv = 1;
  while (pv >= r) {
    pv /= p;
    ++v;
  }
  while (pv * p < r) {
    pv *= p;
    --v;
  }
  std::uniform_int_distribution<unsigned long> ud(1, (1UL << 24) - 1);
  std::uniform_int_distribution<unsigned long> digit(0, norm.prime - 1);
  for (int l = 0; l < n; ++l) {
    long val = v;
    while (digit(rng) == 0 && val < v + 200) ++val;
    if (log_mix && (rng() & 1ULL)) val += static_cast<long>(rng() % 20);
    unsigned long u;
    do {
      u = ud(rng);
    } while (u % norm.prime == 0);
    Rational q = prime_power(norm.prime, val) * Rational(mpz_class(u));
    if (rng() & 1ULL) q = -q;
    x[l] = q;
  }
  return x;
}

namespace {

void finalize_chart(Chart& c, const Series& f, int frame_steps, int T) {
  bool truncated = !f.is_polynomial();
  for (const auto& st : c.map.steps()) {
    if (const auto* q = std::get_if<QuasiStep>(&st)) truncated = truncated || !q->a.is_polynomial();
  }
  c.truncated = truncated;
  const std::optional<int> t = truncated ? std::optional<int>(T) : std::nullopt;
  auto [mono, unit] = factor_monomial(chart_pullback(f, c.map, t));
  c.f = {mono, unit};
  // Quasitranslations have determinant 1, so the Jacobian of the stored polynomial map is exact.
  auto [jm, ju] = factor_monomial(jacobian_determinant_series(as_polynomial(c.map)));
  c.jacobian = {jm, ju};
  const int n = f.dim();
  const ChartMap tail = chart_suffix(c.map, static_cast<std::size_t>(frame_steps));
  c.coordinates.clear();
  for (int k = 0; k + 1 < n; ++k) {
    auto [cm, cu] = factor_monomial(chart_pullback(Series::variable(n, k), tail, t));
    c.coordinates.push_back({cm, cu});
  }
}

}  // namespace

Atlas resolve(const Series& f, const EngineConfig& cfg) {
  if (f.is_zero()) throw InputZero();
  const int n = f.dim();
  Atlas atlas;
  atlas.n = n;
  atlas.input = f;
  atlas.config = cfg;
  Engine eng(cfg, atlas);
  ChartMap prefix(n);
  Series G = f;
  Rational gain = 1;
  const bool monomial = sgn(factor_monomial(f).second.constant_term()) != 0;
  if (sgn(f.constant_term()) == 0 && n >= 2 && !monomial) {
    // Top frame: a direction of nonvanishing m-th derivative becomes x_n.
    auto dir = min_order_direction(f, cfg.direction_den_cap);
    Vector en(n, Rational(0));
    en[n - 1] = 1;
    if (!dir.v.empty() && dir.v != en) {
      auto rot = rotate_to_axis(f, dir.v, n - 1);
      prefix.push_back(rot.A);
      G = rot.s_rot;
      gain = inverse_gain(rot.A.A, cfg.norm);
      atlas.frame_steps = 1;
    }
  }
  std::vector<bool> prot(n, true);
  prot[n - 1] = false;
  JobResult res = eng.run(G, prefix, prot, "c", 0);
  atlas.radius = res.radius / gain;
  for (auto& c : atlas.charts) finalize_chart(c, f, atlas.frame_steps, cfg.trunc_order);
  return atlas;
}

}  // namespace monores
