#include "monores/engine.hpp"

#include <algorithm>
#include <cmath>

namespace monores {

namespace {

int default_axis(int n, std::optional<int> axis) { return axis ? *axis : n - 1; }

Series homogeneous_part(const Series& s, int m) {
  Series out(s.dim());
  for (const auto& [e, c] : s.terms()) {
    if (total_degree(e) == m) out.add_term(e, c);
  }
  return out;
}

std::optional<int> min_trunc(const Series& a, const Series& b) {
  if (!a.trunc_order()) return b.trunc_order();
  if (!b.trunc_order()) return a.trunc_order();
  return std::min(*a.trunc_order(), *b.trunc_order());
}

// 1/d as a series truncated at T; d(0) != 0.
Series reciprocal(const Series& d, int T) {
  const Rational d0 = d.constant_term();
  if (sgn(d0) == 0) throw Error("graph iteration stalled: derivative vanishes at the origin");
  Series e = d - Series::constant(d.dim(), d0);
  e *= Rational(-1) / d0;
  e = e.truncated(T);
  Series acc = Series::constant(d.dim(), Rational(1) / d0, T);
  Series power = Series::constant(d.dim(), Rational(1), T);
  for (int k = 1; k <= T; ++k) {
    power = power.multiply(e).truncated(T);
    if (power.is_zero()) break;
    acc += power * (Rational(1) / d0);
  }
  return acc.truncated(T);
}

std::vector<Series> quasi_images(int n, int axis, const Series& g) {
  std::vector<Series> im;
  for (int l = 0; l < n; ++l) im.push_back(Series::variable(n, l));
  im[axis] = im[axis] + g.with_trunc(std::nullopt);
  return im;
}

}  // namespace

DirectionResult min_order_direction(const Series& s, int den_cap, const std::vector<int>& vars) {
  DirectionResult r;
  r.m = s.min_degree();
  if (r.m < 0) throw InputZero();
  std::vector<int> vs = vars;
  if (vs.empty()) {
    for (int l = 0; l < s.dim(); ++l) vs.push_back(l);
  }
  const Series hm = homogeneous_part(s, r.m);
  for (const auto& v : rational_directions(s.dim(), vs, std::max(den_cap, r.m + 1))) {
    if (sgn(hm.evaluate(v)) != 0) {
      r.v = v;
      return r;
    }
  }
  return r;
}

Rotation rotate_to_axis(const Series& s, const Vector& v, std::optional<int> axis_opt) {
  const int n = s.dim();
  const int axis = default_axis(n, axis_opt);
  // Primitive integer multiple of v.
  mpz_class l = 1;
  for (const auto& c : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> w;
  mpz_class g = 0;
  for (const auto& c : v) {
    w.emplace_back(c * l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w.back().get_mpz_t());
  }
  if (g == 0) throw Error("rotation direction is zero");
  Rotation r;
  r.axis = axis;
  r.A.A = identity_matrix(n);
  r.A.b.assign(n, Rational(0));
  if (sgn(v[axis]) == 0) {
    int last = -1;
    for (int k = 0; k < n; ++k) {
      if (sgn(v[k]) != 0) last = k;
    }
    for (int k = 0; k < n; ++k) r.A.A[k][last] = k == axis ? 1 : 0;
  }
  for (int k = 0; k < n; ++k) r.A.A[k][axis] = Rational(w[k] / g);
  r.s_rot = s.substitute(step_images(Step{r.A}, n), s.trunc_order());
  return r;
}

Series graph_function(const Series& s, int m, int T, std::optional<int> axis_opt) {
  const int n = s.dim();
  const int axis = default_axis(n, axis_opt);
  if (m < 1) throw Error("graph function needs m >= 1");
  Series h = s;
  for (int t = 0; t < m - 1; ++t) h = h.derivative(axis);
  const Series dh = h.derivative(axis);
  Series g(n, T);
  for (int iter = 0; iter < 2 * T + 8; ++iter) {
    // Evaluate at x_axis = g: images with x_axis replaced by g itself.
    std::vector<Series> at_g;
    for (int l = 0; l < n; ++l) at_g.push_back(Series::variable(n, l));
    at_g[axis] = g.with_trunc(std::nullopt);
    const Series hv = h.substitute(at_g, T);
    if (hv.is_zero()) break;
    const Series dv = dh.substitute(at_g, T);
    Series corr = hv.truncated(T).multiply(reciprocal(dv, T)).truncated(T);
    const Series next = (g - corr).truncated(T);
    if (next == g) break;
    g = next;
  }
  // A polynomial g solving the identity exactly is returned without truncation.
  if (h.is_polynomial()) {
    std::vector<Series> at_g;
    for (int l = 0; l < n; ++l) at_g.push_back(Series::variable(n, l));
    at_g[axis] = g.with_trunc(std::nullopt);
    if (h.substitute(at_g).is_zero()) return g.with_trunc(std::nullopt);
  }
  return g;
}

std::map<int, Series> weierstrass_form(const Series& s, const Series& g, int m, std::optional<int> axis_opt) {
  const int n = s.dim();
  const int axis = default_axis(n, axis_opt);
  const Series F = s.substitute(quasi_images(n, axis, g), min_trunc(s, g));
  auto h = F.coefficients_in(axis);
  if (auto it = h.find(m - 1); it != h.end() && !it->second.is_zero()) {
    throw Error("prepared series keeps a nonzero x^" + std::to_string(m - 1) + " coefficient");
  }
  h.erase(m - 1);
  if (h.count(m) == 0 || sgn(h.at(m).constant_term()) == 0) {
    throw Error("prepared series has h_m(0) = 0");
  }
  for (const auto& [p, hp] : h) {
    if (p < m && sgn(hp.constant_term()) != 0) throw Error("prepared series has h_p(0) != 0 for p < m");
  }
  return h;
}

Series coefficient_product(const std::map<int, Series>& h, int m, int n, std::optional<int> axis_opt) {
  const int axis = default_axis(n, axis_opt);
  Series z = Series::constant(n, Rational(1));
  for (int k = 0; k < n; ++k) {
    if (k != axis) z = z.multiply(Series::variable(n, k));
  }
  for (const auto& [p, hp] : h) {
    if (p < m - 1 && !hp.is_zero()) z = z.multiply(hp);
  }
  if (z.trunc_order()) z = z.truncated(*z.trunc_order());
  return z.drop_variable(axis);
}

Rational unit_radius(const Series& u, const Norm& norm) {
  const Rational u0 = u.constant_term();
  if (sgn(u0) == 0) throw Error("unit radius needs u(0) != 0");
  if (norm.is_real()) {
    const double target = std::fabs(to_double(u0)) / 4;
    Rational r(1, 2);
    for (int k = 1; k < 400; ++k, r /= 2) {
      double sum = 0;
      const double rd = std::ldexp(1.0, -k);
      for (const auto& [e, c] : u.terms()) {
        const int d = total_degree(e);
        if (d > 0) sum += std::fabs(to_double(c)) * std::pow(rd, d);
      }
      if (sum <= target) return r;
    }
    throw Error("unit radius search failed");
  }
  // Ultrametric: every nonconstant term must be strictly smaller than u(0).
  const long v0 = padic_valuation(u0, norm.prime);
  long k = 1;
  for (const auto& [e, c] : u.terms()) {
    const int d = total_degree(e);
    if (d == 0) continue;
    const long vc = padic_valuation(c, norm.prime);
    // need vc + k d > v0
    while (vc + k * d <= v0) ++k;
  }
  return Rational(1) / rational_pow(Rational(mpz_class(norm.prime)), static_cast<unsigned long>(k));
}

ChartMap as_polynomial(const ChartMap& map) {
  ChartMap out(map.dim());
  for (const auto& st : map.steps()) {
    if (const auto* q = std::get_if<QuasiStep>(&st)) {
      out.push_back(QuasiStep{q->axis, q->a.with_trunc(std::nullopt)});
    } else {
      out.push_back(st);
    }
  }
  return out;
}

Series chart_pullback(const Series& s, const ChartMap& map, std::optional<int> T) {
  if (!T) return compose_chart(s, map);
  // Coordinate images of the polynomial map, innermost step first, as series in the chart
  // coordinates truncated at T. Ring operations on truncated series are exact up to T, so
  // shifts cannot bring unknown terms down.
  const int n = map.dim();
  std::vector<Series> im;
  for (int l = 0; l < n; ++l) im.push_back(Series::variable(n, l, *T));
  const ChartMap poly = as_polynomial(map);
  for (std::size_t i = poly.size(); i-- > 0;) {
    std::vector<Series> next;
    for (const auto& c : step_images(poly.steps()[i], n)) next.push_back(c.substitute(im, *T));
    im = std::move(next);
  }
  bool centred = true;
  for (const auto& x : im) centred = centred && sgn(x.constant_term()) == 0;
  // A truncated s is only known near 0, so it needs images that vanish at the origin.
  if (!s.is_polynomial() && !centred) return compose_chart(s, map, T);
  return s.substitute(im, T);
}

ChartMap chart_suffix(const ChartMap& map, std::size_t from) {
  ChartMap out(map.dim());
  for (std::size_t i = from; i < map.size(); ++i) out.push_back(map.steps()[i]);
  return out;
}

}  // namespace monores
