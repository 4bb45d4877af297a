#include "monores/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace monores {

const Rational& RegionConstants::c(int i) const {
  static const Rational one = 1;
  if (i <= 0) return one;
  if (i > static_cast<int>(C.size())) throw Error("region constant index out of range");
  return C[i - 1];
}

double RegionConstants::log_c(int i) const { return i <= 0 ? 0.0 : log_abs_real(c(i)); }

RegionConstants choose_constants(int n, int N) {
  if (N < 2) throw Error("growth parameter N must be at least 2");
  if (n < 1) throw Error("dimension must be positive");
  RegionConstants rc;
  rc.N = N;
  Rational c = N + 1;
  rc.C.push_back(c);
  for (int i = 1; i < n; ++i) {
    c = rational_pow(c, static_cast<unsigned long>(N)) + 1;
    rc.C.push_back(c);
  }
  return rc;
}

FaceData FaceData::from(const Polyhedron& p) {
  FaceData fd;
  fd.n = p.n;
  fd.vertices = p.vertices;
  fd.faces = compact_faces(p);
  return fd;
}

std::vector<int> FaceData::face_vertex_indices(int f) const {
  std::vector<int> out;
  for (const auto& v : faces.at(f).vertices) {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) throw Error("face vertex is not a polyhedron vertex");
    out.push_back(static_cast<int>(it - vertices.begin()));
  }
  return out;
}

int FaceData::find(int dim, int index) const {
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (faces[f].dim == dim && faces[f].index == index) return static_cast<int>(f);
  }
  return -1;
}

std::vector<double> vertex_log_abs(const Vector& x, const FaceData& fd, const Norm& norm) {
  std::vector<double> out;
  out.reserve(fd.vertices.size());
  if (norm.is_real()) {
    std::vector<double> lx(x.size());
    for (std::size_t l = 0; l < x.size(); ++l) lx[l] = norm.log_abs(x[l]);
    for (const auto& v : fd.vertices) {
      double s = 0;
      for (std::size_t l = 0; l < x.size(); ++l) {
        if (v[l] != 0) s += v[l] * lx[l];
      }
      out.push_back(s);
    }
    return out;
  }
  // Integer valuations keep p-adic ties exact.
  std::vector<long> val(x.size());
  for (std::size_t l = 0; l < x.size(); ++l) val[l] = padic_valuation(x[l], norm.prime);
  const double lp = std::log(static_cast<double>(norm.prime));
  for (const auto& v : fd.vertices) {
    long s = 0;
    for (std::size_t l = 0; l < x.size(); ++l) s += v[l] * val[l];
    out.push_back(-static_cast<double>(s) * lp);
  }
  return out;
}

namespace {

bool in_E(const Vector& x, const RegionConstants& consts, const Norm& norm) {
  const Rational bound = 1 / consts.C.back();
  for (const auto& xl : x) {
    if (sgn(xl) == 0 || norm.compare_radius(xl, bound) >= 0) return false;
  }
  return true;
}

struct FaceStats {
  double sup_on = -std::numeric_limits<double>::infinity();
  double inf_on = std::numeric_limits<double>::infinity();
  double sup_off = -std::numeric_limits<double>::infinity();
  bool has_off = false;
};

FaceStats face_stats(const std::vector<double>& logs, const std::vector<int>& on) {
  FaceStats st;
  std::vector<char> mark(logs.size(), 0);
  for (int v : on) {
    mark[v] = 1;
    st.sup_on = std::max(st.sup_on, logs[v]);
    st.inf_on = std::min(st.inf_on, logs[v]);
  }
  for (std::size_t v = 0; v < logs.size(); ++v) {
    if (!mark[v]) {
      st.has_off = true;
      st.sup_off = std::max(st.sup_off, logs[v]);
    }
  }
  return st;
}

// Scan order: dimension descending, index ascending.
std::vector<int> scan_order(const FaceData& fd) {
  std::vector<int> order(fd.faces.size());
  for (std::size_t f = 0; f < order.size(); ++f) order[f] = static_cast<int>(f);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (fd.faces[a].dim != fd.faces[b].dim) return fd.faces[a].dim > fd.faces[b].dim;
    return fd.faces[a].index < fd.faces[b].index;
  });
  return order;
}

std::optional<std::pair<int, int>> classify_logs(const std::vector<double>& logs, const RegionConstants& consts,
                                                 const FaceData& fd, const std::vector<int>& order) {
  const double gmax = *std::max_element(logs.begin(), logs.end());
  for (int f : order) {
    const Face& face = fd.faces[f];
    auto st = face_stats(logs, fd.face_vertex_indices(f));
    if (st.sup_on != gmax) continue;
    if (st.inf_on < gmax - consts.log_c(face.dim)) continue;
    return std::make_pair(face.dim, face.index);
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<int, int>> classify_in_E(const Vector& x, const RegionConstants& consts,
                                                 const FaceData& fd, const Norm& norm) {
  if (static_cast<int>(x.size()) != fd.n || !in_E(x, consts, norm)) return std::nullopt;
  return classify_logs(vertex_log_abs(x, fd, norm), consts, fd, scan_order(fd));
}

std::optional<std::pair<int, int>> classify_point(const Vector& x, const RegionConstants& consts,
                                                  const FaceData& fd, const Norm& norm) {
  if (static_cast<int>(x.size()) != fd.n) throw Error("point has wrong dimension");
  if (!in_E(x, consts, norm)) throw Error("point lies outside the cube E");
  return classify_logs(vertex_log_abs(x, fd, norm), consts, fd, scan_order(fd));
}

Vector sample_E_point(std::mt19937_64& rng, int n, const Rational& Cn, const Norm& norm) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector x(n);
  const double logC = log_abs_real(Cn);
  if (norm.is_real()) {
    for (int l = 0; l < n; ++l) {
      // |x| = exp(-logC (1 + u)) as a dyadic rational with a 31-bit mantissa.
      const double l2 = -logC * (1.0 + unit(rng)) / std::log(2.0);
      long e = static_cast<long>(std::floor(l2)) - 30;
      const double mant = std::exp2(l2 - static_cast<double>(e));
      Rational q = mpz_class(static_cast<unsigned long>(std::llround(mant)));
      // Shift by 2^e exactly.
      if (e >= 0) {
        mpz_mul_2exp(q.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
      } else {
        mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
      }
      q.canonicalize();
      // Guard against rounding to the open boundary.
      const Rational bound = 1 / Cn;
      while (q >= bound) q /= 2;
      if (rng() & 1ULL) q = -q;
      x[l] = q;
    }
    return x;
  }
  const double lp = std::log(static_cast<double>(norm.prime));
  long vlo = static_cast<long>(std::floor(logC / lp)) + 1;
  long vhi = std::max(vlo, static_cast<long>(std::floor(2 * logC / lp)));
  std::uniform_int_distribution<long> vd(vlo, vhi);
  std::uniform_int_distribution<unsigned long> ud(1, (1UL << 24) - 1);
  for (int l = 0; l < n; ++l) {
    unsigned long u;
    do {
      u = ud(rng);
    } while (u % norm.prime == 0);
    // p^v * u with u a unit: valuation exactly v.
    Rational q = rational_pow(Rational(mpz_class(norm.prime)), static_cast<unsigned long>(vd(rng)));
    q *= Rational(mpz_class(u));
    if (rng() & 1ULL) q = -q;
    x[l] = q;
  }
  return x;
}

DominationReport verify_domination(const FaceData& fd, const RegionConstants& consts, std::size_t samples,
                                 std::uint64_t seed, const Norm& norm) {
  DominationReport rep;
  rep.N = consts.N;
  rep.census.assign(fd.faces.size(), 0);
  rep.mu_hat = std::numeric_limits<double>::infinity();
  const int n = fd.n;
  const auto order = scan_order(fd);
  std::vector<std::vector<int>> on(fd.faces.size());
  for (std::size_t f = 0; f < fd.faces.size(); ++f) on[f] = fd.face_vertex_indices(static_cast<int>(f));
  std::mt19937_64 rng(seed);
  const double log_cn1 = consts.log_c(n - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    Vector x = sample_E_point(rng, n, consts.C.back(), norm);
    auto logs = vertex_log_abs(x, fd, norm);
    auto cls = classify_logs(logs, consts, fd, order);
    ++rep.samples;
    if (!cls) {
      ++rep.violations_b;
      continue;
    }
    const int f = fd.find(cls->first, cls->second);
    ++rep.census[f];
    // Part b): off-face vertices are dominated by a power of C_{i+1}.
    auto st = face_stats(logs, on[f]);
    if (st.has_off) {
      const double mu = (st.inf_on - st.sup_off) / consts.log_c(std::min(cls->first + 1, n));
      if (!(mu > 0)) ++rep.violations_b;
      rep.mu_hat = std::min(rep.mu_hat, mu);
    }
    const double gmax = *std::max_element(logs.begin(), logs.end());
    if (cls->first > 0 && st.inf_on < gmax - consts.log_c(cls->first)) ++rep.violations_b;
    // Part a): hypotheses 1) and 2) for any face force membership.
    for (std::size_t g = 0; g < fd.faces.size(); ++g) {
      auto sg = face_stats(logs, on[g]);
      const int i = fd.faces[g].dim;
      if (i > 0 && sg.inf_on < gmax - consts.log_c(i)) continue;
      if (sg.has_off && !(sg.sup_off < sg.inf_on - log_cn1)) continue;
      if (static_cast<int>(g) != f) ++rep.violations_a;
    }
  }
  if (!std::isfinite(rep.mu_hat)) rep.mu_hat = 1;  // no off-face vertices anywhere
  return rep;
}

std::pair<RegionConstants, DominationReport> adaptive_constants(const FaceData& fd, std::size_t samples,
                                                               std::uint64_t seed, const Norm& norm,
                                                               int start_N) {
  int N = std::max(2, start_N);
  for (;;) {
    RegionConstants rc = choose_constants(fd.n, N);
    DominationReport rep = verify_domination(fd, rc, samples, seed, norm);
    rc.mu_estimate = rep.mu_hat;
    if (rep.ok() || N >= 64) return {rc, rep};
    N = std::min(64, 2 * N);
  }
}

std::vector<RegionDesc> region_descriptions(const BlowupTree& tree, const FaceData& fd) {
  std::vector<RegionDesc> out;
  const int n = fd.n;
  const auto order = scan_order(fd);
  for (int f : order) {
    const Face& face = fd.faces[f];
    const auto on_idx = fd.face_vertex_indices(f);
    std::vector<char> on(fd.vertices.size(), 0);
    for (int v : on_idx) on[v] = 1;
    for (std::size_t k = 0; k < tree.leaves.size(); ++k) {
      const auto& em = tree.leaves[k].map;
      RegionDesc d;
      d.i = face.dim;
      d.j = face.index;
      d.k = static_cast<int>(k);
      d.face = f;
      std::vector<Exponent> img;
      for (const auto& v : fd.vertices) img.push_back(em.apply(v));
      auto cmin = [&](const std::vector<int>& idx) {
        int best = -1;
        for (int v : idx) {
          if (best < 0 || compare_componentwise(img[v], img[best]) < 0) best = v;
        }
        return best;
      };
      auto cmax = [&](const std::vector<int>& idx) {
        int best = -1;
        for (int v : idx) {
          if (best < 0 || compare_componentwise(img[v], img[best]) > 0) best = v;
        }
        return best;
      };
      std::vector<int> all(fd.vertices.size()), off;
      for (std::size_t v = 0; v < all.size(); ++v) {
        all[v] = static_cast<int>(v);
        if (!on[v]) off.push_back(static_cast<int>(v));
      }
      const int v1 = cmin(all);
      const int v2 = cmax(on_idx);
      d.vmin = img[v1];
      if (!on[v1]) d.empty = true;
      Exponent p(n, 0);
      bool p_nonneg = true;
      for (int l = 0; l < n; ++l) {
        p[l] = img[v2][l] - img[v1][l];
        if (p[l] < 0) p_nonneg = false;
      }
      if (!p_nonneg) d.empty = true;
      if (face.dim > 0) d.p_exponent = p;
      for (int l = 0; l < n; ++l) {
        if (face.dim > 0 && p[l] != 0) {
          d.z_vars.push_back(l);
        } else {
          d.y_vars.push_back(l);
        }
      }
      if (face.dim > 0 && static_cast<int>(d.z_vars.size()) == n) d.empty = true;
      if (face.dim > 0 && d.z_vars.empty()) d.empty = true;
      if (!off.empty()) {
        const int v3 = cmin(off);
        d.q_exponent.assign(n, 0);
        for (int l = 0; l < n; ++l) {
          d.q_exponent[l] = img[v3][l] - img[v2][l];
          if (d.q_exponent[l] < 0) d.empty = true;
        }
        for (int l : d.y_vars) d.s_exponent.push_back(d.q_exponent[l]);
        for (int l : d.z_vars) d.t_exponent.push_back(d.q_exponent[l]);
        // |q| must be small while |t(z)| is bounded below, so s = 1 leaves nothing.
        if (total_degree(d.s_exponent) == 0) d.empty = true;
      }
      for (int l : d.y_vars) d.alpha.push_back(img[v2][l]);
      out.push_back(std::move(d));
    }
  }
  return out;
}

bool tail_bound_check(const Series& s, const FaceData& fd, int face, int d, const Vector& x,
                      const RegionConstants& consts, const Norm& norm) {
  const Face& F = fd.faces.at(face);
  double mass = 0;  // E_{d,f}
  double tail = 0;
  std::vector<double> lx(x.size());
  for (std::size_t l = 0; l < x.size(); ++l) lx[l] = norm.log_abs(x[l]);
  for (const auto& [e, c] : s.terms()) {
    const double w = std::fabs(to_double(c)) * std::pow(static_cast<double>(total_degree(e)), d);
    mass += w;
    if (F.contains(e)) continue;
    double lg = 0;
    for (std::size_t l = 0; l < x.size(); ++l) lg += e[l] * lx[l];
    tail += w * std::exp(lg);
  }
  auto logs = vertex_log_abs(x, fd, norm);
  const double sup = std::exp(*std::max_element(logs.begin(), logs.end()));
  const int i = std::min(F.dim + 1, fd.n);
  const double rhs = mass * std::exp(-consts.eta_estimate * consts.log_c(i)) * sup;
  return tail < rhs || tail == 0;
}

bool region_contains(const BlowupTree& tree, int leaf, const FaceData& fd, const RegionConstants& consts,
                     int i, int j, const Vector& w, const Norm& norm) {
  if (!leaf_region_contains(tree, leaf, w, consts.C.back(), norm)) return false;
  const auto& em = tree.leaves.at(leaf).map;
  Vector x(tree.n);
  for (int l = 0; l < tree.n; ++l) {
    Exponent e = em.component(l);
    Rational g = 1;
    for (int m = 0; m < tree.n; ++m) g *= rational_pow(w[m], static_cast<unsigned long>(e[m]));
    x[l] = g;
  }
  auto cls = classify_in_E(x, consts, fd, norm);
  return cls && cls->first == i && cls->second == j;
}

std::vector<Vector> rational_directions(int n, const std::vector<int>& vars, int max_den) {
  std::set<Vector> seen;
  std::vector<Vector> out;
  // Coordinate axes first, last variable first.
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    Vector e(n, Rational(0));
    e[*it] = 1;
    if (seen.insert(e).second) out.push_back(e);
  }
  std::vector<Vector> rest;
  const std::size_t m = vars.size();
  std::vector<int> num(m, 0);
  for (int d = 1; d <= max_den; ++d) {
    std::fill(num.begin(), num.end(), -d);
    for (;;) {
      Rational total = 0;
      for (int k : num) total += Rational(std::abs(k), d);
      if (sgn(total) != 0) {
        Vector b(n, Rational(0));
        for (std::size_t t = 0; t < m; ++t) {
          b[vars[t]] = Rational(num[t], d) / total;
          b[vars[t]].canonicalize();
        }
        if (seen.insert(b).second) rest.push_back(b);
      }
      std::size_t t = 0;
      while (t < m && num[t] == d) num[t++] = -d;
      if (t == m) break;
      ++num[t];
    }
  }
  std::sort(rest.begin(), rest.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::optional<DerivativeWitness> derivative_witness(const RegionDesc& region, const BlowupTree& tree,
                                                    const FaceData& fd, const RegionConstants& consts,
                                                    const Series& F, int max_order, std::size_t samples,
                                                    std::uint64_t seed, const Norm& norm) {
  if (region.empty) return std::nullopt;
  const int n = tree.n;
  // Region draws: points of E located in leaf k and classified into (i, j).
  std::vector<Vector> pts;
  std::mt19937_64 rng(seed);
  const std::size_t attempts = samples * 400;
  for (std::size_t a = 0; a < attempts && pts.size() < samples; ++a) {
    Vector x = sample_E_point(rng, n, consts.C.back(), norm);
    auto cls = classify_in_E(x, consts, fd, norm);
    if (!cls || cls->first != region.i || cls->second != region.j) continue;
    auto [leaf, w] = tree.locate(x, norm);
    if (leaf != region.k) continue;
    pts.push_back(std::move(w));
  }
  if (pts.empty()) return std::nullopt;
  std::vector<int> vars = region.z_vars;
  const int max_den = 3;
  auto dirs = vars.empty() ? std::vector<Vector>{Vector(n, Rational(0))} : rational_directions(n, vars, max_den);
  for (int p = 0; p <= max_order; ++p) {
    for (const auto& beta : dirs) {
      if (p > 0 && vars.empty()) break;
      Series D = p == 0 ? F : F.directional_derivative(beta, p);
      double lo = std::numeric_limits<double>::infinity();
      for (const auto& w : pts) lo = std::min(lo, D.evaluate(w, norm).log_abs);
      if (std::isfinite(lo) && lo > std::log(1e-12)) {
        DerivativeWitness wit;
        wit.beta = p == 0 ? Vector(n, Rational(0)) : beta;
        wit.order = p;
        wit.delta = rational_from_double(std::exp(lo) / 2);
        wit.max_order = max_order;
        return wit;
      }
      if (p == 0) break;
    }
  }
  return std::nullopt;
}

}  // namespace monores
