#include "monores/newton.hpp"

#include "monores/lp.hpp"

#include <algorithm>
#include <set>

namespace monores {

namespace {

// Row-reduces m in place and returns the pivot columns.
std::vector<int> row_reduce(Matrix& m, int cols) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational piv = m[row][c];
    for (auto& v : m[row]) v /= piv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c];
      for (int j = 0; j < cols; ++j) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

int rank_of(Matrix m, int cols) { return static_cast<int>(row_reduce(m, cols).size()); }

// Basis vector of a one-dimensional null space, or empty when the null space is not 1-D.
Vector null_vector(Matrix m, int cols) {
  auto pivots = row_reduce(m, cols);
  if (static_cast<int>(pivots.size()) != cols - 1) return {};
  int free_col = 0;
  while (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;
  Vector v(cols, 0);
  v[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free_col];
  return v;
}

Vector diff(const Exponent& a, const Exponent& b) {
  Vector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

// Is alpha inside conv(others) + orthant?
bool dominated(const Exponent& alpha, const std::vector<Exponent>& others) {
  if (others.empty()) return false;
  const int n = static_cast<int>(alpha.size());
  const int k = static_cast<int>(others.size());
  LinearProgram lp(k);
  for (int i = 0; i < n; ++i) {
    Vector row(k);
    for (int j = 0; j < k; ++j) row[j] = others[j][i];
    lp.add(row, LinearProgram::Rel::LE, alpha[i]);
  }
  lp.add(Vector(k, 1), LinearProgram::Rel::EQ, 1);
  return solve(lp).optimal();
}

template <typename F>
void for_each_subset(int n, int size, F&& f) {
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i;
  if (size > n) return;
  while (true) {
    f(idx);
    int i = size - 1;
    while (i >= 0 && idx[i] == n - size + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<Facet> find_facets(int n, const std::vector<Exponent>& vertices) {
  std::vector<Facet> facets;
  std::set<std::pair<Vector, Rational>> seen;
  auto consider = [&](Vector a) {
    if (a.empty()) return;
    bool pos = std::all_of(a.begin(), a.end(), [](const Rational& v) { return sgn(v) >= 0; });
    bool neg = std::all_of(a.begin(), a.end(), [](const Rational& v) { return sgn(v) <= 0; });
    if (!pos && !neg) return;
    if (neg) {
      for (auto& v : a) v = -v;
    }
    Rational total = 0;
    for (const auto& v : a) total += v;
    if (sgn(total) == 0) return;
    for (auto& v : a) v /= total;
    Rational b = dot(a, vertices.front());
    for (const auto& v : vertices) b = std::min(b, dot(a, v));
    if (seen.count({a, b}) != 0) return;
    // Facet check: tight vertices plus recession directions span n-1 dimensions.
    std::vector<Exponent> tight;
    for (const auto& v : vertices) {
      if (dot(a, v) == b) tight.push_back(v);
    }
    Matrix span;
    for (std::size_t i = 1; i < tight.size(); ++i) span.push_back(diff(tight[i], tight[0]));
    for (int i = 0; i < n; ++i) {
      if (sgn(a[i]) == 0) {
        Vector e(n, 0);
        e[i] = 1;
        span.push_back(e);
      }
    }
    if (rank_of(span, n) != n - 1) return;
    seen.insert({a, b});
    facets.push_back({a, b});
  };

  if (n == 1) {
    consider(Vector{1});
    return facets;
  }
  const int V = static_cast<int>(vertices.size());
  for (int num_axes = 0; num_axes <= n - 1; ++num_axes) {
    const int num_points = n - num_axes;
    for_each_subset(n, num_axes, [&](const std::vector<int>& axes) {
      for_each_subset(V, std::min(num_points, V), [&](const std::vector<int>& pts) {
        if (static_cast<int>(pts.size()) != num_points) return;
        Matrix rows;
        for (std::size_t i = 1; i < pts.size(); ++i) rows.push_back(diff(vertices[pts[i]], vertices[pts[0]]));
        for (int ax : axes) {
          Vector e(n, 0);
          e[ax] = 1;
          rows.push_back(e);
        }
        consider(null_vector(rows, n));
      });
    });
  }
  std::sort(facets.begin(), facets.end(), [](const Facet& x, const Facet& y) {
    return std::tie(x.normal, x.offset) < std::tie(y.normal, y.offset);
  });
  return facets;
}

}  // namespace

Rational dot(const Vector& a, const Exponent& e) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * e[i];
  return s;
}

int affine_dimension(const std::vector<Exponent>& points) {
  if (points.size() <= 1) return 0;
  Matrix rows;
  for (std::size_t i = 1; i < points.size(); ++i) rows.push_back(diff(points[i], points[0]));
  return rank_of(rows, static_cast<int>(points[0].size()));
}

bool Face::contains(const Exponent& alpha) const { return dot(normal, alpha) == offset; }

Polyhedron build_polyhedron(int n, std::vector<Exponent> generators) {
  if (generators.empty()) throw Error("Newton polyhedron of the zero series");
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  Polyhedron p;
  p.n = n;
  p.generators = generators;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    std::vector<Exponent> others;
    for (std::size_t j = 0; j < generators.size(); ++j) {
      if (j != i) others.push_back(generators[j]);
    }
    if (!dominated(generators[i], others)) p.vertices.push_back(generators[i]);
  }
  p.facets = find_facets(n, p.vertices);
  return p;
}

Polyhedron build_polyhedron(const Series& s) {
  std::vector<Exponent> gens;
  for (const auto& [e, c] : s.terms()) gens.push_back(e);
  return build_polyhedron(s.dim(), std::move(gens));
}

std::vector<Face> compact_faces(const Polyhedron& p) {
  const int n = p.n;
  const int V = static_cast<int>(p.vertices.size());
  if (V > 20) throw BudgetError("too many vertices for face enumeration");
  std::vector<Face> faces;
  for (int size = 1; size <= V; ++size) {
    for_each_subset(V, size, [&](const std::vector<int>& idx) {
      std::vector<Exponent> S;
      for (int i : idx) S.push_back(p.vertices[i]);
      int dim = affine_dimension(S);
      if (dim > n - 1) return;
      // Variables a_1..a_n >= 1 (scaled positivity), b free.
      LinearProgram lp(n + 1);
      lp.free[n] = true;
      for (int i = 0; i < n; ++i) {
        Vector row(n + 1, 0);
        row[i] = 1;
        lp.add(row, LinearProgram::Rel::GE, 1);
      }
      std::vector<bool> in(V, false);
      for (int i : idx) in[i] = true;
      for (int v = 0; v < V; ++v) {
        Vector row(n + 1);
        for (int i = 0; i < n; ++i) row[i] = p.vertices[v][i];
        row[n] = -1;
        lp.add(row, in[v] ? LinearProgram::Rel::EQ : LinearProgram::Rel::GE, in[v] ? 0 : 1);
      }
      lp.objective.assign(n + 1, 0);
      for (int i = 0; i < n; ++i) lp.objective[i] = 1;
      auto r = solve(lp);
      if (!r.optimal()) return;
      Face f;
      f.dim = dim;
      f.vertices = S;
      f.normal.assign(r.x.begin(), r.x.begin() + n);
      f.offset = r.x[n];
      faces.push_back(std::move(f));
    });
  }
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    return std::tie(a.dim, a.vertices) < std::tie(b.dim, b.vertices);
  });
  std::vector<int> counter(n + 1, 0);
  for (auto& f : faces) f.index = counter[f.dim]++;
  return faces;
}

Series face_series(const Series& s, const Face& face) {
  auto p = build_polyhedron(s);
  for (const auto& v : face.vertices) {
    if (!std::binary_search(p.vertices.begin(), p.vertices.end(), v)) {
      throw Error("face is not a face of the series' Newton polyhedron");
    }
  }
  for (const auto& g : p.generators) {
    if (dot(face.normal, g) < face.offset) throw Error("face functional is not supporting");
  }
  Series out(s.dim(), s.trunc_order());
  for (const auto& [e, c] : s.terms()) {
    if (face.contains(e)) out.add_term(e, c);
  }
  return out;
}

Rational newton_distance(const Polyhedron& p) {
  Rational best = 0;
  bool first = true;
  for (const auto& f : p.facets) {
    Rational total = 0;
    for (const auto& a : f.normal) total += a;
    Rational t = f.offset / total;
    if (first || t > best) best = t;
    first = false;
  }
  return best;
}

CentralFace central_face(const Polyhedron& p) {
  const Rational t = newton_distance(p);
  std::vector<const Facet*> tight;
  for (const auto& f : p.facets) {
    Rational total = 0;
    for (const auto& a : f.normal) total += a;
    if (total * t == f.offset) tight.push_back(&f);
  }
  CentralFace out;
  for (const auto& v : p.vertices) {
    bool on = std::all_of(tight.begin(), tight.end(), [&](const Facet* f) { return dot(f->normal, v) == f->offset; });
    if (on) out.tight_vertices.push_back(v);
  }
  for (int i = 0; i < p.n; ++i) {
    bool bounded = std::any_of(tight.begin(), tight.end(), [&](const Facet* f) { return sgn(f->normal[i]) > 0; });
    if (!bounded) out.noncompact = true;
  }
  auto faces = compact_faces(p);
  const Face* best = nullptr;
  for (const auto& f : faces) {
    bool inside = std::all_of(f.vertices.begin(), f.vertices.end(), [&](const Exponent& v) {
      return std::find(out.tight_vertices.begin(), out.tight_vertices.end(), v) != out.tight_vertices.end();
    });
    if (!inside) continue;
    if (!out.noncompact && f.vertices.size() != out.tight_vertices.size()) continue;
    if (best == nullptr || f.dim > best->dim) best = &f;
  }
  if (best == nullptr) throw Error("central face not found");
  out.face = *best;
  return out;
}

}  // namespace monores
