#include "monores/chart_map.hpp"

#include <algorithm>

namespace monores {

Matrix identity_matrix(int n) {
  Matrix m(n, Vector(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix out(n, Vector(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      if (sgn(a[i][l]) == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

Vector multiply(const Matrix& a, const Vector& v) {
  Vector out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  }
  return out;
}

Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix a = m;
  Matrix inv = identity_matrix(static_cast<int>(n));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) throw Error("matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      Rational f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

bool ChartMap::has_quasitranslation() const {
  return std::any_of(steps_.begin(), steps_.end(),
                     [](const Step& s) { return std::holds_alternative<QuasiStep>(s); });
}

void ChartMap::push_back(Step step) {
  if (auto* a = std::get_if<AffineStep>(&step)) {
    if (static_cast<int>(a->A.size()) != n_ || static_cast<int>(a->b.size()) != n_) {
      throw Error("affine step has wrong dimension");
    }
    if (sgn(determinant(a->A)) == 0) throw Error("affine step matrix is singular");
  } else if (auto* b = std::get_if<BlowupStep>(&step)) {
    if (b->j == b->k || b->j < 0 || b->k < 0 || b->j >= n_ || b->k >= n_) {
      throw Error("blowup step needs two distinct axes in range");
    }
  } else {
    auto& q = std::get<QuasiStep>(step);
    if (q.axis < 0 || q.axis >= n_ || q.a.dim() != n_) throw Error("quasitranslation has wrong dimension");
    if (sgn(q.a.constant_term()) != 0) throw Error("quasitranslation graph must vanish at 0");
    if (q.a.degree_in(q.axis) != 0) throw Error("quasitranslation graph must not involve its axis");
  }
  steps_.push_back(std::move(step));
}

ChartMap ChartMap::then(const ChartMap& inner) const {
  if (inner.n_ != n_) throw Error("chart map dimension mismatch");
  ChartMap out = *this;
  out.steps_.insert(out.steps_.end(), inner.steps_.begin(), inner.steps_.end());
  return out;
}

Vector ChartMap::apply_step(std::size_t i, const Vector& x) const {
  const Step& step = steps_.at(i);
  if (auto* a = std::get_if<AffineStep>(&step)) {
    Vector y = multiply(a->A, x);
    for (int l = 0; l < n_; ++l) y[l] += a->b[l];
    return y;
  }
  Vector y = x;
  if (auto* b = std::get_if<BlowupStep>(&step)) {
    y[b->j] = x[b->j] * x[b->k];
  } else {
    const auto& q = std::get<QuasiStep>(step);
    y[q.axis] = x[q.axis] + q.a.evaluate(x);
  }
  return y;
}

Vector ChartMap::apply(const Vector& x) const {
  if (static_cast<int>(x.size()) != n_) throw Error("point has wrong dimension");
  Vector y = x;
  for (std::size_t i = steps_.size(); i-- > 0;) y = apply_step(i, y);
  return y;
}

std::optional<Vector> ChartMap::invert_step(std::size_t i, const Vector& x) const {
  const Step& step = steps_.at(i);
  if (auto* a = std::get_if<AffineStep>(&step)) {
    Vector shifted = x;
    for (int l = 0; l < n_; ++l) shifted[l] -= a->b[l];
    return multiply(inverse(a->A), shifted);
  }
  Vector w = x;
  if (auto* b = std::get_if<BlowupStep>(&step)) {
    if (sgn(x[b->k]) == 0) return std::nullopt;
    w[b->j] = x[b->j] / x[b->k];
  } else {
    const auto& q = std::get<QuasiStep>(step);
    w[q.axis] = x[q.axis] - q.a.evaluate(x);
  }
  return w;
}

std::optional<std::vector<Vector>> ChartMap::inverse_stages(const Vector& x) const {
  if (static_cast<int>(x.size()) != n_) throw Error("point has wrong dimension");
  std::vector<Vector> stages{x};
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    auto w = invert_step(i, stages.back());
    if (!w) return std::nullopt;
    stages.push_back(std::move(*w));
  }
  return stages;
}

std::vector<Series> step_images(const Step& step, int n) {
  std::vector<Series> images;
  for (int l = 0; l < n; ++l) images.push_back(Series::variable(n, l));
  if (auto* a = std::get_if<AffineStep>(&step)) {
    for (int l = 0; l < n; ++l) {
      Series img = Series::constant(n, a->b[l]);
      for (int c = 0; c < n; ++c) {
        if (sgn(a->A[l][c]) != 0) img += Series::variable(n, c) * a->A[l][c];
      }
      images[l] = std::move(img);
    }
  } else if (auto* b = std::get_if<BlowupStep>(&step)) {
    Exponent e(n, 0);
    e[b->j] = 1;
    e[b->k] = 1;
    images[b->j] = Series::monomial(n, e);
  } else {
    const auto& q = std::get<QuasiStep>(step);
    images[q.axis] += q.a;
  }
  return images;
}

namespace {

bool has_shift(const Step& step) {
  const auto* a = std::get_if<AffineStep>(&step);
  return a != nullptr && std::any_of(a->b.begin(), a->b.end(), [](const Rational& v) { return sgn(v) != 0; });
}

}  // namespace

Series compose_chart(const Series& s, const ChartMap& map, std::optional<int> T, std::size_t budget) {
  if (s.dim() != map.dim()) throw Error("series and chart map dimensions differ");
  // Polynomials stay exact through the last recentring so the shift sees every term.
  std::size_t exact_until = 0;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (has_shift(map.steps()[i])) exact_until = i + 1;
  }
  Series cur = T && exact_until == 0 ? s.truncated(*T) : s;
  for (std::size_t i = 0; i < map.size(); ++i) {
    const Step& step = map.steps()[i];
    // Recentring a truncated series re-expands its Taylor polynomial; the unknown tail is
    // the tracked truncation error.
    if (has_shift(step) && !cur.is_polynomial()) cur = cur.with_trunc(std::nullopt);
    cur = cur.substitute(step_images(step, map.dim()), i < exact_until ? std::nullopt : T, budget);
  }
  if (T) cur = cur.truncated(*T);
  return cur;
}

JacobianResult jacobian(const ChartMap& map, const Vector& point) {
  const int n = map.dim();
  if (static_cast<int>(point.size()) != n) throw Error("point has wrong dimension");
  // Points p_i = s_{i+1} o ... o s_k (x), innermost first.
  std::vector<Vector> inner(map.size() + 1);
  inner[map.size()] = point;
  for (std::size_t i = map.size(); i-- > 0;) inner[i] = map.apply_step(i, inner[i + 1]);

  Matrix total = identity_matrix(n);
  for (std::size_t i = 0; i < map.size(); ++i) {
    const Step& step = map.steps()[i];
    const Vector& p = inner[i + 1];
    Matrix J = identity_matrix(n);
    if (auto* a = std::get_if<AffineStep>(&step)) {
      J = a->A;
    } else if (auto* b = std::get_if<BlowupStep>(&step)) {
      J[b->j][b->j] = p[b->k];
      J[b->j][b->k] = p[b->j];
    } else {
      const auto& q = std::get<QuasiStep>(step);
      for (int l = 0; l < n; ++l) {
        if (l != q.axis) J[q.axis][l] = q.a.derivative(l).evaluate(p);
      }
    }
    total = multiply(total, J);
  }
  return {determinant(total), total};
}

Series jacobian_determinant_series(const ChartMap& map, std::optional<int> T) {
  const int n = map.dim();
  Series det = Series::constant(n, 1);
  for (std::size_t i = 0; i < map.size(); ++i) {
    const Step& step = map.steps()[i];
    if (auto* a = std::get_if<AffineStep>(&step)) {
      det *= determinant(a->A);
    } else if (auto* b = std::get_if<BlowupStep>(&step)) {
      ChartMap tail(n);
      for (std::size_t t = i + 1; t < map.size(); ++t) tail.push_back(map.steps()[t]);
      det = det.multiply(compose_chart(Series::variable(n, b->k), tail, T));
      if (T) det = det.truncated(*T);
    }
  }
  return det;
}

}  // namespace monores
