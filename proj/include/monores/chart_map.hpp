#pragma once

#include "monores/series.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace monores {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

Matrix identity_matrix(int n);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, const Vector& v);
Rational determinant(Matrix m);
/// Throws when m is singular.
Matrix inverse(const Matrix& m);

/// x -> A x + b.
struct AffineStep {
  Matrix A;
  Vector b;
};

/// x_j -> x_j * x_k, other coordinates fixed (zero-based indices).
struct BlowupStep {
  int j = 0;
  int k = 1;
};

/// x_axis -> x_axis + a(x), where a does not involve x_axis and a(0) = 0.
/// a is stored as an n-variable series for uniform substitution.
struct QuasiStep {
  int axis = 0;
  Series a;
};

using Step = std::variant<AffineStep, BlowupStep, QuasiStep>;

/// Composition of coordinate changes alpha = s_1 o s_2 o ... o s_k on K^n.
/// Composing a function f with alpha substitutes s_1 first: f o alpha = ((f o s_1) o s_2) ...
/// "Stage" s of a point x in the original frame is (s_1 o ... o s_s)^{-1}(x); stage 0 is x
/// itself and stage k is the chart coordinate.
class ChartMap {
public:
  explicit ChartMap(int n = 1) : n_(n) {}

  int dim() const { return n_; }
  const std::vector<Step>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  bool has_quasitranslation() const;

  /// Validates and appends a step (invertible matrix, a(0) = 0, a free of x_axis).
  void push_back(Step step);
  /// this followed by inner: (this o inner).
  ChartMap then(const ChartMap& inner) const;

  /// Forward image alpha(x).
  Vector apply(const Vector& x) const;
  /// Image of x under step i alone.
  Vector apply_step(std::size_t i, const Vector& x) const;
  /// Preimage of x under step i; nullopt when the blowup inverse would divide by zero.
  std::optional<Vector> invert_step(std::size_t i, const Vector& x) const;
  /// All stages 0..k of the preimage chain, or nullopt if some blowup inverse is undefined.
  std::optional<std::vector<Vector>> inverse_stages(const Vector& x) const;

private:
  int n_;
  std::vector<Step> steps_;
};

/// Images of the coordinate functions under a single step, as series in n variables.
std::vector<Series> step_images(const Step& step, int n);

/// s o map, truncated at T when given. Exact when T is unset, s is a polynomial and
/// the map has no quasitranslation steps.
Series compose_chart(const Series& s, const ChartMap& map, std::optional<int> T = std::nullopt,
                     std::size_t budget = kDefaultTermBudget);

struct JacobianResult {
  Rational det;
  Matrix matrix;
};

/// Chain-rule Jacobian of the composed map at a point.
JacobianResult jacobian(const ChartMap& map, const Vector& point);

/// det D(alpha) as a series: product of det(A) over affine steps and, for every blowup
/// (j,k) at position i, the coordinate x_k composed with the steps after i.
Series jacobian_determinant_series(const ChartMap& map, std::optional<int> T = std::nullopt);

}  // namespace monores
