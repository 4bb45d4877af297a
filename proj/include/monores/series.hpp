#pragma once

#include "monores/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace monores {

using Exponent = std::vector<int>;

int total_degree(const Exponent& e);

/// Default cap on the number of stored terms produced by a single operation.
inline constexpr std::size_t kDefaultTermBudget = 200000;

struct EvalResult {
  Rational value;
  double log_abs = 0;  // log|value| under the requested norm, -inf for zero
};

/// Multivariate polynomial, or power series truncated at total degree trunc_order
/// (terms above it are unknown). Zero coefficients are never stored.
class Series {
public:
  explicit Series(int n = 1, std::optional<int> trunc = std::nullopt);

  static Series constant(int n, const Rational& c, std::optional<int> trunc = std::nullopt);
  /// The coordinate function x_{var}, var zero-based.
  static Series variable(int n, int var, std::optional<int> trunc = std::nullopt);
  static Series monomial(int n, const Exponent& e, const Rational& c = 1,
                         std::optional<int> trunc = std::nullopt);

  int dim() const { return n_; }
  std::optional<int> trunc_order() const { return trunc_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_polynomial() const { return !trunc_.has_value(); }

  Rational coeff(const Exponent& e) const;
  Rational constant_term() const;

  /// Adds c x^e; drops the term if it lands above the truncation order.
  void add_term(const Exponent& e, const Rational& c);

  /// Minimal / maximal total degree of stored terms (-1 for the zero series).
  int min_degree() const;
  int max_degree() const;
  /// Maximal exponent of variable var among stored terms.
  int degree_in(int var) const;

  /// Drops terms above T and records T as the truncation order (keeps the smaller one).
  Series truncated(int T) const;
  Series with_trunc(std::optional<int> T) const;

  Series operator-() const;
  Series& operator+=(const Series& other);
  Series& operator-=(const Series& other);
  Series& operator*=(const Rational& c);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Rational& c) { return a *= c; }
  friend Series operator*(const Rational& c, Series a) { return a *= c; }

  Series multiply(const Series& other, std::size_t budget = kDefaultTermBudget) const;
  friend Series operator*(const Series& a, const Series& b) { return a.multiply(b); }
  Series pow(unsigned k, std::size_t budget = kDefaultTermBudget) const;

  Rational evaluate(std::span<const Rational> point) const;
  EvalResult evaluate(std::span<const Rational> point, const Norm& norm) const;
  /// Floating evaluation for sampling; points given as doubles.
  double evaluate_double(std::span<const double> point) const;

  /// d/dx_var; truncation order drops by one.
  Series derivative(int var) const;
  /// (sum_m beta_m d/dx_m)^order.
  Series directional_derivative(std::span<const Rational> beta, int order) const;

  /// Substitutes x_i := images[i]. All images share one dimension m, which becomes the
  /// dimension of the result. When T is set the result is truncated at T.
  Series substitute(const std::vector<Series>& images, std::optional<int> T = std::nullopt,
                    std::size_t budget = kDefaultTermBudget) const;

  /// Groups by powers of x_var: result[p] is the coefficient of x_var^p, a series in the
  /// same n variables that does not involve x_var.
  std::map<int, Series> coefficients_in(int var) const;

  /// Removes variable var (must not occur) giving an (n-1)-variable series.
  Series drop_variable(int var) const;
  /// Inserts a fresh variable at position var (0..n), giving an (n+1)-variable series.
  Series insert_variable(int var) const;

  /// Canonical text in the input grammar, exponents in ascending lexicographic order.
  std::string to_string() const;

  friend bool operator==(const Series& a, const Series& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

private:
  int n_;
  std::optional<int> trunc_;
  std::map<Exponent, Rational> terms_;
};

struct Monomial {
  Rational coeff = 1;
  Exponent exponents;

  int dim() const { return static_cast<int>(exponents.size()); }
  Series to_series() const { return Series::monomial(dim(), exponents, coeff); }
  std::string to_string() const;
};

/// Splits s = x^m * u with m the componentwise minimal exponent of s.
std::pair<Monomial, Series> factor_monomial(const Series& s);

/// Parses the polynomial grammar: terms joined by + / -, each an optional rational
/// coefficient and *-separated factors xi^e (1 <= i <= n).
Series parse_series(std::string_view text, int n);

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

}  // namespace monores
