#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace monores {

/// Exact rational scalar. gmpxx keeps values canonical (reduced, positive denominator)
/// as long as every construction path goes through canonicalize().
using Rational = mpq_class;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a configured size cap (terms, charts, depth, nodes) is exceeded.
class BudgetError : public Error {
public:
  using Error::Error;
};

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Exact conversion of a finite double.
Rational rational_from_double(double value);
double to_double(const Rational& q);

/// log|q| under the real absolute value, -inf for zero. Safe for tiny/huge q.
double log_abs_real(const Rational& q);

/// v_p(q); q must be nonzero.
long padic_valuation(const Rational& q, unsigned long p);

bool is_prime(unsigned long p);

Rational rational_pow(const Rational& base, unsigned long exp);

/// Absolute value on the rationals: the real one or a p-adic one.
struct Norm {
  enum class Kind { Real, Padic };
  Kind kind = Kind::Real;
  unsigned long prime = 0;

  static Norm real() { return {}; }
  static Norm padic(unsigned long p);
  /// "real" or "padic:<p>".
  static Norm parse(std::string_view text);

  bool is_real() const { return kind == Kind::Real; }

  /// log|q| (natural log), -inf for zero. For Padic this is -v_p(q) log p.
  double log_abs(const Rational& q) const;
  /// |q| as a double; may underflow for extreme magnitudes, prefer log_abs.
  double abs(const Rational& q) const;
  /// Exact comparison of |a| and |b|: negative, zero or positive.
  int compare_abs(const Rational& a, const Rational& b) const;
  /// Exact comparison of |a| with the nonnegative real number r (a radius, not a field element).
  int compare_radius(const Rational& a, const Rational& r) const;

  std::string name() const;

  friend bool operator==(const Norm&, const Norm&) = default;
};

}  // namespace monores
