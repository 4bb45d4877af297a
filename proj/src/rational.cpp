#include "monores/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace monores {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw Error("invalid rational: '" + s + "'");
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw Error("non-finite double has no rational value");
  Rational q(value);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

namespace {

double log_abs_mpz(const mpz_class& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

long mpz_valuation(const mpz_class& z, unsigned long p) {
  mpz_class t = abs(z);
  mpz_class pp = p;
  long v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p) != 0) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

}  // namespace

double log_abs_real(const Rational& q) {
  if (sgn(q) == 0) return -std::numeric_limits<double>::infinity();
  return log_abs_mpz(q.get_num()) - log_abs_mpz(q.get_den());
}

long padic_valuation(const Rational& q, unsigned long p) {
  if (sgn(q) == 0) throw Error("valuation of zero");
  return mpz_valuation(q.get_num(), p) - mpz_valuation(q.get_den(), p);
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Rational rational_pow(const Rational& base, unsigned long exp) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  out.canonicalize();
  return out;
}

Norm Norm::padic(unsigned long p) {
  if (!is_prime(p)) throw Error("p-adic norm needs a prime, got " + std::to_string(p));
  Norm n;
  n.kind = Kind::Padic;
  n.prime = p;
  return n;
}

Norm Norm::parse(std::string_view text) {
  if (text == "real") return real();
  constexpr std::string_view prefix = "padic:";
  if (text.substr(0, prefix.size()) == prefix) {
    std::string digits(text.substr(prefix.size()));
    try {
      std::size_t used = 0;
      unsigned long p = std::stoul(digits, &used);
      if (used != digits.size()) throw Error("bad prime");
      return padic(p);
    } catch (const std::logic_error&) {
      throw Error("invalid norm: '" + std::string(text) + "'");
    }
  }
  throw Error("invalid norm: '" + std::string(text) + "' (expected real or padic:<p>)");
}

double Norm::log_abs(const Rational& q) const {
  if (sgn(q) == 0) return -std::numeric_limits<double>::infinity();
  if (kind == Kind::Real) return log_abs_real(q);
  return -static_cast<double>(padic_valuation(q, prime)) * std::log(static_cast<double>(prime));
}

double Norm::abs(const Rational& q) const { return std::exp(log_abs(q)); }

int Norm::compare_abs(const Rational& a, const Rational& b) const {
  if (is_real()) {
    Rational x = ::abs(a), y = ::abs(b);
    return x < y ? -1 : (x > y ? 1 : 0);
  }
  if (sgn(a) == 0 || sgn(b) == 0) return sgn(a) == 0 ? (sgn(b) == 0 ? 0 : -1) : 1;
  long va = padic_valuation(a, prime), vb = padic_valuation(b, prime);
  return va > vb ? -1 : (va < vb ? 1 : 0);
}

int Norm::compare_radius(const Rational& a, const Rational& r) const {
  if (is_real()) {
    Rational x = ::abs(a);
    return x < r ? -1 : (x > r ? 1 : 0);
  }
  if (sgn(a) == 0) return sgn(r) == 0 ? 0 : -1;
  const long v = padic_valuation(a, prime);
  const Rational pv = rational_pow(Rational(mpz_class(prime)), static_cast<unsigned long>(std::labs(v)));
  const Rational x = v >= 0 ? Rational(1 / pv) : pv;
  return x < r ? -1 : (x > r ? 1 : 0);
}

std::string Norm::name() const {
  return kind == Kind::Real ? std::string("real") : "padic:" + std::to_string(prime);
}

}  // namespace monores
