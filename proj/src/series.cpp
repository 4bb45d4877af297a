#include "monores/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace monores {

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

namespace {

constexpr int kNoBound = std::numeric_limits<int>::max() / 4;

int bound_of(std::optional<int> t) { return t ? *t : kNoBound; }

std::optional<int> to_trunc(int bound) {
  if (bound >= kNoBound) return std::nullopt;
  return bound;
}

// Lowest degree that could carry a nonzero coefficient (stored or unknown).
int low_degree(const Series& s) {
  if (!s.is_zero()) return s.min_degree();
  return s.trunc_order() ? *s.trunc_order() + 1 : kNoBound;
}

void check_dim(const Series& a, const Series& b) {
  if (a.dim() != b.dim()) {
    throw Error("series dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                std::to_string(b.dim()));
  }
}

}  // namespace

Series::Series(int n, std::optional<int> trunc) : n_(n), trunc_(trunc) {
  if (n < 1) throw Error("series dimension must be positive");
  if (trunc && *trunc < 0) trunc_ = -1;
}

Series Series::constant(int n, const Rational& c, std::optional<int> trunc) {
  Series s(n, trunc);
  s.add_term(Exponent(n, 0), c);
  return s;
}

Series Series::variable(int n, int var, std::optional<int> trunc) {
  Exponent e(n, 0);
  e.at(var) = 1;
  return monomial(n, e, 1, trunc);
}

Series Series::monomial(int n, const Exponent& e, const Rational& c, std::optional<int> trunc) {
  if (static_cast<int>(e.size()) != n) throw Error("monomial exponent has wrong length");
  Series s(n, trunc);
  s.add_term(e, c);
  return s;
}

Rational Series::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Series::constant_term() const { return coeff(Exponent(n_, 0)); }

void Series::add_term(const Exponent& e, const Rational& c) {
  if (sgn(c) == 0) return;
  if (trunc_ && total_degree(e) > *trunc_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int Series::min_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int t = total_degree(e);
    if (d < 0 || t < d) d = t;
  }
  return d;
}

int Series::max_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

int Series::degree_in(int var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

Series Series::truncated(int T) const {
  int t = std::min(T, bound_of(trunc_));
  Series out(n_, t);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) <= t) out.terms_.emplace(e, c);
  }
  return out;
}

Series Series::with_trunc(std::optional<int> T) const {
  if (T) return truncated(*T);
  Series out = *this;
  out.trunc_.reset();
  return out;
}

Series Series::operator-() const {
  Series out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Series& Series::operator+=(const Series& other) {
  check_dim(*this, other);
  int t = std::min(bound_of(trunc_), bound_of(other.trunc_));
  if (t < bound_of(trunc_)) *this = truncated(t);
  trunc_ = to_trunc(t);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Series& Series::operator-=(const Series& other) { return *this += -other; }

Series& Series::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Series Series::multiply(const Series& other, std::size_t budget) const {
  check_dim(*this, other);
  int t = std::min(bound_of(trunc_) == kNoBound ? kNoBound : bound_of(trunc_) + low_degree(other),
                   bound_of(other.trunc_) == kNoBound ? kNoBound
                                                      : bound_of(other.trunc_) + low_degree(*this));
  Series out(n_, to_trunc(t));
  Exponent e(n_);
  for (const auto& [ea, ca] : terms_) {
    int da = total_degree(ea);
    for (const auto& [eb, cb] : other.terms_) {
      if (da + total_degree(eb) > t) continue;
      for (int i = 0; i < n_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
    if (out.terms_.size() > budget) {
      throw BudgetError("term budget exceeded (" + std::to_string(budget) + " terms)");
    }
  }
  return out;
}

Series Series::pow(unsigned k, std::size_t budget) const {
  Series result = constant(n_, 1);
  Series base = *this;
  while (k > 0) {
    if (k & 1U) result = result.multiply(base, budget);
    k >>= 1U;
    if (k > 0) base = base.multiply(base, budget);
  }
  return result;
}

Rational Series::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != n_) {
    throw Error("evaluation point has dimension " + std::to_string(point.size()) +
                ", series has " + std::to_string(n_));
  }
  std::vector<std::vector<Rational>> powers(n_);
  for (int i = 0; i < n_; ++i) {
    int d = degree_in(i);
    powers[i].resize(d + 1);
    powers[i][0] = 1;
    for (int k = 1; k <= d; ++k) powers[i][k] = powers[i][k - 1] * point[i];
  }
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < n_; ++i) {
      if (e[i] != 0) term *= powers[i][e[i]];
    }
    sum += term;
  }
  return sum;
}

EvalResult Series::evaluate(std::span<const Rational> point, const Norm& norm) const {
  EvalResult r;
  r.value = evaluate(point);
  r.log_abs = norm.log_abs(r.value);
  return r;
}

double Series::evaluate_double(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != n_) throw Error("evaluation point has wrong dimension");
  double sum = 0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (int i = 0; i < n_; ++i) {
      if (e[i] != 0) term *= std::pow(point[i], e[i]);
    }
    sum += term;
  }
  return sum;
}

Series Series::derivative(int var) const {
  Series out(n_, trunc_ ? std::optional<int>(*trunc_ - 1) : std::nullopt);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.add_term(d, c * e[var]);
  }
  return out;
}

Series Series::directional_derivative(std::span<const Rational> beta, int order) const {
  if (static_cast<int>(beta.size()) != n_) throw Error("direction has wrong dimension");
  if (order < 0) throw Error("derivative order must be nonnegative");
  Series cur = *this;
  for (int step = 0; step < order; ++step) {
    Series next(n_, cur.trunc_ ? std::optional<int>(*cur.trunc_ - 1) : std::nullopt);
    for (int m = 0; m < n_; ++m) {
      if (sgn(beta[m]) != 0) next += cur.derivative(m) * beta[m];
    }
    cur = std::move(next);
  }
  return cur;
}

Series Series::substitute(const std::vector<Series>& images, std::optional<int> T,
                          std::size_t budget) const {
  if (static_cast<int>(images.size()) != n_) throw Error("substitution needs one image per variable");
  const int m = images.front().dim();
  for (const auto& img : images) {
    if (img.dim() != m) throw Error("substitution images have differing dimensions");
  }
  std::vector<Series> base;
  base.reserve(images.size());
  for (const auto& img : images) base.push_back(T ? img.truncated(*T) : img);

  // Power tables grown on demand.
  std::vector<std::vector<Series>> powers(n_);
  auto power = [&](int i, int k) -> const Series& {
    auto& table = powers[i];
    if (table.empty()) table.push_back(constant(m, 1, T));
    while (static_cast<int>(table.size()) <= k) {
      Series next = table.back().multiply(base[i], budget);
      if (T) next = next.truncated(*T);
      table.push_back(std::move(next));
    }
    return table[k];
  };

  Series out(m, T);
  for (const auto& [e, c] : terms_) {
    Series term = constant(m, c, T);
    for (int i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      term = term.multiply(power(i, e[i]), budget);
      if (T) term = term.truncated(*T);
    }
    out += term;
    if (out.size() > budget) {
      throw BudgetError("term budget exceeded (" + std::to_string(budget) + " terms)");
    }
  }
  if (trunc_) {
    // Unknown terms of *this of degree > trunc map to degree >= (trunc+1) * min image order.
    int low = kNoBound;
    for (const auto& img : base) low = std::min(low, low_degree(img));
    if (low == kNoBound) low = 0;
    int bound = (*trunc_ + 1) * low - 1;
    out = out.truncated(std::min(bound, bound_of(out.trunc_order())));
  }
  return out;
}

std::map<int, Series> Series::coefficients_in(int var) const {
  std::map<int, Series> out;
  for (const auto& [e, c] : terms_) {
    Exponent rest = e;
    rest[var] = 0;
    auto [it, inserted] = out.try_emplace(e[var], n_, trunc_ ? std::optional<int>(*trunc_ - e[var])
                                                              : std::nullopt);
    it->second.add_term(rest, c);
  }
  return out;
}

Series Series::drop_variable(int var) const {
  if (n_ < 2) throw Error("cannot drop the only variable");
  Series out(n_ - 1, trunc_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != 0) throw Error("dropped variable occurs in the series");
    Exponent r = e;
    r.erase(r.begin() + var);
    out.add_term(r, c);
  }
  return out;
}

Series Series::insert_variable(int var) const {
  Series out(n_ + 1, trunc_);
  for (const auto& [e, c] : terms_) {
    Exponent r = e;
    r.insert(r.begin() + var, 0);
    out.add_term(r, c);
  }
  return out;
}

namespace {

std::string factors_text(const Exponent& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i + 1);
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

}  // namespace

std::string Series::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    std::string factors = factors_text(e);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (factors.empty()) {
      out += monores::to_string(mag);
    } else if (mag == 1) {
      out += factors;
    } else {
      out += monores::to_string(mag) + "*" + factors;
    }
  }
  return out;
}

std::string Monomial::to_string() const {
  return Series::monomial(dim(), exponents, coeff).to_string();
}

std::pair<Monomial, Series> factor_monomial(const Series& s) {
  if (s.is_zero()) throw Error("factor_monomial of the zero series");
  const int n = s.dim();
  Exponent m(n, std::numeric_limits<int>::max());
  for (const auto& [e, c] : s.terms()) {
    for (int i = 0; i < n; ++i) m[i] = std::min(m[i], e[i]);
  }
  const int dm = total_degree(m);
  Series u(n, s.trunc_order() ? std::optional<int>(*s.trunc_order() - dm) : std::nullopt);
  for (const auto& [e, c] : s.terms()) {
    Exponent r = e;
    for (int i = 0; i < n; ++i) r[i] -= m[i];
    u.add_term(r, c);
  }
  return {Monomial{1, m}, u};
}

}  // namespace monores
