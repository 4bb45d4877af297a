#include "monores/univariate.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace monores {

void trim(UPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

Rational evaluate(const UPoly& p, const Rational& z) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.empty()) throw Error("division by the zero polynomial");
  UPoly r = a;
  trim(r);
  UPoly q;
  if (r.size() >= b.size()) q.assign(r.size() - b.size() + 1, Rational(0));
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Rational c = r.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= c * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
  return {q, r};
}

UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

namespace {

std::vector<mpz_class> integer_form(const UPoly& p) {
  mpz_class l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> out;
  for (const auto& c : p) out.push_back(mpz_class(c * l));
  return out;
}

std::vector<mpz_class> divisors(mpz_class v) {
  v = abs(v);
  std::vector<mpz_class> out;
  if (v == 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 40) return {mpz_class(1)};
  for (mpz_class d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
  }
  return out;
}

int sign_changes(const std::vector<UPoly>& seq, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    const int s = sgn(evaluate(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    auto r = divmod(seq[seq.size() - 2], seq.back()).second;
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    seq.push_back(r);
  }
  if (seq.back().empty()) seq.pop_back();
  return seq;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const UPoly& p0) {
  UPoly p = p0;
  trim(p);
  std::size_t low = 0;
  while (low < p.size() && sgn(p[low]) == 0) ++low;
  p.erase(p.begin(), p.begin() + static_cast<long>(low));
  if (p.size() < 2) return {};
  const auto z = integer_form(p);
  std::set<Rational> candidates;
  for (const auto& a : divisors(z.front())) {
    for (const auto& b : divisors(z.back())) {
      Rational c(a, b);
      c.canonicalize();
      candidates.insert(c);
      candidates.insert(-c);
    }
  }
  std::vector<std::pair<Rational, int>> out;
  for (const auto& c : candidates) {
    int mult = 0;
    UPoly cur = p;
    for (;;) {
      auto [q, r] = divmod(cur, UPoly{-c, Rational(1)});
      if (!r.empty()) break;
      ++mult;
      cur = std::move(q);
    }
    if (mult > 0) out.emplace_back(c, mult);
  }
  return out;
}

UPoly squarefree_remainder(const UPoly& p0, const std::vector<std::pair<Rational, int>>& roots) {
  UPoly p = p0;
  trim(p);
  while (p.size() > 1 && sgn(p[0]) == 0) p.erase(p.begin());
  for (const auto& [c, mult] : roots) {
    for (int t = 0; t < mult; ++t) p = divmod(p, UPoly{-c, Rational(1)}).first;
  }
  if (p.size() < 2) return p;
  return divmod(p, gcd(p, derivative(p))).first;
}

int sturm_count(const UPoly& p, const Rational& a, const Rational& b) {
  if (p.size() < 2) return 0;
  const auto seq = sturm_sequence(p);
  return sign_changes(seq, a) - sign_changes(seq, b);
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UPoly& p, const Rational& lo,
                                                              const Rational& hi, const Rational& width) {
  std::vector<std::pair<Rational, Rational>> out;
  if (p.size() < 2) return out;
  const auto seq = sturm_sequence(p);
  std::vector<std::pair<Rational, Rational>> stack{{lo, hi}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const int c = sign_changes(seq, a) - sign_changes(seq, b);
    if (c == 0) continue;
    if (c == 1 && b - a <= width) {
      out.emplace_back(a, b);
      continue;
    }
    const Rational mid = (a + b) / 2;
    stack.emplace_back(mid, b);
    stack.emplace_back(a, mid);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> padic_root_residues(const UPoly& p, unsigned long prime, int K) {
  std::vector<Rational> out;
  if (p.size() < 2) return out;
  auto z = integer_form(p);
  mpz_class content = 0;
  for (const auto& c : z) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  for (auto& c : z) c /= content;
  mpz_class mod = 1;
  for (int t = 0; t < K; ++t) mod *= prime;
  for (mpz_class r = 0; r < mod; ++r) {
    mpz_class acc = 0;
    for (auto it = z.rbegin(); it != z.rend(); ++it) acc = (acc * r + *it) % mod;
    if (acc == 0) out.emplace_back(r);
  }
  return out;
}

}  // namespace monores
