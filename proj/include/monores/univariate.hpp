#pragma once

#include "monores/rational.hpp"

#include <utility>
#include <vector>

namespace monores {

/// Dense univariate polynomial, coefficient of z^d at index d, no trailing zeros.
using UPoly = std::vector<Rational>;

void trim(UPoly& p);
int degree(const UPoly& p);
Rational evaluate(const UPoly& p, const Rational& z);
UPoly derivative(const UPoly& p);
/// Quotient and remainder.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(UPoly a, UPoly b);

/// Nonzero rational roots with multiplicities, ascending. Roots are found from the rational
/// root theorem; coefficients whose integer forms exceed 2^40 give up and return what the
/// small divisors found.
std::vector<std::pair<Rational, int>> rational_roots(const UPoly& p);

/// p with every listed root divided out (to its multiplicity) and made squarefree.
UPoly squarefree_remainder(const UPoly& p, const std::vector<std::pair<Rational, int>>& roots);

/// Distinct real roots of a squarefree p in the half-open interval (a, b].
int sturm_count(const UPoly& p, const Rational& a, const Rational& b);

/// Disjoint intervals (a, b] of width <= width, each holding one real root of squarefree p.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UPoly& p, const Rational& lo,
                                                              const Rational& hi, const Rational& width);

/// Residues r mod prime^K in [0, prime^K) with v_p(p(r)) >= K, p made integral first: every
/// root of p in Z_p lies within prime^-K of one of them.
std::vector<Rational> padic_root_residues(const UPoly& p, unsigned long prime, int K);

}  // namespace monores
