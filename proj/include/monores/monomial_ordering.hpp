#pragma once

#include "monores/chart_map.hpp"
#include "monores/series.hpp"

#include <cstddef>
#include <vector>

namespace monores {

using IntMatrix = std::vector<std::vector<long long>>;

/// Integer exponent map: x^v o gamma_k = x^{L v}.
struct ExponentMap {
  int chart = 0;
  IntMatrix L;

  Exponent apply(const Exponent& v) const;
  /// Exponent vector of gamma_k's l-th component (column l of L).
  Exponent component(int l) const;
};

/// One split of the cube: branch 0 is |x_j| <= |x_k| with x_j := x_j x_k, branch 1 is
/// |x_j| > |x_k| with x_k := x_k x_j.
struct BlowupNode {
  bool leaf = true;
  int j = -1;
  int k = -1;
  int child[2] = {-1, -1};
  int leaf_id = -1;
};

struct BlowupLeaf {
  int node = -1;
  ExponentMap map;
  std::vector<BlowupStep> steps;   // substitutions from the root down
  std::vector<bool> strict;        // leaf coordinate l satisfies |x_l| < 1 rather than <= 1
};

struct BlowupTree {
  int n = 0;
  std::vector<Exponent> exponents;  // input, sorted
  std::vector<BlowupNode> nodes;    // nodes[0] is the root
  std::vector<BlowupLeaf> leaves;

  /// Leaf whose chain of inequalities accepts x (original coordinates), with its leaf
  /// coordinates. Requires all x_l nonzero and |x_l| <= 1.
  std::pair<int, Vector> locate(const Vector& x, const Norm& norm) const;

  /// Chart map gamma_k as a composition of blowup steps.
  ChartMap chart_map(int leaf) const;
};

struct RatioStep {
  int j = -1;
  int k = -1;
  Exponent alpha[2];
  Exponent beta[2];
};

inline constexpr std::size_t kDefaultNodeBudget = 1000000;

BlowupTree order_monomials(std::vector<Exponent> exponents, std::size_t node_budget = kDefaultNodeBudget);

/// The blowup the induction selects for x^alpha / x^beta, with the updated ratio per branch.
RatioStep reduce_ratio_step(const Exponent& alpha, const Exponent& beta);

/// Membership in G_k (leaf coordinates): inside the leaf cube, all coordinates nonzero, and
/// |gamma_kl(x)| < 1/C_n for every l.
bool leaf_region_contains(const BlowupTree& tree, int leaf, const Vector& x, const Rational& Cn,
                          const Norm& norm);

/// Componentwise comparison: -1 if a <= b, 1 if a >= b, 0 if incomparable (equal gives -1).
int compare_componentwise(const Exponent& a, const Exponent& b);

long long int_determinant(const IntMatrix& m);

}  // namespace monores
