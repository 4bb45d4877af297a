#include "monores/monomial_ordering.hpp"

#include <algorithm>
#include <tuple>

namespace monores {

Exponent ExponentMap::apply(const Exponent& v) const {
  Exponent out(L.size(), 0);
  for (std::size_t r = 0; r < L.size(); ++r) {
    long long s = 0;
    for (std::size_t c = 0; c < v.size(); ++c) s += L[r][c] * v[c];
    out[r] = static_cast<int>(s);
  }
  return out;
}

Exponent ExponentMap::component(int l) const {
  Exponent out(L.size(), 0);
  for (std::size_t r = 0; r < L.size(); ++r) out[r] = static_cast<int>(L[r][l]);
  return out;
}

int compare_componentwise(const Exponent& a, const Exponent& b) {
  bool le = true, ge = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) le = false;
    if (a[i] < b[i]) ge = false;
  }
  if (le) return -1;
  return ge ? 1 : 0;
}

long long int_determinant(const IntMatrix& m) {
  Matrix q(m.size(), Vector(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m.size(); ++c) q[r][c] = Rational(static_cast<long>(m[r][c]));
  }
  return determinant(q).get_num().get_si();
}

RatioStep reduce_ratio_step(const Exponent& alpha, const Exponent& beta) {
  const std::size_t n = alpha.size();
  if (beta.size() != n) throw Error("ratio exponents have different dimensions");
  bool a_nonzero = false, b_nonzero = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] < 0 || beta[i] < 0) throw Error("ratio exponents must be nonnegative");
    if (alpha[i] > 0 && beta[i] > 0) throw Error("ratio exponents share a variable");
    a_nonzero = a_nonzero || alpha[i] > 0;
    b_nonzero = b_nonzero || beta[i] > 0;
  }
  if (!a_nonzero || !b_nonzero) throw Error("ratio is already a monomial");

  const int a = *std::max_element(alpha.begin(), alpha.end());
  const int b = *std::max_element(beta.begin(), beta.end());
  auto first_equal = [](const Exponent& e, int value) {
    return static_cast<int>(std::find(e.begin(), e.end(), value) - e.begin());
  };
  RatioStep step;
  if (a == b) {
    step.j = first_equal(alpha, a);
    step.k = first_equal(beta, b);
  } else if (a > b) {
    step.j = first_equal(alpha, a);
    step.k = first_equal(beta, b);
  } else {
    step.j = first_equal(beta, b);
    step.k = first_equal(alpha, a);
  }
  std::vector<long long> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = alpha[i] - beta[i];
  for (int branch = 0; branch < 2; ++branch) {
    auto e = d;
    if (branch == 0) {
      e[step.k] += e[step.j];
    } else {
      e[step.j] += e[step.k];
    }
    step.alpha[branch].assign(n, 0);
    step.beta[branch].assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] > 0) step.alpha[branch][i] = static_cast<int>(e[i]);
      if (e[i] < 0) step.beta[branch][i] = static_cast<int>(-e[i]);
    }
  }
  return step;
}

namespace {

// (c, M, N): largest exponent, how many variables attain it, how many variables occur.
std::tuple<int, int, int> measure(const std::pair<Exponent, Exponent>& ab) {
  const auto& [alpha, beta] = ab;
  const int c = std::max(*std::max_element(alpha.begin(), alpha.end()), *std::max_element(beta.begin(), beta.end()));
  int M = 0, N = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    M += (alpha[i] == c) + (beta[i] == c);
    N += (alpha[i] > 0) + (beta[i] > 0);
  }
  return {c, M, N};
}

struct Builder {
  BlowupTree& tree;
  std::size_t budget;
  std::vector<std::pair<int, int>> pairs;

  int build(const IntMatrix& L, std::vector<BlowupStep> steps, std::vector<bool> strict, int current) {
    if (tree.nodes.size() >= budget) throw BudgetError("blowup tree node budget exceeded");
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    ExponentMap em{0, L};
    auto ratio = [&](int r) {
      Exponent v = em.apply(tree.exponents[pairs[r].first]);
      Exponent w = em.apply(tree.exponents[pairs[r].second]);
      std::pair<Exponent, Exponent> ab{Exponent(tree.n, 0), Exponent(tree.n, 0)};
      for (int i = 0; i < tree.n; ++i) {
        ab.first[i] = std::max(0, v[i] - w[i]);
        ab.second[i] = std::max(0, w[i] - v[i]);
      }
      return ab;
    };
    auto unresolved = [](const std::pair<Exponent, Exponent>& ab) {
      auto pos = [](int x) { return x > 0; };
      return std::any_of(ab.first.begin(), ab.first.end(), pos) &&
             std::any_of(ab.second.begin(), ab.second.end(), pos);
    };
    // Finish the ratio the parent worked on; otherwise take the unresolved ratio with the
    // smallest induction measure (c, M, N), ties by (alpha, beta).
    int chosen = -1;
    std::pair<Exponent, Exponent> best;
    if (current >= 0 && unresolved(ratio(current))) {
      chosen = current;
      best = ratio(current);
    } else {
      for (int r = 0; r < static_cast<int>(pairs.size()); ++r) {
        auto ab = ratio(r);
        if (!unresolved(ab)) continue;
        if (chosen < 0 || std::make_pair(measure(ab), ab) < std::make_pair(measure(best), best)) {
          chosen = r;
          best = ab;
        }
      }
    }
    if (chosen >= 0) {
      RatioStep rs = reduce_ratio_step(best.first, best.second);
      tree.nodes[id].leaf = false;
      tree.nodes[id].j = rs.j;
      tree.nodes[id].k = rs.k;
      for (int branch = 0; branch < 2; ++branch) {
        IntMatrix child = L;
        auto child_steps = steps;
        auto child_strict = strict;
        if (branch == 0) {
          for (int c = 0; c < tree.n; ++c) child[rs.k][c] += child[rs.j][c];
          child_steps.push_back({rs.j, rs.k});
          child_strict[rs.j] = false;
        } else {
          for (int c = 0; c < tree.n; ++c) child[rs.j][c] += child[rs.k][c];
          child_steps.push_back({rs.k, rs.j});
          child_strict[rs.k] = true;
        }
        int c = build(child, std::move(child_steps), std::move(child_strict), chosen);
        tree.nodes[id].child[branch] = c;
      }
      return id;
    }
    BlowupLeaf leaf;
    leaf.node = id;
    leaf.map = {static_cast<int>(tree.leaves.size()), L};
    leaf.steps = std::move(steps);
    leaf.strict = std::move(strict);
    tree.nodes[id].leaf_id = leaf.map.chart;
    tree.leaves.push_back(std::move(leaf));
    return id;
  }
};

}  // namespace

BlowupTree order_monomials(std::vector<Exponent> exponents, std::size_t node_budget) {
  if (exponents.empty()) throw Error("order_monomials needs at least one exponent");
  const int n = static_cast<int>(exponents.front().size());
  for (const auto& e : exponents) {
    if (static_cast<int>(e.size()) != n) throw Error("exponents have different dimensions");
    if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; })) throw Error("negative exponent");
  }
  std::sort(exponents.begin(), exponents.end());
  if (std::adjacent_find(exponents.begin(), exponents.end()) != exponents.end()) {
    throw Error("exponents must be pairwise distinct");
  }
  BlowupTree tree;
  tree.n = n;
  tree.exponents = exponents;

  // Ratios x^v / x^w with v > w lexicographically.
  Builder b{tree, node_budget, {}};
  for (int p = 0; p < static_cast<int>(exponents.size()); ++p) {
    for (int q = 0; q < p; ++q) b.pairs.emplace_back(p, q);
  }

  IntMatrix id(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = 1;
  b.build(id, {}, std::vector<bool>(n, false), -1);
  return tree;
}

std::pair<int, Vector> BlowupTree::locate(const Vector& x, const Norm& norm) const {
  if (static_cast<int>(x.size()) != n) throw Error("point has wrong dimension");
  Vector u = x;
  for (const auto& v : u) {
    if (sgn(v) == 0) throw Error("point has a zero coordinate");
  }
  int node = 0;
  while (!nodes[node].leaf) {
    const auto& nd = nodes[node];
    if (norm.compare_abs(u[nd.j], u[nd.k]) <= 0) {
      u[nd.j] /= u[nd.k];
      node = nd.child[0];
    } else {
      u[nd.k] /= u[nd.j];
      node = nd.child[1];
    }
  }
  return {nodes[node].leaf_id, u};
}

ChartMap BlowupTree::chart_map(int leaf) const {
  ChartMap map(n);
  for (const auto& s : leaves.at(leaf).steps) map.push_back(s);
  return map;
}

bool leaf_region_contains(const BlowupTree& tree, int leaf, const Vector& x, const Rational& Cn,
                          const Norm& norm) {
  const auto& lf = tree.leaves.at(leaf);
  const Rational one = 1;
  for (int l = 0; l < tree.n; ++l) {
    if (sgn(x[l]) == 0) return false;
    int c = norm.compare_abs(x[l], one);
    if (c > 0 || (c == 0 && lf.strict[l])) return false;
  }
  const Rational bound = 1 / Cn;
  for (int l = 0; l < tree.n; ++l) {
    Exponent e = lf.map.component(l);
    Rational g = 1;
    for (int m = 0; m < tree.n; ++m) g *= rational_pow(x[m], static_cast<unsigned long>(e[m]));
    if (norm.compare_radius(g, bound) >= 0) return false;
  }
  return true;
}

}  // namespace monores
