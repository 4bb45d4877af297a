#include "monores/oracles.hpp"

#include "monores/lp.hpp"

#include <algorithm>

namespace monores {

namespace {

int grid_size(int n) { return n == 1 ? 1 : (n == 2 ? 400 : 64); }

}  // namespace

std::vector<Exponent> hull_oracle(std::vector<Exponent> generators) {
  if (generators.empty()) throw Error("hull oracle needs generators");
  const int n = static_cast<int>(generators.front().size());
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  if (generators.size() > 8 || n > 3) throw BudgetError("hull oracle size cap exceeded");
  const int K = grid_size(n);
  std::vector<bool> vertex(generators.size(), false);
  std::vector<int> a(n, 1);
  while (true) {
    long best = 0;
    int arg = -1, count = 0;
    for (std::size_t g = 0; g < generators.size(); ++g) {
      long v = 0;
      for (int i = 0; i < n; ++i) v += static_cast<long>(a[i]) * generators[g][i];
      if (arg < 0 || v < best) {
        best = v;
        arg = static_cast<int>(g);
        count = 1;
      } else if (v == best) {
        ++count;
      }
    }
    if (count == 1) vertex[arg] = true;
    int i = 0;
    while (i < n && a[i] == K) a[i++] = 1;
    if (i == n) break;
    ++a[i];
  }
  std::vector<Exponent> out;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (vertex[g]) out.push_back(generators[g]);
  }
  return out;
}

Rational newton_distance_lp(const std::vector<Exponent>& generators) {
  const int n = static_cast<int>(generators.front().size());
  const int k = static_cast<int>(generators.size());
  // Variables: lambda_1..lambda_k >= 0, t free; sum_g lambda_g g_i <= t.
  LinearProgram lp(k + 1);
  lp.free[k] = true;
  for (int i = 0; i < n; ++i) {
    Vector row(k + 1);
    for (int g = 0; g < k; ++g) row[g] = generators[g][i];
    row[k] = -1;
    lp.add(row, LinearProgram::Rel::LE, 0);
  }
  Vector sum(k + 1, 1);
  sum[k] = 0;
  lp.add(sum, LinearProgram::Rel::EQ, 1);
  lp.objective[k] = 1;
  auto r = solve(lp);
  if (!r.optimal()) throw Error("newton distance LP failed");
  return r.value;
}

}  // namespace monores
