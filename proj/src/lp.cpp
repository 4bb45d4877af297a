#include "monores/lp.hpp"

namespace monores {

namespace {

struct Tableau {
  // rows_[r] has cols_ entries plus the rhs at index cols_.
  std::vector<Vector> rows;
  std::vector<int> basis;
  int cols = 0;

  void pivot(int r, int c) {
    Rational p = rows[r][c];
    for (auto& v : rows[r]) v /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == r || sgn(rows[i][c]) == 0) continue;
      Rational f = rows[i][c];
      for (int j = 0; j <= cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    basis[r] = c;
  }

  // Minimizes cost . x over columns allowed[c]; returns false when unbounded.
  bool optimize(const Vector& cost, const std::vector<bool>& allowed) {
    while (true) {
      // Reduced costs: cost_c - sum_r cost_{basis r} * rows[r][c].
      int enter = -1;
      for (int c = 0; c < cols && enter < 0; ++c) {
        if (!allowed[c]) continue;
        Rational red = cost[c];
        for (std::size_t r = 0; r < rows.size(); ++r) red -= cost[basis[r]] * rows[r][c];
        if (sgn(red) < 0) enter = c;
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (sgn(rows[r][enter]) <= 0) continue;
        Rational ratio = rows[r][cols] / rows[r][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = static_cast<int>(r);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve(const LinearProgram& lp) {
  // Column layout: split variables (x+ then x- for free ones), slacks, artificials.
  std::vector<int> pos(lp.num_vars), neg(lp.num_vars, -1);
  int cols = 0;
  for (int i = 0; i < lp.num_vars; ++i) pos[i] = cols++;
  for (int i = 0; i < lp.num_vars; ++i) {
    if (lp.free[i]) neg[i] = cols++;
  }
  const int m = static_cast<int>(lp.rows.size());
  std::vector<int> slack(m, -1), artificial(m, -1);
  for (int r = 0; r < m; ++r) {
    if (lp.rows[r].rel != LinearProgram::Rel::EQ) slack[r] = cols++;
  }
  const int first_artificial = cols;
  for (int r = 0; r < m; ++r) artificial[r] = cols++;

  Tableau t;
  t.cols = cols;
  t.rows.assign(m, Vector(cols + 1, 0));
  t.basis.assign(m, 0);
  for (int r = 0; r < m; ++r) {
    const auto& row = lp.rows[r];
    Rational sign = sgn(row.rhs) < 0 ? -1 : 1;
    for (int i = 0; i < lp.num_vars; ++i) {
      t.rows[r][pos[i]] = sign * row.coeffs[i];
      if (neg[i] >= 0) t.rows[r][neg[i]] = -sign * row.coeffs[i];
    }
    if (slack[r] >= 0) {
      Rational s = row.rel == LinearProgram::Rel::LE ? 1 : -1;
      t.rows[r][slack[r]] = sign * s;
    }
    t.rows[r][artificial[r]] = 1;
    t.rows[r][cols] = sign * row.rhs;
    t.basis[r] = artificial[r];
  }

  std::vector<bool> all(cols, true);
  Vector phase1(cols, 0);
  for (int c = first_artificial; c < cols; ++c) phase1[c] = 1;
  t.optimize(phase1, all);
  Rational infeas = 0;
  for (int r = 0; r < m; ++r) infeas += phase1[t.basis[r]] * t.rows[r][cols];
  LpResult result;
  if (sgn(infeas) != 0) {
    result.status = LpResult::Status::Infeasible;
    return result;
  }
  // Drive remaining (zero-valued) artificials out of the basis where possible.
  for (int r = 0; r < m; ++r) {
    if (t.basis[r] < first_artificial) continue;
    for (int c = 0; c < first_artificial; ++c) {
      if (sgn(t.rows[r][c]) != 0) {
        t.pivot(r, c);
        break;
      }
    }
  }
  std::vector<bool> allowed(cols, true);
  for (int c = first_artificial; c < cols; ++c) allowed[c] = false;
  Vector cost(cols, 0);
  for (int i = 0; i < lp.num_vars; ++i) {
    cost[pos[i]] = lp.objective[i];
    if (neg[i] >= 0) cost[neg[i]] = -lp.objective[i];
  }
  if (!t.optimize(cost, allowed)) {
    result.status = LpResult::Status::Unbounded;
    return result;
  }
  Vector values(cols, 0);
  for (int r = 0; r < m; ++r) values[t.basis[r]] = t.rows[r][cols];
  result.status = LpResult::Status::Optimal;
  result.x.assign(lp.num_vars, 0);
  for (int i = 0; i < lp.num_vars; ++i) {
    result.x[i] = values[pos[i]] - (neg[i] >= 0 ? values[neg[i]] : Rational(0));
  }
  result.value = 0;
  for (int i = 0; i < lp.num_vars; ++i) result.value += lp.objective[i] * result.x[i];
  return result;
}

}  // namespace monores
