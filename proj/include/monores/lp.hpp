#pragma once

#include "monores/chart_map.hpp"

#include <vector>

namespace monores {

/// Small dense exact-rational linear program: minimize objective . x subject to rows,
/// x_i >= 0 unless marked free.
struct LinearProgram {
  enum class Rel { LE, EQ, GE };
  struct Row {
    Vector coeffs;
    Rel rel = Rel::LE;
    Rational rhs;
  };

  explicit LinearProgram(int num_vars = 0)
      : num_vars(num_vars), free(num_vars, false), objective(num_vars, 0) {}

  int num_vars;
  std::vector<bool> free;
  std::vector<Row> rows;
  Vector objective;

  void add(Vector coeffs, Rel rel, Rational rhs) { rows.push_back({std::move(coeffs), rel, std::move(rhs)}); }
};

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Rational value;
  Vector x;

  bool optimal() const { return status == Status::Optimal; }
};

/// Two-phase simplex with Bland's rule.
LpResult solve(const LinearProgram& lp);

}  // namespace monores
