#pragma once

#include "monores/cover.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace monores {

/// One failed check with what is needed to replay it.
struct Failure {
  std::string check;
  std::string input;
  std::string expected;
  std::string got;
};

struct Report {
  std::string suite;
  std::size_t cases = 0;
  std::vector<Failure> failures;
  std::map<std::string, double> metrics;

  bool ok() const { return failures.empty(); }
  void fail(std::string check, std::string input, std::string expected, std::string got);
  /// Appends other's cases and failures; metrics are prefixed with other's suite name.
  void absorb(const Report& other);
};

/// The six acceptance fixtures as (text, n).
const std::vector<std::pair<std::string, int>>& acceptance_fixtures();

/// Central finite differences of the chart map (exact rational arithmetic, per-coordinate
/// steps) against the recorded jacobian_monomial * jacobian_unit at the chart point w.
double jacobian_relative_error(const Chart& chart, const Vector& w);

/// Per chart: exact factorization, coordinate and Jacobian factorizations, finite-difference
/// Jacobian at 20 points, injectivity and unit floor on sampled region points; then coverage.
Report atlas_verify(const Atlas& atlas, const Series& f, std::size_t samples, std::uint64_t seed);

/// Worked examples: edge regions against their closed form, the symmetric cubic face census,
/// the nondegenerate sum of squares and the two-variable preparation flow.
Report run_fixture_suite(const Norm& norm, std::size_t samples = 1000, std::uint64_t seed = 42);

/// Random generator sets (n <= 3, <= 6 generators): vertices against the hull oracle and the
/// Newton distance against the LP oracle.
Report hull_suite(std::size_t sets, std::uint64_t seed);

/// Random exponent sets: every leaf ordered and unimodular within the node budget, and
/// x^v o gamma_k = x^{L v} by substitution on a spread of leaves.
Report ordering_suite(std::size_t sets, std::uint64_t seed, std::size_t node_budget = kDefaultNodeBudget);

/// hull_suite and ordering_suite together.
Report run_oracle_suite(std::size_t sets = 200, std::uint64_t seed = 42);

/// Resolves every acceptance fixture and verifies the atlas.
Report run_atlas_suite(const Norm& norm, std::size_t samples = 1000, std::uint64_t seed = 42);

}  // namespace monores
