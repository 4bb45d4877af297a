#pragma once

#include "monores/monomial_ordering.hpp"
#include "monores/newton.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace monores {

/// C[0] = C_1, ..., C[n-1] = C_n with C_1 = N + 1 and C_{i+1} = C_i^N + 1.
struct RegionConstants {
  int N = 0;
  std::vector<Rational> C;
  double mu_estimate = 0;   // empirical, filled by verify_domination
  double eta_estimate = 0;  // empirical, filled by tail sampling

  /// C_i for 1 <= i <= n; C_0 is taken as 1.
  const Rational& c(int i) const;
  double log_c(int i) const;
};

RegionConstants choose_constants(int n, int N);

/// Vertices and compact faces of N(f), the data every region predicate refers to.
struct FaceData {
  int n = 0;
  std::vector<Exponent> vertices;
  std::vector<Face> faces;  // enumeration order of compact_faces

  static FaceData from(const Polyhedron& p);
  /// Indices into vertices of the vertices on face f.
  std::vector<int> face_vertex_indices(int f) const;
  /// Position in faces of the face with the given (dim, index).
  int find(int dim, int index) const;
};

/// log|x^v| for every vertex under the norm.
std::vector<double> vertex_log_abs(const Vector& x, const FaceData& fd, const Norm& norm);

/// The (i, j) of the first face (i from n-1 down to 0, j ascending) satisfying conditions a)
/// and b). Throws when x is outside E = {0 < |x_l| < 1/C_n}.
std::optional<std::pair<int, int>> classify_point(const Vector& x, const RegionConstants& consts,
                                                  const FaceData& fd, const Norm& norm);
/// Same, returning nullopt instead of throwing outside E.
std::optional<std::pair<int, int>> classify_in_E(const Vector& x, const RegionConstants& consts,
                                                 const FaceData& fd, const Norm& norm);

/// Random point of E: magnitudes log-uniform in [C_n^-2, C_n^-1] with random signs (real), or
/// p-adic valuations drawn from the matching range with random unit parts.
Vector sample_E_point(std::mt19937_64& rng, int n, const Rational& Cn, const Norm& norm);

struct DominationReport {
  int N = 0;
  std::size_t samples = 0;
  std::size_t violations_a = 0;
  std::size_t violations_b = 0;
  double mu_hat = 0;  // min over classified samples with i < n-1 ... of log(inf_on/sup_off)/log C_{i+1}
  std::vector<std::size_t> census;  // samples per face, in face order

  bool ok() const { return violations_a == 0 && violations_b == 0 && mu_hat > 0; }
};

/// Samples E and checks both inclusion directions of the domination theorem.
DominationReport verify_domination(const FaceData& fd, const RegionConstants& consts, std::size_t samples,
                                 std::uint64_t seed, const Norm& norm);

/// Starting at N = 4, doubles N until the sampled inclusions hold (cap 64).
std::pair<RegionConstants, DominationReport> adaptive_constants(const FaceData& fd, std::size_t samples,
                                                               std::uint64_t seed, const Norm& norm,
                                                               int start_N = 4);

struct DerivativeWitness {
  Vector beta;  // on z variables (zero elsewhere), sum |beta| = 1
  int order = 0;
  Rational delta;
  int max_order = 0;
};

struct RegionDesc {
  int i = 0;
  int j = 0;
  int k = 0;
  int face = -1;  // position in FaceData::faces
  Exponent p_exponent;  // empty when i = 0
  Exponent q_exponent;  // empty when every vertex lies on the face
  std::vector<int> y_vars;
  std::vector<int> z_vars;
  Exponent s_exponent;
  Exponent t_exponent;
  Exponent alpha;  // y-part shared by the on-face vertices
  Exponent vmin;   // L_k(v'), the leaf's dominant vertex image
  bool empty = false;
  std::optional<DerivativeWitness> witness;
};

/// All (i, j, k) descriptions in face order then leaf order.
std::vector<RegionDesc> region_descriptions(const BlowupTree& tree, const FaceData& fd);

/// sum_{alpha off F} |f_alpha| |alpha|^d |x^alpha| < E_{d,f} C_{i+1}^{-eta} sup_v |x^v|.
bool tail_bound_check(const Series& s, const FaceData& fd, int face, int d, const Vector& x,
                      const RegionConstants& consts, const Norm& norm);

/// Membership in the transformed region A'_{ijk}: leaf coordinates w inside G_k and gamma_k(w)
/// classified into (i, j).
bool region_contains(const BlowupTree& tree, int leaf, const FaceData& fd, const RegionConstants& consts,
                     int i, int j, const Vector& w, const Norm& norm);

/// Search over orders 0..max_order and rational directions on z with denominators <= 3.
/// F is the unit factor in leaf coordinates; samples are drawn from A'_{ijk}.
std::optional<DerivativeWitness> derivative_witness(const RegionDesc& region, const BlowupTree& tree,
                                                    const FaceData& fd, const RegionConstants& consts,
                                                    const Series& F, int max_order, std::size_t samples,
                                                    std::uint64_t seed, const Norm& norm);

/// Rational directions with entries k/d, |k| <= d <= max_den, on the given variables,
/// normalized to sum |beta| = 1, deduplicated, smallest lexicographic first.
std::vector<Vector> rational_directions(int n, const std::vector<int>& vars, int max_den);

}  // namespace monores
