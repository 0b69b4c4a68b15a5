#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mesoc/cone.hpp"
#include "mesoc/parallel.hpp"
#include "mesoc/sampling.hpp"

namespace mesoc {

/// One element of a closed-form basis of Lyapunov-like matrices, tagged with
/// the free parameter it represents ("a", "a2", ..., "c1", ..., "skew(i,j)").
struct LyapMatrix {
  Matrix entries;
  std::string param;
};

/// Basis of the Lyapunov-like matrices on the monotone nonnegative cone R^p_{>=+}:
/// upper-triangular, entry a_j constant down column j above the diagonal, row i
/// diagonal a - sum_{k>i} a_k. Returns the p elements for a, a_2, ..., a_p.
std::vector<LyapMatrix> lyap_basis_monotone_nonneg(int p);

/// Basis of the Lyapunov-like matrices on MESOC(p,q), q >= 1, in block form
/// [A B; C D]. The "a" element sets A = I and D = I together, a_j elements
/// carry the monotone-nonnegative pattern in A, c_k elements fill column k of
/// B and row k of the last column of C, and the skew elements put
/// E_ij - E_ji into D. p + q(q+1)/2 elements in total.
std::vector<LyapMatrix> lyap_basis_mesoc(int p, int q);

/// p + q(q+1)/2.
int mesoc_lyapunov_rank_formula(int p, int q);

struct LyapunovReport {
  bool holds = true;
  std::size_t checked = 0;
  double max_abs = 0.0;
  std::optional<ComplementarityPairSample> witness;
};

/// Evaluates |<A z, w>| over the structured complementarity families of the
/// cone plus n_random seeded random pairs.
LyapunovReport is_lyapunov_like(const Matrix& a, const ConeSpec& cone, std::size_t n_random,
                                std::uint64_t seed, double tol = 1e-10,
                                Execution exec = Execution::parallel);

/// Rows w (x) z acting on the column-major vectorisation of A, one per pair,
/// so that row . vec(A) = <A z, w>.
Matrix lyapunov_constraint_matrix(const std::vector<ComplementarityPairSample>& pairs,
                                  Eigen::Index dim, Execution exec = Execution::parallel);

struct LyapunovRankResult {
  int rank = 0;
  std::size_t pairs_used = 0;
  Vector singular_values;
  /// Orthonormal basis of the numerical nullspace, one vec(A) per column.
  Matrix nullspace;
};

class RankNotStabilized : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// m^2 minus the numerical rank (singular values above svd_tol * sigma_max) of
/// the constraint matrix built from the structured families and n_pairs
/// random complementarity pairs. Throws RankNotStabilized when a second batch
/// with 2 * n_pairs random pairs gives a different answer.
LyapunovRankResult lyapunov_rank_numeric(const ConeSpec& cone, std::size_t n_pairs, std::uint64_t seed,
                                         double svd_tol = 1e-8, Execution exec = Execution::parallel);

/// Vectorises a list of matrices into the columns of one matrix.
Matrix vectorize_basis(const std::vector<LyapMatrix>& basis);

}  // namespace mesoc
