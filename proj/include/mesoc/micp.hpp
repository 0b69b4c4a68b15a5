#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mesoc/cone.hpp"
#include "mesoc/order.hpp"

namespace mesoc {

/// f(x,u) = <g,x> + s ||u|| + t.
struct ScalarTerm {
  Vector g;
  double s = 0.0;
  double t = 0.0;

  double operator()(const PartitionedVector& z) const { return g.dot(z.x()) + s * z.u().norm() + t; }
};

/// I - F = sum_k f_k omega_k.
struct ScalarComboMap {
  std::vector<ScalarTerm> terms;
  std::vector<PartitionedVector> directions;
};

/// F(z) = M z + c.
struct AffineMap {
  Matrix m;
  Vector c;
};

/// The map F = (G; H) of a mixed complementarity problem.
class StructuredMap {
 public:
  static StructuredMap scalar_combo(int p, int q, std::vector<ScalarTerm> terms,
                                    std::vector<PartitionedVector> directions);
  static StructuredMap affine(int p, int q, Matrix m, Vector c);

  int p() const { return p_; }
  int q() const { return q_; }
  bool is_scalar_combo() const { return std::holds_alternative<ScalarComboMap>(form_); }
  const ScalarComboMap& scalar_combo() const { return std::get<ScalarComboMap>(form_); }
  const AffineMap& affine() const { return std::get<AffineMap>(form_); }

  /// z - F(z).
  PartitionedVector identity_minus(const PartitionedVector& z) const;
  /// F(z) = (G(z), H(z)).
  PartitionedVector apply(const PartitionedVector& z) const;

 private:
  StructuredMap(int p, int q, std::variant<ScalarComboMap, AffineMap> form)
      : p_(p), q_(q), form_(std::move(form)) {}

  void require_split(const PartitionedVector& z) const;

  int p_;
  int q_;
  std::variant<ScalarComboMap, AffineMap> form_;
};

struct MapValue {
  Vector g;
  Vector h;
};

MapValue evaluate_map(const StructuredMap& map, const PartitionedVector& z);

/// MiCP(G, H, C, p, q): G(x,u) = 0, C contains u, u is orthogonal to H(x,u),
/// and H(x,u) lies in C*. Equivalently NCP(F, K) with K = R^p x C.
struct MicpInstance {
  MicpInstance(ConeSpec inner, StructuredMap map);

  int p() const { return map.p(); }
  int q() const { return map.q(); }
  ConeSpec cylinder() const { return ConeSpec::cylinder(p(), inner); }
  ConeSpec order_cone() const { return ConeSpec::mesoc(p(), q()); }

  ConeSpec inner;
  StructuredMap map;
  PartitionedVector start;
  std::size_t max_iter = 2000;
  double conv_tol = 1e-12;
  double divergence_bound = 1e12;
};

/// (x - G(x,u), P_C(u - H(x,u))).
PartitionedVector picard_step(const MicpInstance& instance, const PartitionedVector& z);

enum class SolveStatus { converged, max_iter, diverged };

std::string to_string(SolveStatus status);

struct IterationTrace {
  std::vector<PartitionedVector> iterates;  // z^0, z^1, ...
  std::vector<double> step_norms;           // ||z^{n+1} - z^n||
  std::vector<bool> order_certificates;     // z^n <=_L z^{n+1}
  SolveStatus status = SolveStatus::max_iter;

  std::size_t steps() const { return step_norms.size(); }
  bool all_ordered() const;
};

struct SolveResult {
  PartitionedVector solution;
  IterationTrace trace;
};

/// Picard iteration z^{n+1} = P_K(z^n - F(z^n)) from instance.start until the
/// step norm drops to conv_tol, max_iter steps pass, or ||z^n|| exceeds the
/// divergence bound. The MESOC order certificate of every step is recorded
/// but never enforced.
SolveResult picard_solve(const MicpInstance& instance);

struct SolutionCertificate {
  Vector g_value;
  Vector h_value;
  double g_residual = 0.0;           // ||G(z)||
  double primal_residual = 0.0;      // violation of u in C
  double dual_residual = 0.0;        // violation of H(z) in C*
  double complementarity = 0.0;      // |<u, H(z)>|
  bool passed = false;

  double max_residual() const;
};

SolutionCertificate verify_solution(const MicpInstance& instance, const PartitionedVector& z,
                                    double tol = 1e-10);

struct OmegaGamma {
  bool in_k_and_l = false;
  bool in_omega = false;
  bool in_gamma = false;
};

/// Omega: z in K and L with G_1 >= ... >= G_p >= ||H||.
/// Gamma: z in K and L with G_1 >= ... >= G_p >= ||u - P_C(u - H)||.
OmegaGamma omega_gamma_membership(const MicpInstance& instance, const PartitionedVector& z,
                                  const Tolerances& tol = {});

struct PreconditionReport {
  PartitionedVector first_iterate;
  // z^0 <=_order z^1.
  bool first_iterate_ordered = false;
  // From the origin: -G(0)_1 >= ... >= -G(0)_p >= ||H(0)||.
  bool origin_chain = false;
  IsotonicityReport isotonicity;

  bool satisfied() const { return first_iterate_ordered && isotonicity.isotone_on_samples(); }
};

/// Sufficient conditions for monotone convergence of the Picard iteration:
/// the first iterate dominates the start in the order cone (MESOC(p,q) by
/// default), and I - F is isotone for that order (falsified by sampling, plus
/// any injected pairs).
PreconditionReport check_convergence_preconditions(const MicpInstance& instance, std::size_t n_samples,
                                                   std::uint64_t seed,
                                                   std::span<const OrderedPairSample> injected = {},
                                                   const ConeSpec* ordering = nullptr,
                                                   const Tolerances& tol = {},
                                                   Execution exec = Execution::parallel);

}  // namespace mesoc
