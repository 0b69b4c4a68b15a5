#include "mesoc/micp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mesoc/projection.hpp"

namespace mesoc {

StructuredMap StructuredMap::scalar_combo(int p, int q, std::vector<ScalarTerm> terms,
                                          std::vector<PartitionedVector> directions) {
  if (p < 1 || q < 0) throw DimensionError("scalar_combo: need p >= 1 and q >= 0");
  if (terms.size() != directions.size()) {
    throw DimensionError("scalar_combo: " + std::to_string(terms.size()) + " terms but " +
                         std::to_string(directions.size()) + " directions");
  }
  for (const auto& term : terms) {
    if (term.g.size() != p) throw DimensionError("scalar_combo: g has wrong length");
  }
  for (const auto& w : directions) {
    if (w.p() != p || w.q() != q) throw DimensionError("scalar_combo: direction has wrong split");
  }
  return StructuredMap(p, q, ScalarComboMap{std::move(terms), std::move(directions)});
}

StructuredMap StructuredMap::affine(int p, int q, Matrix m, Vector c) {
  if (p < 1 || q < 0) throw DimensionError("affine: need p >= 1 and q >= 0");
  const Eigen::Index n = p + q;
  if (m.rows() != n || m.cols() != n || c.size() != n) {
    throw DimensionError("affine: M must be " + std::to_string(n) + "x" + std::to_string(n) +
                         " and c of length " + std::to_string(n));
  }
  return StructuredMap(p, q, AffineMap{std::move(m), std::move(c)});
}

void StructuredMap::require_split(const PartitionedVector& z) const {
  if (z.p() != p_ || z.q() != q_) {
    throw DimensionError("map expects a point split as (" + std::to_string(p_) + "," + std::to_string(q_) +
                         "), got (" + std::to_string(z.p()) + "," + std::to_string(z.q()) + ")");
  }
}

PartitionedVector StructuredMap::identity_minus(const PartitionedVector& z) const {
  require_split(z);
  if (const auto* combo = std::get_if<ScalarComboMap>(&form_)) {
    PartitionedVector out = PartitionedVector::zeros(p_, q_);
    for (std::size_t k = 0; k < combo->terms.size(); ++k) {
      const double f = combo->terms[k](z);
      out.x() += f * combo->directions[k].x();
      out.u() += f * combo->directions[k].u();
    }
    return out;
  }
  return z - apply(z);
}

PartitionedVector StructuredMap::apply(const PartitionedVector& z) const {
  require_split(z);
  if (const auto* aff = std::get_if<AffineMap>(&form_)) {
    return PartitionedVector::split(aff->m * z.flat() + aff->c, p_);
  }
  return z - identity_minus(z);
}

MapValue evaluate_map(const StructuredMap& map, const PartitionedVector& z) {
  const PartitionedVector f = map.apply(z);
  return {f.x(), f.u()};
}

MicpInstance::MicpInstance(ConeSpec inner_cone, StructuredMap f)
    : inner(std::move(inner_cone)), map(std::move(f)), start(PartitionedVector::zeros(map.p(), map.q())) {
  if (inner.dim() != map.q()) {
    throw DimensionError("inner cone " + inner.describe() + " does not live in R^" + std::to_string(map.q()));
  }
  if (!has_projection(inner)) throw UnsupportedError("no projection onto " + inner.describe());
}

PartitionedVector picard_step(const MicpInstance& instance, const PartitionedVector& z) {
  PartitionedVector d = instance.map.identity_minus(z);
  if (d.u().allFinite()) d.u() = project(instance.inner, d.u()).point;
  return d;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_iter:
      return "max_iter";
    case SolveStatus::diverged:
      return "diverged";
  }
  return "unknown";
}

bool IterationTrace::all_ordered() const {
  return std::all_of(order_certificates.begin(), order_certificates.end(), [](bool b) { return b; });
}

SolveResult picard_solve(const MicpInstance& instance) {
  if (instance.start.p() != instance.p() || instance.start.q() != instance.q()) {
    throw DimensionError("start point has the wrong split");
  }
  const ConeSpec order = instance.order_cone();
  IterationTrace trace;
  trace.iterates.push_back(instance.start);
  trace.status = SolveStatus::max_iter;
  for (std::size_t n = 0; n < instance.max_iter; ++n) {
    const PartitionedVector& z = trace.iterates.back();
    PartitionedVector next = picard_step(instance, z);
    const double step = (next - z).norm();
    trace.order_certificates.push_back(next.all_finite() && cone_leq(order, z, next));
    trace.step_norms.push_back(step);
    trace.iterates.push_back(std::move(next));
    const PartitionedVector& last = trace.iterates.back();
    if (!last.all_finite() || !std::isfinite(step) || last.norm() > instance.divergence_bound) {
      trace.status = SolveStatus::diverged;
      break;
    }
    if (step <= instance.conv_tol) {
      trace.status = SolveStatus::converged;
      break;
    }
  }
  PartitionedVector solution = trace.iterates.back();
  return {std::move(solution), std::move(trace)};
}

double SolutionCertificate::max_residual() const {
  return std::max({g_residual, primal_residual, dual_residual, complementarity});
}

SolutionCertificate verify_solution(const MicpInstance& instance, const PartitionedVector& z, double tol) {
  const MapValue f = evaluate_map(instance.map, z);
  SolutionCertificate cert;
  cert.g_value = f.g;
  cert.h_value = f.h;
  cert.g_residual = f.g.norm();
  cert.primal_residual = std::max(0.0, -min_slack(instance.inner, z.u()));
  cert.dual_residual = std::max(0.0, -min_slack(dual_of(instance.inner), f.h));
  cert.complementarity = std::abs(z.u().dot(f.h));
  cert.passed = std::isfinite(cert.max_residual()) && cert.max_residual() <= tol;
  return cert;
}

OmegaGamma omega_gamma_membership(const MicpInstance& instance, const PartitionedVector& z,
                                  const Tolerances& tol) {
  OmegaGamma out;
  const ConeSpec order = instance.order_cone();
  out.in_k_and_l = contains(instance.cylinder(), z, tol) && contains(order, z, tol);
  if (!out.in_k_and_l) return out;
  const MapValue f = evaluate_map(instance.map, z);
  out.in_omega = contains(order, PartitionedVector(f.g, f.h), tol);
  const Vector residual = z.u() - project(instance.inner, z.u() - f.h).point;
  out.in_gamma = contains(order, PartitionedVector(f.g, residual), tol);
  return out;
}

PreconditionReport check_convergence_preconditions(const MicpInstance& instance, std::size_t n_samples,
                                                   std::uint64_t seed,
                                                   std::span<const OrderedPairSample> injected,
                                                   const ConeSpec* ordering, const Tolerances& tol,
                                                   Execution exec) {
  const ConeSpec order = ordering ? *ordering : instance.order_cone();
  if (order.p() != instance.p() || order.q() != instance.q()) {
    throw DimensionError("ordering cone " + order.describe() + " does not match the instance split");
  }
  PreconditionReport report;
  report.first_iterate = picard_step(instance, instance.start);
  report.first_iterate_ordered = cone_leq(order, instance.start, report.first_iterate, tol);

  const MapValue at_origin = evaluate_map(instance.map, PartitionedVector::zeros(instance.p(), instance.q()));
  report.origin_chain = contains(ConeSpec::mesoc(instance.p(), instance.q()),
                                 PartitionedVector(-at_origin.g, at_origin.h), tol);

  const StructuredMap& map = instance.map;
  const PointMap identity_minus_f = [&map](const PartitionedVector& z) { return map.identity_minus(z); };
  report.isotonicity = check_isotone(identity_minus_f, order, n_samples, seed, injected, tol, exec);
  return report;
}

}  // namespace mesoc
