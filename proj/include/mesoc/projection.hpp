#pragma once

#include <utility>
#include <vector>

#include "mesoc/cone.hpp"

namespace mesoc {

/// Half-open index range [begin, end).
struct IndexRange {
  Eigen::Index begin;
  Eigen::Index end;

  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct ProjectionResult {
  Vector point;
  double distance = 0.0;
  /// Ranges pooled into a single level by the isotonic solver (length >= 2).
  std::vector<IndexRange> active_blocks;
};

/// Euclidean projection onto {x_1 >= ... >= x_n} by pool-adjacent-violators.
ProjectionResult project_monotone(const Vector& v);

/// Projection onto {x_1 >= ... >= x_n >= 0}: isotonic fit, then clipped at 0.
ProjectionResult project_monotone_nonneg(const Vector& v);

ProjectionResult project_nonneg_orthant(const Vector& v);

/// Projection onto the Lorentz cone {x_0 >= ||x_rest||} in R^n.
ProjectionResult project_lorentz(const Vector& v, Eigen::Index n);

/// Projection onto R^p x C: the x-block is untouched, u goes to P_C(u).
ProjectionResult project_cylinder(int p, const ConeSpec& inner, const PartitionedVector& z);

bool has_projection(const ConeSpec& cone);

/// Dispatches to the projection for MONOTONE, MONOTONE_NONNEG, NONNEG_ORTHANT,
/// LORENTZ and CYLINDER over one of those; throws UnsupportedError otherwise.
ProjectionResult project(const ConeSpec& cone, const Vector& v);

/// Optimality residual of y as the projection of v onto a cone K:
/// max of the violations of y in K, y - v in K*, and |<y, y - v>|.
double projection_kkt_residual(const ConeSpec& cone, const Vector& v, const Vector& y);

}  // namespace mesoc
