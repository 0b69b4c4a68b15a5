#pragma once

#include <cstddef>

#include "mesoc/cone.hpp"

namespace mesoc {

struct OracleResult {
  Vector point;
  double kkt_residual = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

/// Slow reference projection used to check the fast projections. Polyhedral
/// sets (MONOTONE, MONOTONE_NONNEG, NONNEG_ORTHANT and cylinders over them)
/// are solved by enumerating every active set of the inequality system; the
/// Lorentz cone (and cylinders over it) by an outer cutting-plane loop whose
/// polyhedral subproblems are solved by Hildreth's dual coordinate ascent.
/// Limited to dimension <= 8. `converged` is false when the final KKT residual
/// exceeds 1e-8.
OracleResult project_oracle(const ConeSpec& set, const Vector& v, std::size_t max_iters = 200);

}  // namespace mesoc
