#include "mesoc/projection_oracle.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "mesoc/projection.hpp"

namespace mesoc {

namespace {

constexpr double kKktTolerance = 1e-8;
constexpr double kFeasibilitySlack = 1e-12;

// Rows a_k of {y : a_k . y >= 0} for a polyhedral cone; the x-block of a
// cylinder contributes no rows.
bool polyhedral_rows(const ConeSpec& cone, Matrix& rows) {
  const Eigen::Index n = cone.dim();
  switch (cone.kind()) {
    case ConeKind::Monotone:
    case ConeKind::MonotoneNonneg: {
      const Eigen::Index extra = cone.kind() == ConeKind::MonotoneNonneg ? 1 : 0;
      rows = Matrix::Zero(n - 1 + extra, n);
      for (Eigen::Index i = 0; i + 1 < n; ++i) {
        rows(i, i) = 1.0;
        rows(i, i + 1) = -1.0;
      }
      if (extra) rows(n - 1, n - 1) = 1.0;
      return true;
    }
    case ConeKind::NonnegOrthant:
      rows = Matrix::Identity(n, n);
      return true;
    case ConeKind::Cylinder: {
      Matrix inner;
      if (!polyhedral_rows(cone.inner(), inner)) return false;
      rows = Matrix::Zero(inner.rows(), n);
      rows.rightCols(inner.cols()) = inner;
      return true;
    }
    default:
      return false;
  }
}

OracleResult enumerate_active_sets(const ConeSpec& cone, const Matrix& rows, const Vector& v) {
  const auto m = rows.rows();
  OracleResult best;
  double best_distance = std::numeric_limits<double>::infinity();
  const std::size_t subsets = std::size_t{1} << m;
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<Eigen::Index> active;
    for (Eigen::Index k = 0; k < m; ++k)
      if (mask & (std::size_t{1} << k)) active.push_back(k);
    Vector y = v;
    Vector multipliers;
    if (!active.empty()) {
      Matrix a(static_cast<Eigen::Index>(active.size()), rows.cols());
      for (std::size_t k = 0; k < active.size(); ++k) a.row(static_cast<Eigen::Index>(k)) = rows.row(active[k]);
      // Stationarity y = v + A_S^T lambda with A_S y = 0.
      const Matrix gram = a * a.transpose();
      multipliers = gram.completeOrthogonalDecomposition().solve(Vector(-a * v));
      y = v + a.transpose() * multipliers;
      if ((a * y).cwiseAbs().maxCoeff() > 1e-9) continue;
      if (multipliers.minCoeff() < -kFeasibilitySlack) continue;
    }
    if (m > 0 && (rows * y).minCoeff() < -kFeasibilitySlack) continue;
    const double distance = (y - v).norm();
    if (distance < best_distance) {
      best_distance = distance;
      best.point = y;
    }
  }
  best.iterations = subsets;
  if (!std::isfinite(best_distance)) best.point = v;
  best.kkt_residual = projection_kkt_residual(cone, v, best.point);
  best.converged = best.kkt_residual <= kKktTolerance;
  return best;
}

// min ||y - v||^2 s.t. cuts.row(k) . y >= 0, by dual coordinate ascent.
Vector hildreth(const Matrix& cuts, const Vector& v) {
  Vector y = v;
  Vector lambda = Vector::Zero(cuts.rows());
  for (int sweep = 0; sweep < 100000; ++sweep) {
    double change = 0.0;
    for (Eigen::Index k = 0; k < cuts.rows(); ++k) {
      const auto a = cuts.row(k);
      const double next = std::max(0.0, lambda[k] - a.dot(y) / a.squaredNorm());
      const double delta = next - lambda[k];
      if (delta != 0.0) {
        y += delta * a.transpose();
        lambda[k] = next;
        change = std::max(change, std::abs(delta));
      }
    }
    if (change < 1e-17) break;
  }
  return y;
}

OracleResult cutting_planes(const ConeSpec& cone, const Vector& v, std::size_t max_iters) {
  const ConeSpec& lorentz = cone.kind() == ConeKind::Cylinder ? cone.inner() : cone;
  const Eigen::Index offset = cone.dim() - lorentz.dim();
  const Eigen::Index n = cone.dim();
  std::vector<Vector> cuts;
  OracleResult result;
  Vector y = v;
  for (std::size_t it = 0; it < max_iters; ++it) {
    result.iterations = it + 1;
    const double head = y[offset];
    const Vector rest = y.tail(lorentz.dim() - 1);
    const double r = rest.norm();
    if (r - head <= 1e-15 * std::max(1.0, v.norm())) break;
    // Supporting half-space y_0 >= d . y_rest with d = rest / ||rest||.
    Vector cut = Vector::Zero(n);
    cut[offset] = 1.0;
    cut.tail(lorentz.dim() - 1) = -rest / r;
    cuts.push_back(cut);
    Matrix rows(static_cast<Eigen::Index>(cuts.size()), n);
    for (std::size_t k = 0; k < cuts.size(); ++k) rows.row(static_cast<Eigen::Index>(k)) = cuts[k];
    y = hildreth(rows, v);
  }
  result.point = y;
  result.kkt_residual = projection_kkt_residual(cone, v, y);
  result.converged = result.kkt_residual <= kKktTolerance;
  return result;
}

}  // namespace

OracleResult project_oracle(const ConeSpec& set, const Vector& v, std::size_t max_iters) {
  require_dim(set, v);
  if (set.dim() > 8) throw DimensionError("project_oracle is limited to dimension <= 8");
  Matrix rows;
  if (polyhedral_rows(set, rows)) return enumerate_active_sets(set, rows, v);
  const bool lorentz_like =
      set.kind() == ConeKind::Lorentz ||
      (set.kind() == ConeKind::Cylinder && set.inner().kind() == ConeKind::Lorentz);
  if (lorentz_like) {
    const ConeSpec& base = set.kind() == ConeKind::Cylinder ? set.inner() : set;
    if (base.dim() < 2) throw DimensionError("project_oracle: Lorentz cone needs n >= 2");
    return cutting_planes(set, v, max_iters);
  }
  throw UnsupportedError("project_oracle: unsupported set " + set.describe());
}

}  // namespace mesoc
