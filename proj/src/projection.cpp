#include "mesoc/projection.hpp"

#include <algorithm>
#include <cmath>

namespace mesoc {

namespace {

struct Block {
  double sum;
  Eigen::Index begin;
  Eigen::Index count;

  double mean() const { return sum / static_cast<double>(count); }
};

// Left-to-right sweep; a new block is pooled with its predecessor while the
// predecessor's mean does not exceed it.
ProjectionResult pava_nonincreasing(const Vector& v) {
  if (!v.allFinite()) throw std::invalid_argument("projection input must be finite");
  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    blocks.push_back({v[i], i, 1});
    while (blocks.size() > 1) {
      const Block& last = blocks.back();
      const Block& prev = blocks[blocks.size() - 2];
      if (prev.mean() > last.mean()) break;
      Block merged{prev.sum + last.sum, prev.begin, prev.count + last.count};
      blocks.pop_back();
      blocks.back() = merged;
    }
  }
  ProjectionResult result;
  result.point.resize(v.size());
  for (const auto& b : blocks) {
    result.point.segment(b.begin, b.count).setConstant(b.mean());
    if (b.count > 1) result.active_blocks.push_back({b.begin, b.begin + b.count});
  }
  result.distance = (v - result.point).norm();
  return result;
}

}  // namespace

ProjectionResult project_monotone(const Vector& v) { return pava_nonincreasing(v); }

ProjectionResult project_monotone_nonneg(const Vector& v) {
  ProjectionResult result = pava_nonincreasing(v);
  result.point = result.point.cwiseMax(0.0);
  result.distance = (v - result.point).norm();
  return result;
}

ProjectionResult project_nonneg_orthant(const Vector& v) {
  if (!v.allFinite()) throw std::invalid_argument("projection input must be finite");
  ProjectionResult result;
  result.point = v.cwiseMax(0.0);
  result.distance = (v - result.point).norm();
  return result;
}

ProjectionResult project_lorentz(const Vector& v, Eigen::Index n) {
  if (v.size() != n) throw DimensionError("project_lorentz: vector length differs from n");
  if (n < 2) throw DimensionError("project_lorentz: n must be at least 2");
  if (!v.allFinite()) throw std::invalid_argument("projection input must be finite");
  const double head = v[0];
  const auto rest = v.tail(n - 1);
  const double r = rest.norm();
  ProjectionResult result;
  if (r <= head) {
    result.point = v;
  } else if (r <= -head) {
    result.point = Vector::Zero(n);
  } else {
    const double alpha = 0.5 * (head + r);
    result.point.resize(n);
    result.point[0] = alpha;
    result.point.tail(n - 1) = (alpha / r) * rest;
  }
  result.distance = (v - result.point).norm();
  return result;
}

bool has_projection(const ConeSpec& cone) {
  switch (cone.kind()) {
    case ConeKind::Monotone:
    case ConeKind::MonotoneNonneg:
    case ConeKind::NonnegOrthant:
      return true;
    case ConeKind::Lorentz:
      return cone.dim() >= 2;
    case ConeKind::Cylinder:
      return has_projection(cone.inner());
    default:
      return false;
  }
}

ProjectionResult project(const ConeSpec& cone, const Vector& v) {
  require_dim(cone, v);
  switch (cone.kind()) {
    case ConeKind::Monotone: return project_monotone(v);
    case ConeKind::MonotoneNonneg: return project_monotone_nonneg(v);
    case ConeKind::NonnegOrthant: return project_nonneg_orthant(v);
    case ConeKind::Lorentz: return project_lorentz(v, v.size());
    case ConeKind::Cylinder:
      return project_cylinder(cone.p(), cone.inner(), PartitionedVector::split(v, cone.p()));
    default:
      throw UnsupportedError("no projection available onto " + cone.describe());
  }
}

ProjectionResult project_cylinder(int p, const ConeSpec& inner, const PartitionedVector& z) {
  if (z.p() != p || z.q() != inner.dim()) {
    throw DimensionError("project_cylinder: point split does not match R^p x C");
  }
  if (!has_projection(inner) || inner.kind() == ConeKind::Cylinder) {
    throw UnsupportedError("project_cylinder: no projection onto inner cone " + inner.describe());
  }
  ProjectionResult inner_result = project(inner, z.u());
  ProjectionResult result;
  result.point.resize(z.size());
  result.point << z.x(), inner_result.point;
  result.distance = inner_result.distance;
  for (const auto& b : inner_result.active_blocks) result.active_blocks.push_back({b.begin + p, b.end + p});
  return result;
}

double projection_kkt_residual(const ConeSpec& cone, const Vector& v, const Vector& y) {
  const double primal = std::max(0.0, -min_slack(cone, y));
  const double dual = std::max(0.0, -min_slack(dual_of(cone), Vector(y - v)));
  const double comp = std::abs(y.dot(y - v));
  return std::max({primal, dual, comp});
}

}  // namespace mesoc
