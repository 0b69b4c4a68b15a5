#include "mesoc/core.hpp"

#include <utility>

namespace mesoc {

void Tolerances::validate() const {
  if (!(membership >= 0.0) || !(orthogonality >= 0.0)) {
    throw std::invalid_argument("tolerances must be nonnegative");
  }
}

PartitionedVector::PartitionedVector(Vector x, Vector u) : x_(std::move(x)), u_(std::move(u)) {}

PartitionedVector PartitionedVector::zeros(Eigen::Index p, Eigen::Index q) {
  return {Vector::Zero(p), Vector::Zero(q)};
}

PartitionedVector PartitionedVector::split(const Vector& flat, Eigen::Index p) {
  if (p < 0 || p > flat.size()) {
    throw DimensionError("split index " + std::to_string(p) + " outside vector of length " +
                         std::to_string(flat.size()));
  }
  return {flat.head(p), flat.tail(flat.size() - p)};
}

Vector PartitionedVector::flat() const {
  Vector out(size());
  out << x_, u_;
  return out;
}

bool PartitionedVector::all_finite() const { return x_.allFinite() && u_.allFinite(); }

void PartitionedVector::require_same_split(const PartitionedVector& other) const {
  if (p() != other.p() || q() != other.q()) {
    throw DimensionError("partitioned vectors have different (p,q) splits");
  }
}

double PartitionedVector::dot(const PartitionedVector& other) const {
  require_same_split(other);
  return x_.dot(other.x_) + u_.dot(other.u_);
}

double PartitionedVector::norm() const { return std::sqrt(x_.squaredNorm() + u_.squaredNorm()); }

PartitionedVector PartitionedVector::operator+(const PartitionedVector& other) const {
  require_same_split(other);
  return {x_ + other.x_, u_ + other.u_};
}

PartitionedVector PartitionedVector::operator-(const PartitionedVector& other) const {
  require_same_split(other);
  return {x_ - other.x_, u_ - other.u_};
}

PartitionedVector PartitionedVector::operator*(double s) const { return {x_ * s, u_ * s}; }

}  // namespace mesoc
