#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mesoc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an input violates a mathematical precondition of an operation,
// e.g. a point that must lie in the cone does not.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Tolerances {
  double membership = 1e-10;
  double orthogonality = 1e-10;

  void validate() const;
};

/// A point (x, u) of R^p x R^q with the split kept explicit.
class PartitionedVector {
 public:
  PartitionedVector() = default;
  PartitionedVector(Vector x, Vector u);

  static PartitionedVector zeros(Eigen::Index p, Eigen::Index q);
  /// Splits a flat vector after the first p entries.
  static PartitionedVector split(const Vector& flat, Eigen::Index p);

  const Vector& x() const { return x_; }
  const Vector& u() const { return u_; }
  Vector& x() { return x_; }
  Vector& u() { return u_; }

  Eigen::Index p() const { return x_.size(); }
  Eigen::Index q() const { return u_.size(); }
  Eigen::Index size() const { return x_.size() + u_.size(); }

  Vector flat() const;
  bool all_finite() const;

  double dot(const PartitionedVector& other) const;
  double norm() const;

  PartitionedVector operator+(const PartitionedVector& other) const;
  PartitionedVector operator-(const PartitionedVector& other) const;
  PartitionedVector operator*(double s) const;

 private:
  void require_same_split(const PartitionedVector& other) const;

  Vector x_;
  Vector u_;
};

inline PartitionedVector operator*(double s, const PartitionedVector& z) { return z * s; }

}  // namespace mesoc
