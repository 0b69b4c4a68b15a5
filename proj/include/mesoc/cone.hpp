#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mesoc/core.hpp"

namespace mesoc {

enum class ConeKind {
  Mesoc,               // x_1 >= ... >= x_p >= ||u||
  MesocDual,           // partial sums of x >= 0, total >= ||u||
  Esoc,                // x_i >= ||u|| for all i
  EsocDual,            // x >= 0, <x,e> >= ||u||
  Monotone,            // x_1 >= ... >= x_n
  MonotoneNonneg,      // x_1 >= ... >= x_n >= 0
  MonotoneDual,        // first n-1 partial sums >= 0, total = 0
  MonotoneNonnegDual,  // all partial sums >= 0
  NonnegOrthant,
  Lorentz,             // x_0 >= ||x_rest||
  Cylinder,            // R^p x C
  CylinderDual,        // {0}^p x C*
};

std::string to_string(ConeKind kind);

/// Tagged description of one of the supported cones. Immutable value type.
///
/// Every cone carries a (p, q) split used when checking PartitionedVector
/// arguments: (p, q) for the two-block cones, (p, dim C) for cylinders,
/// (1, n-1) for the Lorentz cone and (n, 0) for the remaining single-block
/// cones.
class ConeSpec {
 public:
  static ConeSpec mesoc(int p, int q);
  static ConeSpec mesoc_dual(int p, int q);
  static ConeSpec esoc(int p, int q);
  static ConeSpec esoc_dual(int p, int q);
  static ConeSpec monotone(int n);
  static ConeSpec monotone_nonneg(int n);
  static ConeSpec monotone_dual(int n);
  static ConeSpec monotone_nonneg_dual(int n);
  static ConeSpec nonneg_orthant(int n);
  static ConeSpec lorentz(int n);
  static ConeSpec cylinder(int p, ConeSpec inner);
  /// {0}^p x inner; `inner` is already the dual of the cylinder's base.
  static ConeSpec cylinder_dual(int p, ConeSpec inner);

  ConeKind kind() const { return kind_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int dim() const { return p_ + q_; }
  bool has_inner() const { return inner_ != nullptr; }
  const ConeSpec& inner() const;

  std::string describe() const;

  friend bool operator==(const ConeSpec& a, const ConeSpec& b);
  friend bool operator!=(const ConeSpec& a, const ConeSpec& b) { return !(a == b); }

 private:
  ConeSpec(ConeKind kind, int p, int q, std::shared_ptr<const ConeSpec> inner = nullptr);

  ConeKind kind_;
  int p_;
  int q_;
  std::shared_ptr<const ConeSpec> inner_;
};

/// One defining inequality of a cone evaluated at a point. A point is in the
/// cone iff every slack is >= -tol. Equality constraints report -|residual|.
struct Slack {
  std::string label;
  double value;
};

std::vector<Slack> constraint_slacks(const ConeSpec& cone, const Vector& z);

/// Smallest slack; +inf for cones without constraints.
double min_slack(const ConeSpec& cone, const Vector& z);

bool contains(const ConeSpec& cone, const Vector& z, const Tolerances& tol = {});
bool contains(const ConeSpec& cone, const PartitionedVector& z, const Tolerances& tol = {});

ConeSpec dual_of(const ConeSpec& cone);

/// Throws DimensionError unless z has the cone's (p, q) split.
void require_split(const ConeSpec& cone, const PartitionedVector& z);
void require_dim(const ConeSpec& cone, const Vector& z);

/// For (x,u) in MESOC and (y,v) in its dual the three quantities satisfy
/// <x,y> >= ||u|| sum(y) >= ||u|| ||v|| >= 0.
struct InequalityChain {
  double inner_xy;
  double norm_u_times_sum_y;
  double norm_u_times_norm_v;

  bool holds(double tol) const {
    return inner_xy >= norm_u_times_sum_y - tol && norm_u_times_sum_y >= norm_u_times_norm_v - tol &&
           norm_u_times_norm_v >= -tol;
  }
};

InequalityChain duality_chain(const PartitionedVector& xu, const PartitionedVector& yv,
                             const Tolerances& tol = {});

}  // namespace mesoc
