#pragma once

#include "mesoc/cone.hpp"

namespace mesoc {

/// Splits a MESOC point into a part in
///   L1 = cone{(e, m) : ||m|| <= 1}
/// and a part in
///   L2 = cone{(1,0,..,0,0), (1,1,0,..,0,0), ..., (1,..,1,0,0)}.
/// With a_1 = x_p and a_i = x_{p-i+1} - x_{p-i+2} (i >= 2) the point equals
/// (a_1 e, u) + sum_{i>=2} a_i (1,..,1,0,..,0, 0) where the i-th generator has
/// p-i+1 leading ones.
struct Decomposition {
  Vector a;
  Vector u;

  PartitionedVector l1_part() const;
  PartitionedVector l2_part() const;
  PartitionedVector reconstruct() const;
};

Decomposition decompose_mesoc(int p, int q, const PartitionedVector& z, const Tolerances& tol = {});

bool in_l1(const PartitionedVector& z, const Tolerances& tol = {});
bool in_l2(const PartitionedVector& z, const Tolerances& tol = {});

struct SpanCheck {
  Eigen::Index rank_l1 = 0;
  Eigen::Index rank_l2 = 0;
  Eigen::Index rank_stacked = 0;

  /// span(L1) and span(L2) meet only at the origin.
  bool trivial_intersection() const { return rank_stacked == rank_l1 + rank_l2; }
};

/// Rank test on the stacked generator matrices of L1 and L2.
SpanCheck reducibility_span_check(int p, int q);

}  // namespace mesoc
