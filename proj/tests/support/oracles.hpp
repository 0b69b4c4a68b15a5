#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "mesoc/micp.hpp"

namespace mesoc::test {

/// Projection onto {y_1 >= ... >= y_n} (optionally also y_n >= 0) by trying
/// every split of [0, n) into consecutive blocks. On each split the candidate
/// is the vector of block means; with `nonneg`, every suffix of blocks may in
/// addition be pinned to zero. The projection is the feasible candidate
/// closest to v.
inline Vector brute_force_isotonic(const Vector& v, bool nonneg) {
  const Eigen::Index n = v.size();
  Vector best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<Eigen::Index> starts{0};
    for (Eigen::Index i = 1; i < n; ++i) {
      if (mask & (1u << (i - 1))) starts.push_back(i);
    }
    starts.push_back(n);
    const std::size_t blocks = starts.size() - 1;
    for (std::size_t zeroed = 0; zeroed <= (nonneg ? blocks : 0); ++zeroed) {
      Vector y(n);
      for (std::size_t b = 0; b < blocks; ++b) {
        const Eigen::Index len = starts[b + 1] - starts[b];
        const double mean = b >= blocks - zeroed ? 0.0 : v.segment(starts[b], len).mean();
        y.segment(starts[b], len).setConstant(mean);
      }
      bool feasible = true;
      for (Eigen::Index i = 0; i + 1 < n; ++i) feasible = feasible && y(i) >= y(i + 1);
      if (nonneg) feasible = feasible && y(n - 1) >= 0.0;
      const double d = (y - v).norm();
      if (feasible && d < best_dist) {
        best_dist = d;
        best = y;
      }
    }
  }
  return best;
}

/// Projection onto {y_0 >= ||y_rest||} by reduction to the planar cone
/// {t >= |s|}: the projection keeps the direction of v_rest, so only the pair
/// (t, s) = (y_0, ||y_rest||) is unknown. Candidates are v itself, the apex
/// and the closest point of the boundary ray t = s.
inline Vector planar_lorentz_projection(const Vector& v) {
  const double t0 = v(0);
  const Vector rest = v.tail(v.size() - 1);
  const double r = rest.norm();
  if (t0 >= r) return v;
  const double s = std::max(0.0, (t0 + r) / 2.0);
  const double boundary_dist = std::hypot(s - t0, s - r);
  const double apex_dist = std::hypot(t0, r);
  Vector y = Vector::Zero(v.size());
  if (boundary_dist <= apex_dist && r > 0.0) {
    y(0) = s;
    y.tail(v.size() - 1) = rest * (s / r);
  }
  return y;
}

/// Picard iteration for a map with p = q = 2 where u is projected onto the
/// ray {(t, 0) : t >= 0} instead of the inner cone.
inline PartitionedVector axis_ray_picard(const StructuredMap& map, std::size_t iterations) {
  PartitionedVector z = PartitionedVector::zeros(2, 2);
  for (std::size_t n = 0; n < iterations; ++n) {
    PartitionedVector next = map.identity_minus(z);
    next.u() = Vector{{std::max(0.0, next.u()(0)), 0.0}};
    z = next;
  }
  return z;
}

/// Fixed point of z = z - (M z + c), i.e. the solution of M z = -c, via the
/// explicit 2x2 inverse.
inline Vector affine_root_2x2(const Matrix& m, const Vector& c) {
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Matrix inv(2, 2);
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return -(inv / det) * c;
}

}  // namespace mesoc::test

namespace mesoc::test {

/// Zero of G and H for the two-block example under the assumption that u
/// lies in the interior of C. Then z = a w1 + b w2 with a = f_1(z) and
/// b = f_2(z), and with s = a + b, n = ||u||:
///   a = 3s/20 + n/20 + 1,   b = s/4 + n/20 - 3/5.
/// Solved by Newton's method in (a, b).
inline PartitionedVector two_block_interior_zero() {
  double a = 1.0;
  double b = 0.0;
  for (int it = 0; it < 50; ++it) {
    const double s = a + b;
    const double u1 = a / 3 + b / 6;
    const double u2 = a / 6 + b / 3;
    const double n = std::hypot(u1, u2);
    const double dn_da = (u1 / 3 + u2 / 6) / n;
    const double dn_db = (u1 / 6 + u2 / 3) / n;
    const Eigen::Vector2d r{a - (3 * s / 20 + n / 20 + 1), b - (s / 4 + n / 20 - 3.0 / 5)};
    Eigen::Matrix2d jac;
    jac << 1 - 3.0 / 20 - dn_da / 20, -3.0 / 20 - dn_db / 20, -1.0 / 4 - dn_da / 20, 1 - 1.0 / 4 - dn_db / 20;
    const Eigen::Vector2d step = jac.partialPivLu().solve(r);
    a -= step(0);
    b -= step(1);
  }
  const double s = a + b;
  return {Vector{{2 * s, s}}, Vector{{a / 3 + b / 6, a / 6 + b / 3}}};
}

}  // namespace mesoc::test
