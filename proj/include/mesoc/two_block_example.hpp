#pragma once

#include <cmath>
#include <vector>

#include "mesoc/micp.hpp"

// A 2x2 mixed complementarity problem with C = {u_1 >= u_2 >= 0}, where
// I - F = f_1 w1 + f_2 w2 with
//   f_1 = x_1/10 - x_2/20 + ||u||/20 + 1,   w1 = (2, 1, 1/3, 1/6),
//   f_2 = x_1/5 - 3x_2/20 + ||u||/20 - 3/5, w2 = (2, 1, 1/6, 1/3).
namespace mesoc::example {

inline StructuredMap two_block_map() {
  std::vector<ScalarTerm> terms{
      {Vector{{1.0 / 10, -1.0 / 20}}, 1.0 / 20, 1.0},
      {Vector{{1.0 / 5, -3.0 / 20}}, 1.0 / 20, -3.0 / 5},
  };
  std::vector<PartitionedVector> directions{
      {Vector{{2.0, 1.0}}, Vector{{1.0 / 3, 1.0 / 6}}},
      {Vector{{2.0, 1.0}}, Vector{{1.0 / 6, 1.0 / 3}}},
  };
  return StructuredMap::scalar_combo(2, 2, std::move(terms), std::move(directions));
}

inline MicpInstance two_block_instance() { return MicpInstance(ConeSpec::monotone_nonneg(2), two_block_map()); }

/// A point of K and L where (G, H) is again ordered by L.
inline PartitionedVector dominating_point() { return {Vector{{30.0, 12.0}}, Vector{{4.0, 3.0}}}; }

/// Limit of the iteration when u is confined to the ray {u_2 = 0}.
inline PartitionedVector axis_face_point() {
  return {Vector{{992.0 / 691, 496.0 / 691}}, Vector{{212.0 / 691, 0.0}}};
}

/// Point of the diagonal ray {u_1 = u_2} with G = 0.
inline PartitionedVector diagonal_face_point() {
  const double r = std::sqrt(2.0);
  const double u = (48 + 2 * r) / 287;
  return {Vector{{(384 + 16 * r) / 287, (192 + 8 * r) / 287}}, Vector{{u, u}}};
}

/// lo <= hi in ESOC(2,2) but not in MESOC(2,2), and the difference of the
/// images under I - F leaves ESOC(2,2).
inline OrderedPairSample esoc_only_pair() {
  return {{Vector{{0.0, 0.0}}, Vector{{2.0, 0.0}}}, {Vector{{1.0, 2.0}}, Vector{{1.0, 0.0}}}};
}

}  // namespace mesoc::example
