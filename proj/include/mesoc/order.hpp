#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mesoc/cone.hpp"
#include "mesoc/parallel.hpp"

namespace mesoc {

/// a <=_K b, i.e. b - a in K.
bool cone_leq(const ConeSpec& cone, const PartitionedVector& a, const PartitionedVector& b,
              const Tolerances& tol = {});

using PointMap = std::function<PartitionedVector(const PartitionedVector&)>;

/// lo <=_K hi for the cone it was sampled from.
struct OrderedPairSample {
  PartitionedVector lo;
  PartitionedVector hi;
};

struct IsotonicityViolation {
  // Position in the sweep; injected pairs come first.
  std::size_t index;
  PartitionedVector lo;
  PartitionedVector hi;
  PartitionedVector image_diff;
  // Index into constraint_slacks(cone, image_diff) of the most violated inequality.
  std::size_t failed_inequality;
};

struct IsotonicityReport {
  std::size_t checked = 0;
  std::vector<IsotonicityViolation> violations;

  bool isotone_on_samples() const { return violations.empty(); }
};

/// Falsification test of K-isotonicity of `map`: for every injected pair and
/// for n_samples random pairs lo <=_K hi (lo Gaussian, hi = lo + t * k with k
/// sampled from K and t in (0, 2]) checks map(hi) - map(lo) in K. Injected
/// pairs must satisfy lo <=_K hi (PreconditionError otherwise).
IsotonicityReport check_isotone(const PointMap& map, const ConeSpec& cone, std::size_t n_samples,
                                std::uint64_t seed, std::span<const OrderedPairSample> injected = {},
                                const Tolerances& tol = {}, Execution exec = Execution::parallel);

/// Deterministic ordered pair number `index` of a seeded sweep.
OrderedPairSample sample_ordered_pair(const ConeSpec& cone, std::uint64_t seed, std::uint64_t index);

struct HyperplaneReport {
  bool holds = true;
  std::size_t checked = 0;
  // min over samples of <x,y> - <a,x><a,y>.
  double worst_margin = 0.0;
  std::optional<std::pair<Vector, Vector>> witness;
};

/// Samples x in K, y in K* (plus complementarity pairs when the cone has a
/// generator) and reports whether <x,y> >= <a,x><a,y> - tol on every sample,
/// the condition under which the hyperplane with unit normal a is a K-isotone
/// projection set.
HyperplaneReport hyperplane_isotone_test(const ConeSpec& cone, const Vector& a, std::size_t n_samples,
                                         std::uint64_t seed, double tol = 1e-10,
                                         Execution exec = Execution::parallel);

}  // namespace mesoc
