#include "mesoc/order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mesoc/sampling.hpp"

namespace mesoc {

bool cone_leq(const ConeSpec& cone, const PartitionedVector& a, const PartitionedVector& b,
              const Tolerances& tol) {
  require_split(cone, a);
  require_split(cone, b);
  return contains(cone, b - a, tol);
}

OrderedPairSample sample_ordered_pair(const ConeSpec& cone, std::uint64_t seed, std::uint64_t index) {
  Rng rng = make_rng(seed, index);
  const Vector lo = sample_gaussian(cone.dim(), rng);
  std::uniform_real_distribution<double> gap(0.0, 2.0);
  double t = gap(rng);
  if (t == 0.0) t = 2.0;
  const Vector hi = lo + t * sample_cone_point(cone, rng);
  return {PartitionedVector::split(lo, cone.p()), PartitionedVector::split(hi, cone.p())};
}

IsotonicityReport check_isotone(const PointMap& map, const ConeSpec& cone, std::size_t n_samples,
                                std::uint64_t seed, std::span<const OrderedPairSample> injected,
                                const Tolerances& tol, Execution exec) {
  for (const auto& pair : injected) {
    if (!cone_leq(cone, pair.lo, pair.hi, tol)) {
      throw PreconditionError("check_isotone: injected pair is not ordered by " + cone.describe());
    }
  }
  const std::size_t total = injected.size() + n_samples;
  std::vector<std::optional<IsotonicityViolation>> found(total);
  for_each_index(total, exec, [&](std::size_t k) {
    const OrderedPairSample pair =
        k < injected.size() ? injected[k] : sample_ordered_pair(cone, seed, k - injected.size());
    const PartitionedVector diff = map(pair.hi) - map(pair.lo);
    const auto slacks = constraint_slacks(cone, diff.flat());
    std::size_t worst = 0;
    double worst_value = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < slacks.size(); ++s) {
      if (slacks[s].value < worst_value) {
        worst_value = slacks[s].value;
        worst = s;
      }
    }
    if (worst_value < -tol.membership) found[k] = IsotonicityViolation{k, pair.lo, pair.hi, diff, worst};
  });
  IsotonicityReport report;
  report.checked = total;
  for (auto& v : found)
    if (v) report.violations.push_back(std::move(*v));
  return report;
}

HyperplaneReport hyperplane_isotone_test(const ConeSpec& cone, const Vector& a, std::size_t n_samples,
                                         std::uint64_t seed, double tol, Execution exec) {
  require_dim(cone, a);
  if (std::abs(a.norm() - 1.0) > 1e-12) throw std::invalid_argument("hyperplane normal must be a unit vector");
  const ConeSpec dual = dual_of(cone);
  const bool pairs = supports_complementarity_pairs(cone);
  std::vector<ComplementarityPairSample> structured;
  if (pairs) structured = structured_complementarity_pairs(cone);

  const std::size_t total = structured.size() + n_samples;
  std::vector<double> margin(total);
  std::vector<std::pair<Vector, Vector>> points(total);
  for_each_index(total, exec, [&](std::size_t k) {
    Vector x;
    Vector y;
    if (k < structured.size()) {
      x = structured[k].primal;
      y = structured[k].dual;
    } else {
      const std::size_t index = k - structured.size();
      Rng rng = make_rng(seed, index);
      // Every other sample is drawn from C(K), where <x,y> = 0 and the
      // inequality is tightest.
      if (pairs && index % 2 == 1) {
        auto pair = random_complementarity_pair(cone, rng);
        x = std::move(pair.primal);
        y = std::move(pair.dual);
      } else {
        x = sample_cone_point(cone, rng);
        y = sample_cone_point(dual, rng);
      }
    }
    margin[k] = x.dot(y) - a.dot(x) * a.dot(y);
    points[k] = {std::move(x), std::move(y)};
  });
  HyperplaneReport report;
  report.checked = total;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < total; ++k) {
    if (margin[k] < report.worst_margin) {
      report.worst_margin = margin[k];
      if (margin[k] < -tol) report.witness = points[k];
    }
  }
  report.holds = !(report.worst_margin < -tol);
  return report;
}

}  // namespace mesoc
