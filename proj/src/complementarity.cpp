#include "mesoc/complementarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mesoc/sampling.hpp"

namespace mesoc {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

bool in_complementarity_set_direct(const ConeSpec& cone, const Vector& z, const Vector& w,
                                   const Tolerances& tol) {
  return contains(cone, z, tol) && contains(dual_of(cone), w, tol) &&
         std::abs(z.dot(w)) <= tol.orthogonality;
}

ComplementarityReport in_complementarity_set(const ConeSpec& cone, const CompPair& pair,
                                             const Tolerances& tol) {
  require_split(cone, pair.primal);
  require_split(cone, pair.dual);
  ComplementarityReport report;
  const Vector z = pair.primal.flat();
  const Vector w = pair.dual.flat();
  report.inner_product = z.dot(w);

  const ConeSpec dual = dual_of(cone);
  if (!contains(cone, z, tol)) report.failures.push_back("primal point is not in " + cone.describe());
  if (!contains(dual, w, tol)) report.failures.push_back("dual point is not in " + dual.describe());

  const auto& u = pair.primal.u();
  const auto& v = pair.dual.u();
  const double nu = u.norm();
  const double nv = v.norm();
  const bool structured = cone.kind() == ConeKind::Mesoc && nu > tol.membership && nv > tol.membership;

  if (!structured) {
    if (std::abs(report.inner_product) > tol.orthogonality) {
      report.failures.push_back("<z,w> = " + fmt(report.inner_product) + " is not zero");
    }
    report.in_set = report.failures.empty();
    return report;
  }

  report.structured = true;
  const auto& x = pair.primal.x();
  const auto& y = pair.dual.x();
  const Eigen::Index p = x.size();
  double partial = 0.0;
  for (Eigen::Index i = 0; i + 1 < p; ++i) {
    partial += y[i];
    const double product = (x[i] - x[i + 1]) * partial;
    if (std::abs(product) > tol.orthogonality) {
      report.failures.push_back("(x" + std::to_string(i + 1) + "-x" + std::to_string(i + 2) +
                                ")*sum(y_1..y_" + std::to_string(i + 1) + ") = " + fmt(product));
    }
  }
  if (std::abs(x[p - 1] - nu) > tol.membership) {
    report.failures.push_back("x_p - ||u|| = " + fmt(x[p - 1] - nu));
  }
  if (std::abs(y.sum() - nv) > tol.membership) {
    report.failures.push_back("sum(y) - ||v|| = " + fmt(y.sum() - nv));
  }
  const double lambda = nv / nu;
  report.lambda = lambda;
  const double deviation = (v + lambda * u).cwiseAbs().maxCoeff();
  if (deviation > tol.membership) {
    report.failures.push_back("v is not a negative multiple of u (max deviation " + fmt(deviation) + ")");
  }
  if (pair.lambda && std::abs(*pair.lambda - lambda) > tol.membership) {
    report.failures.push_back("supplied lambda " + fmt(*pair.lambda) + " differs from ||v||/||u|| = " +
                              fmt(lambda));
  }
  report.in_set = report.failures.empty();
  return report;
}

DualitySweepResult duality_sweep(int p, int q, std::size_t samples, std::uint64_t seed,
                                 Execution exec) {
  const auto primal = ConeSpec::mesoc(p, q);
  const auto dual = dual_of(primal);
  std::vector<double> inner(samples), gap1(samples), gap2(samples);
  for_each_index(samples, exec, [&](std::size_t k) {
    Rng rng = make_rng(seed, k);
    Vector z;
    Vector w;
    if (k % 4 == 3) {
      auto pair = random_complementarity_pair(primal, rng);
      z = std::move(pair.primal);
      w = std::move(pair.dual);
    } else {
      z = sample_cone_point(primal, rng);
      w = sample_cone_point(dual, rng);
    }
    const auto xu = PartitionedVector::split(z, p);
    const auto yv = PartitionedVector::split(w, p);
    const double nu = xu.u().norm();
    const double xy = xu.x().dot(yv.x());
    const double second = nu * yv.x().sum();
    inner[k] = z.dot(w);
    gap1[k] = second - xy;
    gap2[k] = nu * yv.u().norm() - second;
  });
  DualitySweepResult result;
  result.samples = samples;
  if (samples == 0) return result;
  result.min_inner_product = *std::min_element(inner.begin(), inner.end());
  result.max_first_gap = *std::max_element(gap1.begin(), gap1.end());
  result.max_second_gap = *std::max_element(gap2.begin(), gap2.end());
  return result;
}

}  // namespace mesoc
