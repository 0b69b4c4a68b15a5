#include "mesoc/decomposition.hpp"

#include <vector>

namespace mesoc {

PartitionedVector Decomposition::l1_part() const {
  const Eigen::Index p = a.size();
  return {Vector::Constant(p, a[0]), u};
}

PartitionedVector Decomposition::l2_part() const {
  const Eigen::Index p = a.size();
  Vector x = Vector::Zero(p);
  // Accumulate from the last generator so that x_k = sum_{i>=2, p-i+1>=k} a_i.
  for (Eigen::Index i = 1; i < p; ++i) x.head(p - i).array() += a[i];
  return {x, Vector::Zero(u.size())};
}

PartitionedVector Decomposition::reconstruct() const {
  const Eigen::Index p = a.size();
  Vector x(p);
  double level = a[0];
  x[p - 1] = level;
  for (Eigen::Index k = p - 2; k >= 0; --k) {
    level += a[p - 1 - k];
    x[k] = level;
  }
  return {x, u};
}

Decomposition decompose_mesoc(int p, int q, const PartitionedVector& z, const Tolerances& tol) {
  const auto cone = ConeSpec::mesoc(p, q);
  require_split(cone, z);
  if (!contains(cone, z, tol)) throw PreconditionError("decompose_mesoc: point is not in MESOC");
  const auto& x = z.x();
  Decomposition d;
  d.a.resize(p);
  d.a[0] = x[p - 1];
  for (int i = 2; i <= p; ++i) d.a[i - 1] = x[p - i] - x[p - i + 1];
  d.u = z.u();
  return d;
}

bool in_l1(const PartitionedVector& z, const Tolerances& tol) {
  const auto& x = z.x();
  if (x.size() == 0) return false;
  const double c = x[0];
  if ((x.array() - c).abs().maxCoeff() > tol.membership) return false;
  return c >= z.u().norm() - tol.membership;
}

bool in_l2(const PartitionedVector& z, const Tolerances& tol) {
  if (z.q() > 0 && z.u().cwiseAbs().maxCoeff() > tol.membership) return false;
  const auto& x = z.x();
  const Eigen::Index p = x.size();
  if (std::abs(x[p - 1]) > tol.membership) return false;
  for (Eigen::Index i = 0; i + 1 < p; ++i) {
    if (x[i] - x[i + 1] < -tol.membership) return false;
  }
  return true;
}

SpanCheck reducibility_span_check(int p, int q) {
  if (p < 1 || q < 0) throw DimensionError("reducibility_span_check: need p >= 1, q >= 0");
  const Eigen::Index n = p + q;
  std::vector<Vector> l1;
  Vector base = Vector::Zero(n);
  base.head(p).setOnes();
  l1.push_back(base);
  for (int k = 0; k < q; ++k) {
    for (double s : {1.0, -1.0}) {
      Vector g = base;
      g[p + k] = s;
      l1.push_back(g);
    }
  }
  std::vector<Vector> l2;
  for (int i = 1; i < p; ++i) {
    Vector g = Vector::Zero(n);
    g.head(i).setOnes();
    l2.push_back(g);
  }
  auto stack = [n](const std::vector<Vector>& cols) {
    Matrix m(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols[j];
    return m;
  };
  auto rank = [](const Matrix& m) -> Eigen::Index {
    if (m.cols() == 0) return 0;
    return Eigen::FullPivLU<Matrix>(m).rank();
  };
  std::vector<Vector> both = l1;
  both.insert(both.end(), l2.begin(), l2.end());
  return {rank(stack(l1)), rank(stack(l2)), rank(stack(both))};
}

}  // namespace mesoc
