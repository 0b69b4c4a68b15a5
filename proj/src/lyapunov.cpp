#include "mesoc/lyapunov.hpp"

#include <algorithm>
#include <cmath>

namespace mesoc {

namespace {

Matrix monotone_nonneg_element(int p, int param) {
  // param 0 is a; param j (1-based column index j+1 >= 2) is a_{j+1}.
  if (param == 0) return Matrix::Identity(p, p);
  Matrix m = Matrix::Zero(p, p);
  const int col = param;
  for (int i = 0; i < col; ++i) {
    m(i, col) = 1.0;
    m(i, i) = -1.0;
  }
  return m;
}

struct RankSolve {
  int nullity;
  Vector singular_values;
  Matrix nullspace;
};

RankSolve nullity_of(const Matrix& rows, double svd_tol) {
  const Eigen::Index cols = rows.cols();
  // Reduce to a square triangular factor first; the singular values of R
  // equal those of the tall constraint matrix.
  Matrix r;
  if (rows.rows() > cols) {
    Eigen::HouseholderQR<Matrix> qr(rows);
    r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  } else {
    r = rows;
  }
  Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeFullV);
  const Vector sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? svd_tol * sv[0] : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  const Eigen::Index nullity = cols - rank;
  return {static_cast<int>(nullity), sv, svd.matrixV().rightCols(nullity)};
}

}  // namespace

std::vector<LyapMatrix> lyap_basis_monotone_nonneg(int p) {
  if (p < 1) throw DimensionError("lyap_basis_monotone_nonneg: p must be positive");
  std::vector<LyapMatrix> basis;
  for (int k = 0; k < p; ++k) {
    basis.push_back({monotone_nonneg_element(p, k), k == 0 ? "a" : "a" + std::to_string(k + 1)});
  }
  return basis;
}

std::vector<LyapMatrix> lyap_basis_mesoc(int p, int q) {
  if (p < 1 || q < 1) throw DimensionError("lyap_basis_mesoc: need p >= 1 and q >= 1");
  const int n = p + q;
  std::vector<LyapMatrix> basis;
  for (int k = 0; k < p; ++k) {
    Matrix t = Matrix::Zero(n, n);
    t.topLeftCorner(p, p) = monotone_nonneg_element(p, k);
    // The diagonal of D is tied to a.
    if (k == 0) t.bottomRightCorner(q, q).setIdentity();
    basis.push_back({t, k == 0 ? "a" : "a" + std::to_string(k + 1)});
  }
  for (int k = 0; k < q; ++k) {
    Matrix t = Matrix::Zero(n, n);
    t.block(0, p + k, p, 1).setOnes();
    t(p + k, p - 1) = 1.0;
    basis.push_back({t, "c" + std::to_string(k + 1)});
  }
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      Matrix t = Matrix::Zero(n, n);
      t(p + i, p + j) = 1.0;
      t(p + j, p + i) = -1.0;
      basis.push_back({t, "skew(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"});
    }
  }
  return basis;
}

int mesoc_lyapunov_rank_formula(int p, int q) { return p + q * (q + 1) / 2; }

LyapunovReport is_lyapunov_like(const Matrix& a, const ConeSpec& cone, std::size_t n_random,
                                std::uint64_t seed, double tol, Execution exec) {
  if (a.rows() != cone.dim() || a.cols() != cone.dim()) {
    throw DimensionError("is_lyapunov_like: matrix does not match " + cone.describe());
  }
  const auto pairs = complementarity_pairs(cone, n_random, seed);
  std::vector<double> values(pairs.size());
  for_each_index(pairs.size(), exec, [&](std::size_t k) {
    values[k] = std::abs((a * pairs[k].primal).dot(pairs[k].dual));
  });
  LyapunovReport report;
  report.checked = pairs.size();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (values[k] > report.max_abs) {
      report.max_abs = values[k];
      if (values[k] > tol) report.witness = pairs[k];
    }
  }
  report.holds = report.max_abs <= tol;
  return report;
}

Matrix lyapunov_constraint_matrix(const std::vector<ComplementarityPairSample>& pairs, Eigen::Index dim,
                                  Execution exec) {
  Matrix rows(static_cast<Eigen::Index>(pairs.size()), dim * dim);
  for_each_index(pairs.size(), exec, [&](std::size_t k) {
    const auto& z = pairs[k].primal;
    const auto& w = pairs[k].dual;
    // <A z, w> = sum_{i,j} w_i A_ij z_j; column-major index of A_ij is i + j*dim.
    const auto row = static_cast<Eigen::Index>(k);
    for (Eigen::Index j = 0; j < dim; ++j)
      for (Eigen::Index i = 0; i < dim; ++i) rows(row, i + j * dim) = w[i] * z[j];
  });
  return rows;
}

LyapunovRankResult lyapunov_rank_numeric(const ConeSpec& cone, std::size_t n_pairs, std::uint64_t seed,
                                         double svd_tol, Execution exec) {
  if (cone.dim() > 10) throw DimensionError("lyapunov_rank_numeric is limited to dimension <= 10");
  if (!supports_complementarity_pairs(cone)) {
    throw UnsupportedError("lyapunov_rank_numeric: no complementarity generator for " + cone.describe());
  }
  const Eigen::Index dim = cone.dim();
  const auto first = complementarity_pairs(cone, n_pairs, seed);
  const auto second = complementarity_pairs(cone, 2 * n_pairs, seed ^ 0x9e3779b97f4a7c15ULL);
  const RankSolve a = nullity_of(lyapunov_constraint_matrix(first, dim, exec), svd_tol);
  const RankSolve b = nullity_of(lyapunov_constraint_matrix(second, dim, exec), svd_tol);
  if (a.nullity != b.nullity) {
    throw RankNotStabilized("Lyapunov rank changed from " + std::to_string(a.nullity) + " to " +
                            std::to_string(b.nullity) + " when doubling the pair count");
  }
  return {b.nullity, second.size(), b.singular_values, b.nullspace};
}

Matrix vectorize_basis(const std::vector<LyapMatrix>& basis) {
  if (basis.empty()) return {};
  const Eigen::Index n = basis.front().entries.rows();
  Matrix out(n * n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = basis[k].entries.reshaped();
  }
  return out;
}

}  // namespace mesoc
