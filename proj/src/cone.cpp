#include "mesoc/cone.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mesoc {

namespace {

void require_positive(int value, const char* what) {
  if (value < 1) {
    throw DimensionError(std::string(what) + " must be positive, got " + std::to_string(value));
  }
}

std::string idx(const char* prefix, Eigen::Index i) { return prefix + std::to_string(i + 1); }

void push_chain(std::vector<Slack>& out, const Eigen::Ref<const Vector>& x, const char* name) {
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    out.push_back({std::string(name) + std::to_string(i + 1) + ">=" + name + std::to_string(i + 2),
                   x[i] - x[i + 1]});
  }
}

void push_partial_sums(std::vector<Slack>& out, const Eigen::Ref<const Vector>& x, Eigen::Index count) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < count; ++j) {
    s += x[j];
    out.push_back({"sum(x_1..x_" + std::to_string(j + 1) + ")>=0", s});
  }
}

void append_slacks(const ConeSpec& cone, const Eigen::Ref<const Vector>& z, std::vector<Slack>& out) {
  const Eigen::Index p = cone.p();
  const auto x = z.head(p);
  const auto u = z.tail(cone.q());
  switch (cone.kind()) {
    case ConeKind::Mesoc: {
      push_chain(out, x, "x");
      out.push_back({"x" + std::to_string(p) + ">=||u||", x[p - 1] - u.norm()});
      break;
    }
    case ConeKind::MesocDual: {
      push_partial_sums(out, x, p - 1);
      out.push_back({"sum(x)>=||u||", x.sum() - u.norm()});
      break;
    }
    case ConeKind::Esoc: {
      const double nu = u.norm();
      for (Eigen::Index i = 0; i < p; ++i) out.push_back({idx("x", i) + ">=||u||", x[i] - nu});
      break;
    }
    case ConeKind::EsocDual: {
      for (Eigen::Index i = 0; i < p; ++i) out.push_back({idx("x", i) + ">=0", x[i]});
      out.push_back({"sum(x)>=||u||", x.sum() - u.norm()});
      break;
    }
    case ConeKind::Monotone:
      push_chain(out, x, "x");
      break;
    case ConeKind::MonotoneNonneg:
      push_chain(out, x, "x");
      out.push_back({idx("x", p - 1) + ">=0", x[p - 1]});
      break;
    case ConeKind::MonotoneDual:
      push_partial_sums(out, x, p - 1);
      out.push_back({"sum(x)=0", -std::abs(x.sum())});
      break;
    case ConeKind::MonotoneNonnegDual:
      push_partial_sums(out, x, p);
      break;
    case ConeKind::NonnegOrthant:
      for (Eigen::Index i = 0; i < p; ++i) out.push_back({idx("x", i) + ">=0", x[i]});
      break;
    case ConeKind::Lorentz:
      out.push_back({"x0>=||x_rest||", z[0] - z.tail(z.size() - 1).norm()});
      break;
    case ConeKind::Cylinder: {
      std::vector<Slack> inner;
      append_slacks(cone.inner(), u, inner);
      for (auto& s : inner) out.push_back({"u:" + s.label, s.value});
      break;
    }
    case ConeKind::CylinderDual: {
      for (Eigen::Index i = 0; i < p; ++i) out.push_back({idx("x", i) + "=0", -std::abs(x[i])});
      std::vector<Slack> inner;
      append_slacks(cone.inner(), u, inner);
      for (auto& s : inner) out.push_back({"u:" + s.label, s.value});
      break;
    }
  }
}

}  // namespace

std::string to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::Mesoc: return "MESOC";
    case ConeKind::MesocDual: return "MESOC_DUAL";
    case ConeKind::Esoc: return "ESOC";
    case ConeKind::EsocDual: return "ESOC_DUAL";
    case ConeKind::Monotone: return "MONOTONE";
    case ConeKind::MonotoneNonneg: return "MONOTONE_NONNEG";
    case ConeKind::MonotoneDual: return "MONOTONE_DUAL";
    case ConeKind::MonotoneNonnegDual: return "MONOTONE_NONNEG_DUAL";
    case ConeKind::NonnegOrthant: return "NONNEG_ORTHANT";
    case ConeKind::Lorentz: return "LORENTZ";
    case ConeKind::Cylinder: return "CYLINDER";
    case ConeKind::CylinderDual: return "CYLINDER_DUAL";
  }
  return "UNKNOWN";
}

ConeSpec::ConeSpec(ConeKind kind, int p, int q, std::shared_ptr<const ConeSpec> inner)
    : kind_(kind), p_(p), q_(q), inner_(std::move(inner)) {}

ConeSpec ConeSpec::mesoc(int p, int q) {
  require_positive(p, "p");
  if (q < 0) throw DimensionError("q must be nonnegative");
  return {ConeKind::Mesoc, p, q};
}

ConeSpec ConeSpec::mesoc_dual(int p, int q) {
  require_positive(p, "p");
  if (q < 0) throw DimensionError("q must be nonnegative");
  return {ConeKind::MesocDual, p, q};
}

ConeSpec ConeSpec::esoc(int p, int q) {
  require_positive(p, "p");
  if (q < 0) throw DimensionError("q must be nonnegative");
  return {ConeKind::Esoc, p, q};
}

ConeSpec ConeSpec::esoc_dual(int p, int q) {
  require_positive(p, "p");
  if (q < 0) throw DimensionError("q must be nonnegative");
  return {ConeKind::EsocDual, p, q};
}

ConeSpec ConeSpec::monotone(int n) {
  require_positive(n, "n");
  return {ConeKind::Monotone, n, 0};
}

ConeSpec ConeSpec::monotone_nonneg(int n) {
  require_positive(n, "n");
  return {ConeKind::MonotoneNonneg, n, 0};
}

ConeSpec ConeSpec::monotone_dual(int n) {
  require_positive(n, "n");
  return {ConeKind::MonotoneDual, n, 0};
}

ConeSpec ConeSpec::monotone_nonneg_dual(int n) {
  require_positive(n, "n");
  return {ConeKind::MonotoneNonnegDual, n, 0};
}

ConeSpec ConeSpec::nonneg_orthant(int n) {
  require_positive(n, "n");
  return {ConeKind::NonnegOrthant, n, 0};
}

ConeSpec ConeSpec::lorentz(int n) {
  require_positive(n, "n");
  return {ConeKind::Lorentz, 1, n - 1};
}

ConeSpec ConeSpec::cylinder(int p, ConeSpec inner) {
  require_positive(p, "p");
  if (inner.kind() == ConeKind::Cylinder || inner.kind() == ConeKind::CylinderDual) {
    throw UnsupportedError("nested cylinders are not supported");
  }
  const int q = inner.dim();
  return {ConeKind::Cylinder, p, q, std::make_shared<const ConeSpec>(std::move(inner))};
}

ConeSpec ConeSpec::cylinder_dual(int p, ConeSpec inner) {
  require_positive(p, "p");
  if (inner.kind() == ConeKind::Cylinder || inner.kind() == ConeKind::CylinderDual) {
    throw UnsupportedError("nested cylinders are not supported");
  }
  const int q = inner.dim();
  return {ConeKind::CylinderDual, p, q, std::make_shared<const ConeSpec>(std::move(inner))};
}

const ConeSpec& ConeSpec::inner() const {
  if (!inner_) throw UnsupportedError(to_string(kind_) + " has no inner cone");
  return *inner_;
}

std::string ConeSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << '(';
  switch (kind_) {
    case ConeKind::Mesoc:
    case ConeKind::MesocDual:
    case ConeKind::Esoc:
    case ConeKind::EsocDual:
      os << p_ << ',' << q_;
      break;
    case ConeKind::Cylinder:
    case ConeKind::CylinderDual:
      os << p_ << ',' << inner_->describe();
      break;
    default:
      os << dim();
  }
  os << ')';
  return os.str();
}

bool operator==(const ConeSpec& a, const ConeSpec& b) {
  if (a.kind_ != b.kind_ || a.p_ != b.p_ || a.q_ != b.q_) return false;
  if (a.has_inner() != b.has_inner()) return false;
  return !a.has_inner() || *a.inner_ == *b.inner_;
}

std::vector<Slack> constraint_slacks(const ConeSpec& cone, const Vector& z) {
  require_dim(cone, z);
  std::vector<Slack> out;
  append_slacks(cone, z, out);
  return out;
}

double min_slack(const ConeSpec& cone, const Vector& z) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : constraint_slacks(cone, z)) m = std::min(m, s.value);
  return m;
}

bool contains(const ConeSpec& cone, const Vector& z, const Tolerances& tol) {
  return min_slack(cone, z) >= -tol.membership;
}

bool contains(const ConeSpec& cone, const PartitionedVector& z, const Tolerances& tol) {
  require_split(cone, z);
  return contains(cone, z.flat(), tol);
}

ConeSpec dual_of(const ConeSpec& cone) {
  switch (cone.kind()) {
    case ConeKind::Mesoc: return ConeSpec::mesoc_dual(cone.p(), cone.q());
    case ConeKind::MesocDual: return ConeSpec::mesoc(cone.p(), cone.q());
    case ConeKind::Esoc: return ConeSpec::esoc_dual(cone.p(), cone.q());
    case ConeKind::EsocDual: return ConeSpec::esoc(cone.p(), cone.q());
    case ConeKind::Monotone: return ConeSpec::monotone_dual(cone.p());
    case ConeKind::MonotoneDual: return ConeSpec::monotone(cone.p());
    case ConeKind::MonotoneNonneg: return ConeSpec::monotone_nonneg_dual(cone.p());
    case ConeKind::MonotoneNonnegDual: return ConeSpec::monotone_nonneg(cone.p());
    case ConeKind::NonnegOrthant:
    case ConeKind::Lorentz:
      return cone;
    case ConeKind::Cylinder: return ConeSpec::cylinder_dual(cone.p(), dual_of(cone.inner()));
    case ConeKind::CylinderDual: return ConeSpec::cylinder(cone.p(), dual_of(cone.inner()));
  }
  throw UnsupportedError("dual of unsupported cone");
}

void require_split(const ConeSpec& cone, const PartitionedVector& z) {
  if (z.p() != cone.p() || z.q() != cone.q()) {
    throw DimensionError("point split (" + std::to_string(z.p()) + "," + std::to_string(z.q()) +
                         ") does not match " + cone.describe());
  }
}

void require_dim(const ConeSpec& cone, const Vector& z) {
  if (z.size() != cone.dim()) {
    throw DimensionError("point of dimension " + std::to_string(z.size()) + " does not match " +
                         cone.describe());
  }
}

InequalityChain duality_chain(const PartitionedVector& xu, const PartitionedVector& yv,
                              const Tolerances& tol) {
  if (xu.p() != yv.p() || xu.q() != yv.q()) throw DimensionError("duality_chain: split mismatch");
  const auto primal = ConeSpec::mesoc(static_cast<int>(xu.p()), static_cast<int>(xu.q()));
  if (!contains(primal, xu, tol)) throw PreconditionError("duality_chain: (x,u) is not in MESOC");
  if (!contains(dual_of(primal), yv, tol)) {
    throw PreconditionError("duality_chain: (y,v) is not in the MESOC dual");
  }
  const double nu = xu.u().norm();
  return {xu.x().dot(yv.x()), nu * yv.x().sum(), nu * yv.u().norm()};
}

}  // namespace mesoc
