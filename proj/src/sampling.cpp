#include "mesoc/sampling.hpp"

#include <cmath>

namespace mesoc {

namespace {

// Nonnegative increment; zero with probability 1/5 so that faces get hit.
double increment(Rng& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < 0.2) return 0.0;
  std::exponential_distribution<double> expo(1.0);
  return expo(rng);
}

double positive(Rng& rng) {
  std::uniform_real_distribution<double> dist(0.1, 2.0);
  return dist(rng);
}

// Gaussian vector scaled by a random factor so that both tiny and large
// second blocks occur.
Vector scaled_gaussian(Eigen::Index n, Rng& rng) {
  std::uniform_real_distribution<double> scale(0.0, 2.0);
  return sample_gaussian(n, rng) * scale(rng);
}

// Nonincreasing sequence ending at `floor`.
Vector nonincreasing_above(Eigen::Index n, double floor, Rng& rng) {
  Vector x(n);
  double level = floor;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    if (i < n - 1) level += increment(rng);
    x[i] = level;
  }
  return x;
}

// Vector whose partial sums are the given nonnegative values.
Vector from_partial_sums(const Vector& sums) {
  Vector y(sums.size());
  double prev = 0.0;
  for (Eigen::Index j = 0; j < sums.size(); ++j) {
    y[j] = sums[j] - prev;
    prev = sums[j];
  }
  return y;
}

Vector prefix_ones(Eigen::Index n, Eigen::Index count) {
  Vector v = Vector::Zero(n);
  v.head(count).setOnes();
  return v;
}

// e^j - e^{j+1} with e^{n+1} := 0 (0-based j).
Vector difference_generator(Eigen::Index n, Eigen::Index j) {
  Vector v = Vector::Zero(n);
  v[j] = 1.0;
  if (j + 1 < n) v[j + 1] = -1.0;
  return v;
}

Vector canonical(Eigen::Index n, Eigen::Index i) {
  Vector v = Vector::Zero(n);
  v[i] = 1.0;
  return v;
}

Vector concat(const Vector& a, const Vector& b) {
  Vector out(a.size() + b.size());
  out << a, b;
  return out;
}

// Random pair of C(R^n_{>=+}) as (sum_{i in I} a_i u^i, sum_{j in J} b_j v^j)
// with disjoint I, J, where u^i = e^1+...+e^i and v^j = e^j - e^{j+1}.
// last_owner puts the last index in I (1), in J (2), in neither (3) or picks
// at random (0).
struct MonotonePair {
  Vector x;
  Vector y;
};

MonotonePair monotone_nonneg_pair(Eigen::Index n, Rng& rng, int last_owner) {
  std::uniform_int_distribution<int> side(0, 1);
  Vector x = Vector::Zero(n);
  Vector partial = Vector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    int owner = side(rng);
    if (i == n - 1 && last_owner == 1) owner = 0;
    if (i == n - 1 && last_owner == 2) owner = 1;
    if (i == n - 1 && last_owner == 3) continue;
    if (owner == 0) {
      x += increment(rng) * prefix_ones(n, i + 1);
    } else {
      partial[i] = increment(rng);
    }
  }
  return {x, from_partial_sums(partial)};
}

ComplementarityPairSample mesoc_random_pair(int p, int q, Rng& rng) {
  if (q == 0) {
    auto pair = monotone_nonneg_pair(p, rng, 0);
    return {pair.x, pair.y, "C1"};
  }
  std::uniform_int_distribution<int> family(1, 4);
  const int f = family(rng);
  switch (f) {
    case 1: {
      auto pair = monotone_nonneg_pair(p, rng, 0);
      return {concat(pair.x, Vector::Zero(q)), concat(pair.y, Vector::Zero(q)), "C1"};
    }
    case 2: {
      // x_p = 0 forces the last partial sum of y to be free; it bounds ||v||.
      auto pair = monotone_nonneg_pair(p, rng, 2);
      const double top = positive(rng);
      Vector partial(p);
      double s = 0.0;
      for (Eigen::Index j = 0; j < p; ++j) {
        s += pair.y[j];
        partial[j] = s;
      }
      partial[p - 1] = top;
      std::uniform_real_distribution<double> frac(0.05, 1.0);
      Vector v = sample_unit_vector(q, rng) * (top * frac(rng));
      return {concat(pair.x, Vector::Zero(q)), concat(from_partial_sums(partial), v), "C2"};
    }
    case 3: {
      // x_p = ||u||, sum(y) = ||v||, v = -lambda u.
      auto pair = monotone_nonneg_pair(p, rng, 3);
      Vector u = sample_unit_vector(q, rng) * positive(rng);
      const double lambda = positive(rng);
      Vector v = -lambda * u;
      Vector x = pair.x + u.norm() * Vector::Ones(p);
      Vector partial(p);
      double s = 0.0;
      for (Eigen::Index j = 0; j < p; ++j) {
        s += pair.y[j];
        partial[j] = s;
      }
      partial[p - 1] = v.norm();
      return {concat(x, u), concat(from_partial_sums(partial), v), "C3"};
    }
    default: {
      auto pair = monotone_nonneg_pair(p, rng, 1);
      const double xp = positive(rng);
      Vector x = pair.x + xp * Vector::Ones(p);
      std::uniform_real_distribution<double> frac(0.05, 1.0);
      Vector u = sample_unit_vector(q, rng) * (xp * frac(rng));
      return {concat(x, u), concat(pair.y, Vector::Zero(q)), "C4"};
    }
  }
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

Vector sample_gaussian(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

Vector sample_unit_vector(Eigen::Index n, Rng& rng) {
  for (;;) {
    Vector v = sample_gaussian(n, rng);
    const double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
}

Vector sample_cone_point(const ConeSpec& cone, Rng& rng) {
  const Eigen::Index p = cone.p();
  const Eigen::Index q = cone.q();
  switch (cone.kind()) {
    case ConeKind::Mesoc: {
      Vector u = scaled_gaussian(q, rng);
      return concat(nonincreasing_above(p, u.norm() + increment(rng), rng), u);
    }
    case ConeKind::Esoc: {
      Vector u = scaled_gaussian(q, rng);
      Vector x(p);
      for (Eigen::Index i = 0; i < p; ++i) x[i] = u.norm() + increment(rng);
      return concat(x, u);
    }
    case ConeKind::MesocDual: {
      Vector sums(p);
      for (Eigen::Index j = 0; j < p; ++j) sums[j] = increment(rng);
      sums[p - 1] += positive(rng);
      std::uniform_real_distribution<double> frac(0.0, 1.0);
      Vector v = q > 0 ? Vector(sample_unit_vector(q, rng) * (sums[p - 1] * frac(rng))) : Vector(0);
      return concat(from_partial_sums(sums), v);
    }
    case ConeKind::EsocDual: {
      Vector x(p);
      for (Eigen::Index i = 0; i < p; ++i) x[i] = increment(rng);
      x[0] += positive(rng);
      std::uniform_real_distribution<double> frac(0.0, 1.0);
      Vector v = q > 0 ? Vector(sample_unit_vector(q, rng) * (x.sum() * frac(rng))) : Vector(0);
      return concat(x, v);
    }
    case ConeKind::Monotone: {
      std::normal_distribution<double> normal(0.0, 1.0);
      return nonincreasing_above(p, normal(rng), rng);
    }
    case ConeKind::MonotoneNonneg:
      return nonincreasing_above(p, increment(rng), rng);
    case ConeKind::MonotoneDual: {
      Vector sums(p);
      for (Eigen::Index j = 0; j < p; ++j) sums[j] = increment(rng);
      sums[p - 1] = 0.0;
      return from_partial_sums(sums);
    }
    case ConeKind::MonotoneNonnegDual: {
      Vector sums(p);
      for (Eigen::Index j = 0; j < p; ++j) sums[j] = increment(rng);
      return from_partial_sums(sums);
    }
    case ConeKind::NonnegOrthant: {
      Vector x(p);
      for (Eigen::Index i = 0; i < p; ++i) x[i] = increment(rng);
      return x;
    }
    case ConeKind::Lorentz: {
      Vector rest = scaled_gaussian(q, rng);
      Vector z(1 + q);
      z << rest.norm() + increment(rng), rest;
      return z;
    }
    case ConeKind::Cylinder:
      return concat(sample_gaussian(p, rng), sample_cone_point(cone.inner(), rng));
    case ConeKind::CylinderDual:
      return concat(Vector::Zero(p), sample_cone_point(cone.inner(), rng));
  }
  throw UnsupportedError("no sampler for " + cone.describe());
}

bool supports_complementarity_pairs(const ConeSpec& cone) {
  switch (cone.kind()) {
    case ConeKind::Mesoc:
    case ConeKind::MonotoneNonneg:
    case ConeKind::NonnegOrthant:
    case ConeKind::Lorentz:
      return true;
    default:
      return false;
  }
}

ComplementarityPairSample random_complementarity_pair(const ConeSpec& cone, Rng& rng) {
  const Eigen::Index n = cone.dim();
  switch (cone.kind()) {
    case ConeKind::Mesoc:
      return mesoc_random_pair(cone.p(), cone.q(), rng);
    case ConeKind::MonotoneNonneg: {
      auto pair = monotone_nonneg_pair(n, rng, 0);
      return {pair.x, pair.y, "C1"};
    }
    case ConeKind::NonnegOrthant: {
      std::uniform_int_distribution<int> side(0, 1);
      Vector x = Vector::Zero(n);
      Vector y = Vector::Zero(n);
      for (Eigen::Index i = 0; i < n; ++i) (side(rng) == 0 ? x : y)[i] = increment(rng);
      return {x, y, "disjoint-support"};
    }
    case ConeKind::Lorentz: {
      if (n == 1) return {Vector::Ones(1) * positive(rng), Vector::Zero(1), "ray"};
      Vector d = sample_unit_vector(n - 1, rng);
      Vector z(n);
      Vector w(n);
      const double s = positive(rng);
      const double t = positive(rng);
      z << s, s * d;
      w << t, -t * d;
      return {z, w, "boundary-rays"};
    }
    default:
      throw UnsupportedError("complementarity pairs are not generated for " + cone.describe());
  }
}

std::vector<ComplementarityPairSample> structured_complementarity_pairs(const ConeSpec& cone) {
  std::vector<ComplementarityPairSample> out;
  const Eigen::Index n = cone.dim();
  switch (cone.kind()) {
    case ConeKind::NonnegOrthant:
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          if (i != j) out.push_back({canonical(n, i), canonical(n, j), "e^i,e^j"});
      break;
    case ConeKind::MonotoneNonneg:
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          if (i != j) out.push_back({prefix_ones(n, i + 1), difference_generator(n, j), "u^i,v^j"});
      break;
    case ConeKind::Lorentz:
      for (Eigen::Index k = 1; k < n; ++k) {
        for (double sign : {1.0, -1.0}) {
          Vector z = Vector::Zero(n);
          Vector w = Vector::Zero(n);
          z[0] = 1.0;
          z[k] = sign;
          w[0] = 1.0;
          w[k] = -sign;
          out.push_back({z, w, "axis-rays"});
        }
      }
      break;
    case ConeKind::Mesoc: {
      const Eigen::Index p = cone.p();
      const Eigen::Index q = cone.q();
      const Vector zq = Vector::Zero(q);
      // C1: generator pairs of the monotone nonnegative cone.
      for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = 0; j < p; ++j)
          if (i != j) {
            out.push_back({concat(prefix_ones(p, i + 1), zq), concat(difference_generator(p, j), zq),
                           "C1:u^i,v^j"});
          }
      if (q == 0) break;
      std::vector<Vector> units;
      for (Eigen::Index k = 0; k < q; ++k) {
        units.push_back(canonical(q, k));
        units.push_back(-canonical(q, k));
      }
      for (Eigen::Index k = 0; k + 1 < q; ++k) {
        Vector d = canonical(q, k) + canonical(q, k + 1);
        units.push_back(d / d.norm());
      }
      // C2: (a^i, 0, e^j, v) with j > i and ||v|| = 1.
      for (Eigen::Index i = 0; i + 1 < p; ++i)
        for (Eigen::Index j = i + 1; j < p; ++j)
          for (const auto& v : units) {
            out.push_back({concat(prefix_ones(p, i + 1), zq), concat(canonical(p, j), v), "C2:a^i,e^j,v"});
          }
      // C4: (e, u^k, e^m - e^n, 0) with m < n.
      for (const auto& u : units)
        for (Eigen::Index m = 0; m < p; ++m)
          for (Eigen::Index k = m + 1; k < p; ++k) {
            out.push_back({concat(Vector::Ones(p), u), concat(canonical(p, m) - canonical(p, k), zq),
                           "C4:e,u,e^m-e^n"});
          }
      // C3: (e, u, e/p, -u) and (e, u, e^j, -u) with ||u|| = 1.
      for (const auto& u : units) {
        out.push_back({concat(Vector::Ones(p), u), concat(Vector::Ones(p) / static_cast<double>(p), -u),
                       "C3:e,u,e/p,-u"});
        for (Eigen::Index j = 0; j < p; ++j) {
          out.push_back({concat(Vector::Ones(p), u), concat(canonical(p, j), -u), "C3:e,u,e^j,-u"});
        }
      }
      break;
    }
    default:
      throw UnsupportedError("complementarity pairs are not generated for " + cone.describe());
  }
  return out;
}

std::vector<ComplementarityPairSample> complementarity_pairs(const ConeSpec& cone,
                                                             std::size_t n_random,
                                                             std::uint64_t seed) {
  auto out = structured_complementarity_pairs(cone);
  out.reserve(out.size() + n_random);
  for (std::size_t k = 0; k < n_random; ++k) {
    Rng rng = make_rng(seed, k);
    out.push_back(random_complementarity_pair(cone, rng));
  }
  return out;
}

}  // namespace mesoc
