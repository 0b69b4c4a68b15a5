#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mesoc/cone.hpp"

namespace mesoc {

using Rng = std::mt19937_64;

/// Generator for sample `index` of a seeded sweep. Depends only on
/// (seed, index), so sweeps are reproducible under any worker partition.
Rng make_rng(std::uint64_t seed, std::uint64_t index);

Vector sample_gaussian(Eigen::Index n, Rng& rng);
Vector sample_unit_vector(Eigen::Index n, Rng& rng);

/// Random point of the cone. Faces are hit with positive probability: each
/// free nonnegative increment is zero with probability 1/5.
Vector sample_cone_point(const ConeSpec& cone, Rng& rng);

struct ComplementarityPairSample {
  Vector primal;
  Vector dual;
  std::string family;
};

bool supports_complementarity_pairs(const ConeSpec& cone);

/// Random element of the complementarity set C(K). Supported for MESOC,
/// MONOTONE_NONNEG, NONNEG_ORTHANT and LORENTZ.
ComplementarityPairSample random_complementarity_pair(const ConeSpec& cone, Rng& rng);

/// Deterministic generator families of C(K): the pairs that pin down the
/// Lyapunov-like structure (generator pairs of the monotone nonnegative cone,
/// (a^i,0,e^j,v), (e,u^i,e^m-e^n,0), (e,u,e/p,-u), (e,u,e^j,-u), ...).
std::vector<ComplementarityPairSample> structured_complementarity_pairs(const ConeSpec& cone);

/// Structured families followed by n_random seeded random pairs.
std::vector<ComplementarityPairSample> complementarity_pairs(const ConeSpec& cone,
                                                             std::size_t n_random,
                                                             std::uint64_t seed);

}  // namespace mesoc
