#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mesoc/cone.hpp"
#include "mesoc/parallel.hpp"

namespace mesoc {

/// Candidate pair ((x,u),(y,v)) for C(K).
struct CompPair {
  PartitionedVector primal;
  PartitionedVector dual;
  std::optional<double> lambda;
};

struct ComplementarityReport {
  bool in_set = false;
  // True when the MESOC certificate path ran (u != 0 and v != 0); false when
  // the check fell back to memberships plus direct orthogonality.
  bool structured = false;
  std::optional<double> lambda;
  double inner_product = 0.0;
  std::vector<std::string> failures;
};

/// Membership of the pair in C(K). For MESOC with u != 0 != v the certificate
/// form is checked: both memberships, (x_i - x_{i+1}) * sum_{j<=i} y_j = 0,
/// x_p = ||u||, sum(y) = ||v|| and v = -lambda u with lambda = ||v||/||u|| > 0.
/// Every other case (other cones, u = 0 or v = 0) checks memberships and
/// |<z,w>| <= orthogonality tolerance.
ComplementarityReport in_complementarity_set(const ConeSpec& cone, const CompPair& pair,
                                             const Tolerances& tol = {});

/// Direct test: z in K, w in K*, |<z,w>| <= tol.orthogonality.
bool in_complementarity_set_direct(const ConeSpec& cone, const Vector& z, const Vector& w,
                                   const Tolerances& tol = {});

struct DualitySweepResult {
  std::size_t samples = 0;
  double min_inner_product = 0.0;
  // max over samples of (||u|| sum y - <x,y>) and (||u|| ||v|| - ||u|| sum y);
  // both are <= 0 when the chain holds.
  double max_first_gap = 0.0;
  double max_second_gap = 0.0;
};

/// Samples z in MESOC(p,q) and w in its dual (every fourth sample a pair of
/// the complementarity set) and records the duality and inequality-chain
/// margins.
DualitySweepResult duality_sweep(int p, int q, std::size_t samples, std::uint64_t seed,
                                 Execution exec = Execution::parallel);

}  // namespace mesoc
