#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mesoc/cli/json_io.hpp"
#include "mesoc/complementarity.hpp"
#include "mesoc/decomposition.hpp"
#include "mesoc/lyapunov.hpp"
#include "mesoc/micp.hpp"
#include "mesoc/projection.hpp"
#include "mesoc/projection_oracle.hpp"
#include "mesoc/sampling.hpp"
#include "mesoc/two_block_example.hpp"

namespace {

using namespace mesoc;

constexpr double kSolveTol = 1e-9;
constexpr double kSolveSeconds = 1.0;
constexpr double kNormTol = 1e-15;
constexpr double kWitnessTol = 1e-12;
constexpr double kRecurrenceTol = 1e-14;
constexpr double kLinearSolveTol = 1e-12;
constexpr double kVerifyTol = 1e-12;
constexpr double kLyapTol = 1e-10;
constexpr double kLyapSeconds = 10.0;
constexpr double kDualityTol = 1e-10;
constexpr double kOracleTol = 1e-7;
constexpr double kNonexpansiveTol = 1e-12;
constexpr double kUlps = 4.0;

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

MicpInstance shipped_instance() {
  const cli::ProblemFile file = cli::load_problem(std::string(MESOC_SOURCE_DIR) + "/problems/mixed_example_2x2.json");
  MicpInstance inst(file.cone.inner(), cli::parse_map(file.payload.at("map"), file.cone.p(), file.cone.inner().dim()));
  return inst;
}

Outcome axis_face_reproduction() {
  MicpInstance inst = shipped_instance();
  inst.conv_tol = 1e-12;
  inst.max_iter = 2000;
  const auto t0 = Clock::now();
  const SolveResult r = picard_solve(inst);
  const double elapsed = seconds_since(t0);
  const double gap = (r.solution.flat() - example::axis_face_point().flat()).lpNorm<Eigen::Infinity>();
  const bool pass = r.trace.status == SolveStatus::converged && gap <= kSolveTol && elapsed < kSolveSeconds;
  return {pass, "status " + to_string(r.trace.status) + " after " + std::to_string(r.trace.steps()) +
                    " steps, inf-distance to (992/691,496/691,212/691,0) = " + fmt(gap) + " (need <= " +
                    fmt(kSolveTol) + "), " + fmt(elapsed) + " s"};
}

Outcome initial_data() {
  const MapValue f = evaluate_map(example::two_block_map(), PartitionedVector::zeros(2, 2));
  const double norm_gap = std::abs(f.h.norm() - std::sqrt(2.0) / 6);
  const bool exact = -f.g(0) == 4.0 / 5 && -f.g(1) == 2.0 / 5;
  return {exact && norm_gap <= kNormTol,
          std::string("-G(0) ") + (exact ? "== (4/5, 2/5) exactly" : "differs from (4/5, 2/5)") +
              ", | ||H(0)|| - sqrt2/6 | = " + fmt(norm_gap)};
}

Outcome omega_witness() {
  const MicpInstance inst = example::two_block_instance();
  const MapValue f = evaluate_map(inst.map, example::dominating_point());
  const double err = std::max((f.g - Vector{{15.0, 4.5}}).lpNorm<Eigen::Infinity>(),
                              (f.h - Vector{{257.0 / 120, 133.0 / 120}}).lpNorm<Eigen::Infinity>());
  const bool omega = omega_gamma_membership(inst, example::dominating_point()).in_omega;
  return {err <= kWitnessTol && omega,
          "max error of G, H = " + fmt(err) + ", in_omega = " + (omega ? "true" : "false")};
}

Outcome linear_recurrence() {
  const SolveResult r = picard_solve(shipped_instance());
  const auto& it = r.trace.iterates;
  double worst = 0.0;
  std::size_t steps = 0;
  for (std::size_t n = 0; n + 1 < it.size(); ++n) {
    if (it[n].u()(1) != 0.0) continue;
    ++steps;
    const double x2 = it[n].x()(1);
    const double u1 = it[n].u()(0);
    worst = std::max(worst, std::abs(it[n + 1].x()(1) - (2.0 / 5 * x2 + 1.0 / 10 * u1 + 2.0 / 5)));
    worst = std::max(worst, std::abs(it[n + 1].u()(0) - (11.0 / 120 * x2 + 1.0 / 40 * u1 + 7.0 / 30)));
  }
  Matrix a(2, 2);
  a << 2.0 / 5, 1.0 / 10, 11.0 / 120, 1.0 / 40;
  const Eigen::VectorXcd eig = a.eigenvalues();
  const double spectral = std::max(std::abs(eig(0)), std::abs(eig(1)));
  const Vector fixed = (Matrix::Identity(2, 2) - a).partialPivLu().solve(Vector{{2.0 / 5, 7.0 / 30}});
  const double solve_err = (fixed - Vector{{496.0 / 691, 212.0 / 691}}).lpNorm<Eigen::Infinity>();
  const bool pass = steps > 0 && worst <= kRecurrenceTol && spectral < 1.0 && solve_err <= kLinearSolveTol;
  return {pass, "recurrence residual " + fmt(worst) + " over " + std::to_string(steps) +
                    " steps with u_2 = 0, max |eigenvalue| = " + fmt(spectral) + ", linear solve error " +
                    fmt(solve_err)};
}

Outcome diagonal_solution() {
  const SolutionCertificate c = verify_solution(example::two_block_instance(), example::diagonal_face_point(), kVerifyTol);
  return {c.passed, "||G|| = " + fmt(c.g_residual) + ", u in C residual " + fmt(c.primal_residual) +
                        ", H in C* residual " + fmt(c.dual_residual) + ", |<u,H>| = " + fmt(c.complementarity) +
                        " (need all <= " + fmt(kVerifyTol) + ")"};
}

Outcome lyapunov_rank() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::ostringstream detail;
  for (auto [p, q] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 2}, std::pair{3, 3}}) {
    const ConeSpec l = ConeSpec::mesoc(p, q);
    const int formula = p + q * (q + 1) / 2;
    const auto basis = lyap_basis_mesoc(p, q);
    const int numeric = lyapunov_rank_numeric(l, 400, 101).rank;
    bool all_like = true;
    for (const auto& b : basis) all_like = all_like && is_lyapunov_like(b.entries, l, 10000, 102, kLyapTol).holds;
    pass = pass && static_cast<int>(basis.size()) == formula && numeric == formula && all_like;
    detail << "(" << p << "," << q << "): formula " << formula << " basis " << basis.size() << " numeric " << numeric
           << (all_like ? "" : " [basis element not Lyapunov-like]") << "; ";
  }
  const double elapsed = seconds_since(t0);
  pass = pass && elapsed < kLyapSeconds;
  detail << fmt(elapsed) << " s";
  return {pass, detail.str()};
}

Outcome monotone_nonneg_rank() {
  bool pass = true;
  std::ostringstream detail;
  for (int p = 2; p <= 4; ++p) {
    const int rank = lyapunov_rank_numeric(ConeSpec::monotone_nonneg(p), 200, 103).rank;
    pass = pass && rank == p;
    detail << "p=" << p << " -> " << rank << "; ";
  }
  return {pass, detail.str()};
}

Outcome duality() {
  bool pass = true;
  std::ostringstream detail;
  for (auto [p, q] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{4, 3}}) {
    const DualitySweepResult r = duality_sweep(p, q, 100000, 104);
    pass = pass && r.min_inner_product >= -kDualityTol && r.max_first_gap <= kDualityTol &&
           r.max_second_gap <= kDualityTol;
    detail << "(" << p << "," << q << ") min <z,w> " << fmt(r.min_inner_product) << ", chain gaps "
           << fmt(r.max_first_gap) << "/" << fmt(r.max_second_gap) << "; ";
  }
  return {pass, detail.str()};
}

Outcome projections() {
  const std::vector<ConeSpec> sets{ConeSpec::monotone(6),       ConeSpec::monotone_nonneg(6),
                                   ConeSpec::nonneg_orthant(5), ConeSpec::lorentz(6),
                                   ConeSpec::cylinder(2, ConeSpec::monotone_nonneg(4)),
                                   ConeSpec::cylinder(3, ConeSpec::lorentz(3))};
  double worst_oracle = 0.0;
  double worst_expansion = 0.0;
  bool converged = true;
  for (const auto& set : sets) {
    for (std::uint64_t i = 0; i < 1000; ++i) {
      Rng rng = make_rng(105, i);
      const Vector v = 2.0 * sample_gaussian(set.dim(), rng);
      const OracleResult o = project_oracle(set, v);
      converged = converged && o.converged;
      worst_oracle = std::max(worst_oracle, (project(set, v).point - o.point).lpNorm<Eigen::Infinity>());
    }
    for (std::uint64_t i = 0; i < 10000; ++i) {
      Rng rng = make_rng(106, i);
      const Vector a = sample_gaussian(set.dim(), rng);
      const Vector b = a + sample_gaussian(set.dim(), rng) * (i % 2 == 0 ? 1.0 : 1e-3);
      const double expansion = (project(set, a).point - project(set, b).point).norm() - (a - b).norm();
      worst_expansion = std::max(worst_expansion, expansion);
    }
  }
  return {converged && worst_oracle <= kOracleTol && worst_expansion <= kNonexpansiveTol,
          "max deviation from oracle " + fmt(worst_oracle) + " on 6 sets x 1000 inputs, max expansion " +
              fmt(worst_expansion) + " on 6 sets x 10000 pairs"};
}

Outcome isotonicity() {
  const ConeSpec l = ConeSpec::mesoc(2, 2);
  const ConeSpec k = ConeSpec::cylinder(2, ConeSpec::monotone_nonneg(2));
  const PointMap proj = [k](const PartitionedVector& z) {
    return PartitionedVector::split(project(k, z.flat()).point, 2);
  };
  const IsotonicityReport cyl = check_isotone(proj, l, 10000, 107);
  const StructuredMap map = example::two_block_map();
  const PointMap i_minus_f = [&map](const PartitionedVector& z) { return map.identity_minus(z); };
  const IsotonicityReport on_l = check_isotone(i_minus_f, l, 10000, 108);
  const std::vector<OrderedPairSample> witness{example::esoc_only_pair()};
  const IsotonicityReport on_esoc = check_isotone(i_minus_f, ConeSpec::esoc(2, 2), 0, 109, witness);
  const bool pass = cyl.isotone_on_samples() && on_l.isotone_on_samples() && !on_esoc.violations.empty();
  return {pass, "cylinder projection " + std::to_string(cyl.violations.size()) + " violations / " +
                    std::to_string(cyl.checked) + ", I-F on MESOC " + std::to_string(on_l.violations.size()) + " / " +
                    std::to_string(on_l.checked) + ", I-F on ESOC with witness " +
                    std::to_string(on_esoc.violations.size()) + " violation(s)"};
}

Outcome reducibility() {
  const int p = 3;
  const int q = 2;
  const ConeSpec l = ConeSpec::mesoc(p, q);
  double worst_ulps = 0.0;
  bool parts_ok = true;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    Rng rng = make_rng(110, i);
    const PartitionedVector z = PartitionedVector::split(sample_cone_point(l, rng), p);
    const Decomposition d = decompose_mesoc(p, q, z);
    const double scale = std::max(1.0, z.flat().lpNorm<Eigen::Infinity>()) * 2.220446049250313e-16;
    worst_ulps = std::max(worst_ulps, (d.reconstruct() - z).flat().lpNorm<Eigen::Infinity>() / scale);
    parts_ok = parts_ok && in_l1(d.l1_part()) && in_l2(d.l2_part());
  }
  const bool spans = reducibility_span_check(2, 2).trivial_intersection() &&
                     reducibility_span_check(3, 2).trivial_intersection();
  return {worst_ulps <= kUlps && parts_ok && spans,
          "max round-trip error " + fmt(worst_ulps) + " ulp, parts in L1/L2: " + (parts_ok ? "yes" : "no") +
              ", span intersection trivial for (2,2),(3,2): " + (spans ? "yes" : "no")};
}

Outcome complementarity_equivalence() {
  std::size_t agree = 0;
  std::size_t total = 0;
  std::size_t valid_in_set = 0;
  for (const ConeSpec& cone : {ConeSpec::mesoc(2, 2), ConeSpec::mesoc(3, 2)}) {
    for (std::uint64_t i = 0; i < 10000; ++i) {
      for (int perturbed = 0; perturbed < 2; ++perturbed) {
        Rng rng = make_rng(111, i);
        const ComplementarityPairSample s = random_complementarity_pair(cone, rng);
        PartitionedVector z = PartitionedVector::split(s.primal, cone.p());
        PartitionedVector w = PartitionedVector::split(s.dual, cone.p());
        if (perturbed) {
          Rng noise = make_rng(112, i);
          z = z + PartitionedVector::split(1e-4 * sample_gaussian(cone.dim(), noise), cone.p());
          w = w + PartitionedVector::split(1e-4 * sample_gaussian(cone.dim(), noise), cone.p());
        }
        const bool structured = in_complementarity_set(cone, {z, w, {}}).in_set;
        const bool direct = in_complementarity_set_direct(cone, z.flat(), w.flat());
        agree += structured == direct ? 1 : 0;
        if (!perturbed && direct) ++valid_in_set;
        ++total;
      }
    }
  }
  return {agree == total && valid_in_set == total / 2,
          std::to_string(agree) + " / " + std::to_string(total) + " agree, " + std::to_string(valid_in_set) +
              " valid pairs recognised"};
}

std::string single_leading_entry_ranks() {
  std::ostringstream out;
  for (int q = 1; q <= 3; ++q) {
    const int numeric = lyapunov_rank_numeric(ConeSpec::mesoc(1, q), 400, 113).rank;
    out << "MESOC(1," << q << ") numeric " << numeric << " vs p+q(q+1)/2 = " << 1 + q * (q + 1) / 2 << "; ";
  }
  return out.str();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"axis-face solution reproduced by Picard iteration", axis_face_reproduction},
      {"initial map data at the origin", initial_data},
      {"Omega witness (30,12,4,3)", omega_witness},
      {"linear recurrence, spectral radius and 2x2 solve", linear_recurrence},
      {"diagonal-face point verifies as a solution", diagonal_solution},
      {"MESOC Lyapunov rank p+q(q+1)/2", lyapunov_rank},
      {"monotone nonnegative cone Lyapunov rank p", monotone_nonneg_rank},
      {"duality and inequality chain on 1e5 samples", duality},
      {"projections match oracle and are nonexpansive", projections},
      {"isotonicity of cylinder projection and I-F", isotonicity},
      {"reducible decomposition", reducibility},
      {"structured vs direct complementarity test", complementarity_equivalence},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] criterion %2zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::printf("[INFO] p = 1 Lyapunov rank: %s\n", single_leading_entry_ranks().c_str());
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
