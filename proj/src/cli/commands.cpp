#include "mesoc/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "mesoc/cli/json_io.hpp"
#include "mesoc/complementarity.hpp"
#include "mesoc/decomposition.hpp"
#include "mesoc/lyapunov.hpp"
#include "mesoc/micp.hpp"
#include "mesoc/order.hpp"
#include "mesoc/projection.hpp"

namespace mesoc::cli {
namespace {

constexpr double default_tol = 1e-9;
constexpr std::size_t default_samples = 1000;
constexpr std::uint64_t default_seed = 0;
constexpr std::size_t max_listed_violations = 10;

struct Options {
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::string trace;
  std::string output = "json";
  std::string file;
};

struct Outcome {
  Json result;
  int exit_code = exit_ok;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double tol_of(const Options& opts) { return opts.tol.value_or(default_tol); }

Tolerances tolerances_of(const Options& opts) {
  Tolerances tol;
  tol.membership = tol_of(opts);
  tol.orthogonality = tol_of(opts);
  tol.validate();
  return tol;
}

std::uint64_t seed_of(const Options& opts, const Json& payload) {
  if (opts.seed) return *opts.seed;
  if (payload.contains("seed")) {
    if (!payload.at("seed").is_number_unsigned()) throw ParseError("payload.seed: expected a nonnegative integer");
    return payload.at("seed").get<std::uint64_t>();
  }
  return default_seed;
}

std::size_t samples_of(const Options& opts, const Json& payload, std::size_t fallback) {
  if (opts.samples) return *opts.samples;
  if (payload.contains("samples")) {
    if (!payload.at("samples").is_number_unsigned()) throw ParseError("payload.samples: expected a nonnegative integer");
    return payload.at("samples").get<std::size_t>();
  }
  return fallback;
}

const Json& payload_key(const Json& payload, const char* key) {
  if (!payload.contains(key)) throw ParseError(std::string("payload: missing key \"") + key + "\"");
  return payload.at(key);
}

PartitionedVector payload_point(const Json& payload, const char* key, const ConeSpec& cone) {
  return parse_point(payload_key(payload, key), cone.p(), cone.q(), std::string("payload.") + key);
}

void require_cylinder(const ConeSpec& cone) {
  if (cone.kind() != ConeKind::Cylinder) {
    throw UnsupportedError("this command needs a CYLINDER cone, got " + cone.describe());
  }
}

MicpInstance instance_from(const ConeSpec& cone, const Json& payload) {
  require_cylinder(cone);
  const int p = cone.p();
  const int q = cone.inner().dim();
  MicpInstance instance(cone.inner(), parse_map(payload_key(payload, "map"), p, q));
  if (payload.contains("start")) instance.start = parse_point(payload.at("start"), p, q, "payload.start");
  if (payload.contains("max_iter")) {
    if (!payload.at("max_iter").is_number_unsigned()) throw ParseError("payload.max_iter: expected a nonnegative integer");
    instance.max_iter = payload.at("max_iter").get<std::size_t>();
  }
  if (payload.contains("conv_tol")) instance.conv_tol = parse_number(payload.at("conv_tol"), "payload.conv_tol");
  if (payload.contains("divergence_bound")) {
    instance.divergence_bound = parse_number(payload.at("divergence_bound"), "payload.divergence_bound");
  }
  return instance;
}

Json certificate_to_json(const SolutionCertificate& cert) {
  return Json{{"passed", cert.passed},
              {"G", vector_to_json(cert.g_value)},
              {"H", vector_to_json(cert.h_value)},
              {"g_residual", cert.g_residual},
              {"primal_residual", cert.primal_residual},
              {"dual_residual", cert.dual_residual},
              {"complementarity", cert.complementarity}};
}

void write_trace(const std::string& path, const IterationTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open trace file " + path);
  const auto& first = trace.iterates.front();
  out << "iter";
  for (Eigen::Index i = 1; i <= first.p(); ++i) out << ",x_" << i;
  for (Eigen::Index i = 1; i <= first.q(); ++i) out << ",u_" << i;
  out << ",step_norm,order_ok\n";
  char buf[64];
  const auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ',' << buf;
  };
  for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
    const auto& z = trace.iterates[n];
    out << n;
    for (Eigen::Index i = 0; i < z.p(); ++i) put(z.x()(i));
    for (Eigen::Index i = 0; i < z.q(); ++i) put(z.u()(i));
    // Row n records the step from iterate n-1; iterate 0 is its own predecessor.
    put(n == 0 ? 0.0 : trace.step_norms[n - 1]);
    out << ',' << (n == 0 || trace.order_certificates[n - 1] ? 1 : 0) << '\n';
  }
  if (!out) throw IoError("failed writing trace file " + path);
}

Outcome cmd_contains(const ProblemFile& problem, const Options& opts) {
  const PartitionedVector z = payload_point(problem.payload, "point", problem.cone);
  const Tolerances tol = tolerances_of(opts);
  Json slacks = Json::array();
  for (const auto& s : constraint_slacks(problem.cone, z.flat())) {
    slacks.push_back(Json{{"label", s.label}, {"value", s.value}});
  }
  const double worst = min_slack(problem.cone, z.flat());
  Json result{{"member", contains(problem.cone, z, tol)}, {"slacks", slacks}};
  result["min_slack"] = std::isfinite(worst) ? Json(worst) : Json(nullptr);
  return {result, exit_ok};
}

Outcome cmd_solve(const ProblemFile& problem, const Options& opts) {
  MicpInstance instance = instance_from(problem.cone, problem.payload);
  if (opts.max_iter) instance.max_iter = *opts.max_iter;
  const SolveResult run = picard_solve(instance);
  if (!opts.trace.empty()) write_trace(opts.trace, run.trace);
  const SolutionCertificate cert = verify_solution(instance, run.solution, tol_of(opts));
  Json result{{"status", to_string(run.trace.status)},
              {"iterations", run.trace.steps()},
              {"solution", point_to_json(run.solution)},
              {"final_step_norm", run.trace.step_norms.empty() ? 0.0 : run.trace.step_norms.back()},
              {"all_steps_ordered", run.trace.all_ordered()},
              {"conv_tol", instance.conv_tol},
              {"max_iter", instance.max_iter},
              {"certificate", certificate_to_json(cert)}};
  if (run.trace.status != SolveStatus::converged) return {result, exit_no_convergence};
  return {result, cert.passed ? exit_ok : exit_verification};
}

Outcome cmd_lyap_rank(const ProblemFile& problem, const Options& opts) {
  const ConeSpec& cone = problem.cone;
  std::optional<int> formula;
  std::optional<std::size_t> basis_count;
  switch (cone.kind()) {
    case ConeKind::Mesoc:
      formula = mesoc_lyapunov_rank_formula(cone.p(), cone.q());
      if (cone.q() >= 1) basis_count = lyap_basis_mesoc(cone.p(), cone.q()).size();
      break;
    case ConeKind::MonotoneNonneg:
      formula = cone.dim();
      basis_count = lyap_basis_monotone_nonneg(cone.dim()).size();
      break;
    case ConeKind::NonnegOrthant:
      formula = cone.dim();
      break;
    case ConeKind::Lorentz:
      break;
    default:
      throw UnsupportedError("lyap-rank does not support " + cone.describe());
  }
  const auto m = static_cast<std::size_t>(cone.dim());
  const std::size_t pairs = samples_of(opts, problem.payload, 2 * m * m + 50);
  const std::uint64_t seed = seed_of(opts, problem.payload);
  const LyapunovRankResult numeric = lyapunov_rank_numeric(cone, pairs, seed);
  Json result{{"numeric_rank", numeric.rank}, {"pairs_used", numeric.pairs_used}, {"seed", seed}};
  result["formula"] = formula ? Json(*formula) : Json(nullptr);
  result["basis_count"] = basis_count ? Json(*basis_count) : Json(nullptr);
  bool agree = true;
  if (formula) agree = numeric.rank == *formula;
  if (formula && basis_count) agree = agree && static_cast<int>(*basis_count) == *formula;
  result["agree"] = formula ? Json(agree) : Json(nullptr);
  return {result, agree ? exit_ok : exit_verification};
}

Outcome check_project(const ProblemFile& problem, const Options& opts) {
  const PartitionedVector z = payload_point(problem.payload, "point", problem.cone);
  const ProjectionResult proj = project(problem.cone, z.flat());
  Json blocks = Json::array();
  for (const auto& b : proj.active_blocks) blocks.push_back(Json::array({b.begin, b.end}));
  Json result{{"projection", point_to_json(PartitionedVector::split(proj.point, problem.cone.p()))},
              {"distance", proj.distance},
              {"kkt_residual", projection_kkt_residual(problem.cone, z.flat(), proj.point)},
              {"pooled_blocks", blocks}};
  (void)opts;
  return {result, exit_ok};
}

Outcome check_isotone_cmd(const ProblemFile& problem, const Options& opts) {
  const ConeSpec& order = problem.cone;
  const Json& payload = problem.payload;
  const std::string target = payload.contains("operator") ? payload.at("operator").get<std::string>()
                                                          : std::string("identity_minus_map");
  PointMap map;
  if (target == "identity_minus_map" || target == "map") {
    auto structured = std::make_shared<StructuredMap>(parse_map(payload_key(payload, "map"), order.p(), order.q()));
    if (target == "map") {
      map = [structured](const PartitionedVector& z) { return structured->apply(z); };
    } else {
      map = [structured](const PartitionedVector& z) { return structured->identity_minus(z); };
    }
  } else if (target == "projection") {
    const ConeSpec set = parse_cone(payload_key(payload, "set"));
    if (set.dim() != order.dim()) throw DimensionError("projection set and ordering cone differ in dimension");
    const Eigen::Index p = order.p();
    map = [set, p](const PartitionedVector& z) { return PartitionedVector::split(project(set, z.flat()).point, p); };
  } else {
    throw ParseError("payload.operator: expected identity_minus_map, map or projection");
  }
  std::vector<OrderedPairSample> injected;
  if (payload.contains("pairs")) {
    const Json& pairs = payload.at("pairs");
    if (!pairs.is_array()) throw ParseError("payload.pairs: expected an array");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string where = "payload.pairs[" + std::to_string(i) + "]";
      if (!pairs[i].is_object() || !pairs[i].contains("lo") || !pairs[i].contains("hi")) {
        throw ParseError(where + ": expected {\"lo\", \"hi\"}");
      }
      injected.push_back({parse_point(pairs[i].at("lo"), order.p(), order.q(), where + ".lo"),
                          parse_point(pairs[i].at("hi"), order.p(), order.q(), where + ".hi")});
    }
  }
  const std::size_t samples = samples_of(opts, payload, default_samples);
  const std::uint64_t seed = seed_of(opts, payload);
  const Tolerances tol = tolerances_of(opts);
  const IsotonicityReport report = check_isotone(map, order, samples, seed, injected, tol);
  Json listed = Json::array();
  for (std::size_t i = 0; i < std::min(report.violations.size(), max_listed_violations); ++i) {
    const auto& v = report.violations[i];
    const auto slacks = constraint_slacks(order, v.image_diff.flat());
    listed.push_back(Json{{"index", v.index},
                          {"lo", point_to_json(v.lo)},
                          {"hi", point_to_json(v.hi)},
                          {"image_diff", point_to_json(v.image_diff)},
                          {"failed_inequality", slacks.at(v.failed_inequality).label}});
  }
  Json result{{"operator", target},
              {"isotone_on_samples", report.isotone_on_samples()},
              {"checked", report.checked},
              {"injected", injected.size()},
              {"seed", seed},
              {"violation_count", report.violations.size()},
              {"violations", listed}};
  return {result, report.isotone_on_samples() ? exit_ok : exit_verification};
}

Outcome check_complementarity(const ProblemFile& problem, const Options& opts) {
  const ConeSpec& cone = problem.cone;
  CompPair pair{payload_point(problem.payload, "primal", cone), payload_point(problem.payload, "dual", cone),
                std::nullopt};
  if (problem.payload.contains("lambda")) pair.lambda = parse_number(problem.payload.at("lambda"), "payload.lambda");
  const Tolerances tol = tolerances_of(opts);
  const ComplementarityReport report = in_complementarity_set(cone, pair, tol);
  Json result{{"in_set", report.in_set},
              {"structured", report.structured},
              {"inner_product", report.inner_product},
              {"direct", in_complementarity_set_direct(cone, pair.primal.flat(), pair.dual.flat(), tol)},
              {"failures", report.failures}};
  result["lambda"] = report.lambda ? Json(*report.lambda) : Json(nullptr);
  return {result, report.in_set ? exit_ok : exit_verification};
}

Outcome check_verify(const ProblemFile& problem, const Options& opts) {
  const MicpInstance instance = instance_from(problem.cone, problem.payload);
  const PartitionedVector z =
      parse_point(payload_key(problem.payload, "point"), instance.p(), instance.q(), "payload.point");
  const SolutionCertificate cert = verify_solution(instance, z, tol_of(opts));
  const OmegaGamma og = omega_gamma_membership(instance, z, tolerances_of(opts));
  Json result = certificate_to_json(cert);
  result["in_k_and_l"] = og.in_k_and_l;
  result["in_omega"] = og.in_omega;
  result["in_gamma"] = og.in_gamma;
  return {result, cert.passed ? exit_ok : exit_verification};
}

Outcome check_decompose(const ProblemFile& problem, const Options& opts) {
  const ConeSpec& cone = problem.cone;
  if (cone.kind() != ConeKind::Mesoc) throw UnsupportedError("decompose needs a MESOC cone, got " + cone.describe());
  const PartitionedVector z = payload_point(problem.payload, "point", cone);
  const Tolerances tol = tolerances_of(opts);
  const Decomposition d = decompose_mesoc(cone.p(), cone.q(), z, tol);
  const PartitionedVector l1 = d.l1_part();
  const PartitionedVector l2 = d.l2_part();
  Json result{{"a", vector_to_json(d.a)},
              {"u", vector_to_json(d.u)},
              {"l1_part", point_to_json(l1)},
              {"l2_part", point_to_json(l2)},
              {"l1_member", in_l1(l1, tol)},
              {"l2_member", in_l2(l2, tol)},
              {"reconstruction_error", (d.reconstruct() - z).flat().lpNorm<Eigen::Infinity>()}};
  return {result, exit_ok};
}

void require_command(const ProblemFile& problem, const std::string& command, const std::string& kind = {}) {
  if (problem.command != command) {
    throw ParseError("problem file is for command \"" + problem.command + "\", not \"" + command + "\"");
  }
  if (!kind.empty() && problem.payload.contains("kind")) {
    const Json& k = problem.payload.at("kind");
    if (!k.is_string() || k.get<std::string>() != kind) {
      throw ParseError("payload.kind does not match check subcommand \"" + kind + "\"");
    }
  }
}

Json settings_json(const Options& opts) {
  Json s{{"tol", tol_of(opts)}};
  if (opts.seed) s["seed"] = *opts.seed;
  if (opts.samples) s["samples"] = *opts.samples;
  if (opts.max_iter) s["max_iter"] = *opts.max_iter;
  return s;
}

const char* status_name(int code) {
  switch (code) {
    case exit_ok:
      return "ok";
    case exit_no_convergence:
      return "no_convergence";
    case exit_verification:
      return "verification_failed";
    default:
      return "error";
  }
}

template <class Fn>
int execute(const std::string& name, const std::string& kind, Fn&& fn, const Options& opts, std::ostream& out,
            std::ostream& err) {
  try {
    const ProblemFile problem = load_problem(opts.file);
    require_command(problem, name, kind);
    const Outcome outcome = fn(problem, opts);
    Json report{{"command", kind.empty() ? name : name + " " + kind},
                {"cone", cone_to_json(problem.cone)},
                {"settings", settings_json(opts)},
                {"result", outcome.result},
                {"status", status_name(outcome.exit_code)},
                {"exit_code", outcome.exit_code}};
    if (opts.output == "text") {
      out << to_text(report);
    } else {
      out << report.dump(2) << "\n";
    }
    return outcome.exit_code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const Json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << "\n";
    return exit_dimension;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return exit_dimension;
  } catch (const PreconditionError& e) {
    err << "verification failed: " << e.what() << "\n";
    return exit_verification;
  } catch (const RankNotStabilized& e) {
    err << "no convergence: " << e.what() << "\n";
    return exit_no_convergence;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cone membership, projections, Lyapunov rank and mixed complementarity tools for MESOC", "mesoc_kit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opts;
  app.add_option("--tol", opts.tol, "Tolerance for membership, complementarity and solution checks")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iter", opts.max_iter, "Iteration cap for solve (overrides the problem file)");
  app.add_option("--seed", opts.seed, "Seed for sampling commands");
  app.add_option("--samples", opts.samples, "Sample or pair count for sampling commands");
  app.add_option("--trace", opts.trace, "Write the solve iteration trace as CSV");
  app.add_option("--output", opts.output, "Report format")->check(CLI::IsMember({"json", "text"}));

  std::string selected;
  std::string selected_kind;
  const auto add_command = [&](CLI::App* parent, const std::string& name, const std::string& help,
                               const std::string& command, const std::string& kind) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->add_option("file", opts.file, "Problem file (JSON)")->required();
    sub->fallthrough();
    sub->callback([&selected, &selected_kind, command, kind] {
      selected = command;
      selected_kind = kind;
    });
    return sub;
  };
  add_command(&app, "contains", "Cone membership with per-inequality slacks", "contains", "");
  add_command(&app, "solve", "Picard iteration for a mixed complementarity problem", "solve", "");
  add_command(&app, "lyap-rank", "Closed-form and numeric Lyapunov rank", "lyap-rank", "");
  CLI::App* check = app.add_subcommand("check", "Property checks");
  check->require_subcommand(1);
  check->fallthrough();
  add_command(check, "project", "Metric projection onto the cone", "check", "project");
  add_command(check, "isotone", "Sampled isotonicity test with respect to the cone", "check", "isotone");
  add_command(check, "complementarity", "Membership in the complementarity set", "check", "complementarity");
  add_command(check, "verify", "Certificate for a candidate solution", "check", "verify");
  add_command(check, "decompose", "Split a MESOC point into its two reducible parts", "check", "decompose");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_parse;
  }

  if (selected == "contains") return execute(selected, "", cmd_contains, opts, out, err);
  if (selected == "solve") return execute(selected, "", cmd_solve, opts, out, err);
  if (selected == "lyap-rank") return execute(selected, "", cmd_lyap_rank, opts, out, err);
  if (selected_kind == "project") return execute(selected, selected_kind, check_project, opts, out, err);
  if (selected_kind == "isotone") return execute(selected, selected_kind, check_isotone_cmd, opts, out, err);
  if (selected_kind == "complementarity") {
    return execute(selected, selected_kind, check_complementarity, opts, out, err);
  }
  if (selected_kind == "verify") return execute(selected, selected_kind, check_verify, opts, out, err);
  return execute(selected, selected_kind, check_decompose, opts, out, err);
}

}  // namespace mesoc::cli
