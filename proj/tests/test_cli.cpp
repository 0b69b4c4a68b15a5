#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "mesoc/cli/commands.hpp"
#include "mesoc/micp.hpp"
#include "mesoc/two_block_example.hpp"
#include "oracles.hpp"

namespace mesoc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mesoc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  std::string write(const std::string& name, const json& j) { return write(name, j.dump()); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
  }

  static json problem(const json& cone, const std::string& command, const json& payload) {
    return json{{"version", 1}, {"cone", cone}, {"command", command}, {"payload", payload}};
  }

  static std::string shipped() { return std::string(MESOC_SOURCE_DIR) + "/problems/mixed_example_2x2.json"; }

  fs::path dir_;
};

const json kMesoc22 = {{"type", "MESOC"}, {"p", 2}, {"q", 2}};
const json kCylinder = {{"type", "CYLINDER"}, {"p", 2}, {"inner", {{"type", "MONOTONE_NONNEG"}, {"n", 2}}}};

json two_block_map_json() {
  json shipped_file;
  std::ifstream(std::string(MESOC_SOURCE_DIR) + "/problems/mixed_example_2x2.json") >> shipped_file;
  return shipped_file["payload"]["map"];
}

TEST_F(CliTest, ContainsMember) {
  const auto file = write("c.json", problem(kMesoc22, "contains", {{"point", {{"x", {2, 1}}, {"u", {"1/3", "1/6"}}}}}));
  const RunResult r = run_cli({"contains", file});
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = json::parse(r.out);
  EXPECT_TRUE(rep["result"]["member"].get<bool>());
  EXPECT_EQ(rep["result"]["slacks"].size(), 2u);
  EXPECT_EQ(rep["exit_code"], 0);
}

TEST_F(CliTest, ContainsZeroAndNonMember) {
  auto r = run_cli({"contains", write("z.json", problem(kMesoc22, "contains", {{"point", {0, 0, 0, 0}}}))});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out)["result"]["member"].get<bool>());
  r = run_cli({"contains", write("n.json", problem(kMesoc22, "contains", {{"point", {1, 2, 0, 0}}}))});
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(json::parse(r.out)["result"]["member"].get<bool>());
}

TEST_F(CliTest, ParseErrors) {
  EXPECT_EQ(run_cli({"contains", write("bad.json", std::string("{\"version\": 1, \"cone\": "))}).code, exit_parse);
  EXPECT_EQ(run_cli({"contains", path("missing.json")}).code, exit_parse);
  EXPECT_EQ(run_cli({"contains", write("k.json", problem(kMesoc22, "contains", json::object()))}).code, exit_parse);
  json extra = problem(kMesoc22, "contains", {{"point", {0, 0, 0, 0}}});
  extra["extra"] = 1;
  EXPECT_EQ(run_cli({"contains", write("e.json", extra)}).code, exit_parse);
  EXPECT_EQ(run_cli({"solve", write("m.json", problem(kMesoc22, "contains", {{"point", {0, 0, 0, 0}}}))}).code,
            exit_parse);
  EXPECT_EQ(run_cli({"contains", write("r.json", problem(kMesoc22, "contains", {{"point", {"1/0", 0, 0, 0}}}))}).code,
            exit_parse);
  EXPECT_EQ(run_cli({"contains", write("t.json", problem({{"type", "CUBE"}}, "contains", {{"point", {0}}}))}).code,
            exit_parse);
  EXPECT_EQ(run_cli({"nonsense"}).code, exit_parse);
  EXPECT_EQ(run_cli({"contains", shipped(), "--output", "xml"}).code, exit_parse);
}

TEST_F(CliTest, DimensionErrors) {
  EXPECT_EQ(run_cli({"contains", write("d.json", problem(kMesoc22, "contains", {{"point", {0, 0, 0}}}))}).code,
            exit_dimension);
  EXPECT_EQ(run_cli({"contains", write("s.json", problem(kMesoc22, "contains",
                                                          {{"point", {{"x", {0, 0, 0}}, {"u", {0}}}}}))})
                .code,
            exit_dimension);
  const json zero_dim = {{"type", "MESOC"}, {"p", 0}, {"q", 2}};
  EXPECT_EQ(run_cli({"contains", write("z.json", problem(zero_dim, "contains", {{"point", {0, 0}}}))}).code,
            exit_dimension);
}

TEST_F(CliTest, SolveShippedProblemWritesTrace) {
  const std::string trace = path("trace.csv");
  const RunResult r = run_cli({"solve", shipped(), "--trace", trace});
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = json::parse(r.out);
  EXPECT_EQ(rep["result"]["status"], "converged");
  EXPECT_TRUE(rep["result"]["certificate"]["passed"].get<bool>());
  const Vector expected = test::two_block_interior_zero().flat();
  const auto& sol = rep["result"]["solution"];
  const Vector got{{sol["x"][0].get<double>(), sol["x"][1].get<double>(), sol["u"][0].get<double>(),
                    sol["u"][1].get<double>()}};
  EXPECT_LE((got - expected).lpNorm<Eigen::Infinity>(), 1e-11);

  std::ifstream in(trace);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "iter,x_1,x_2,u_1,u_2,step_norm,order_ok");
  std::size_t rows = 0;
  std::string line;
  std::string last;
  while (std::getline(in, line)) {
    ++rows;
    last = line;
  }
  EXPECT_EQ(rows, rep["result"]["iterations"].get<std::size_t>() + 1);
  EXPECT_EQ(last.back(), '1');
}

TEST_F(CliTest, SolutionNumbersRoundTrip) {
  const RunResult r = run_cli({"solve", shipped()});
  ASSERT_EQ(r.code, 0);
  const SolveResult direct = picard_solve(example::two_block_instance());
  const json rep = json::parse(r.out);
  const json& sol = rep["result"]["solution"];
  EXPECT_EQ(sol["x"][0].get<double>(), direct.solution.x()(0));
  EXPECT_EQ(sol["x"][1].get<double>(), direct.solution.x()(1));
  EXPECT_EQ(sol["u"][0].get<double>(), direct.solution.u()(0));
  EXPECT_EQ(sol["u"][1].get<double>(), direct.solution.u()(1));
}

TEST_F(CliTest, SolveIdentityAndDivergentInstances) {
  const json identity_map = {{"form", "AFFINE"},
                             {"M", {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}},
                             {"c", {0, 0, 0, 0}}};
  auto r = run_cli({"solve", write("id.json", problem(kCylinder, "solve", {{"map", identity_map}}))});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["result"]["iterations"], 1);

  const json cyl1 = {{"type", "CYLINDER"}, {"p", 1}, {"inner", {{"type", "NONNEG_ORTHANT"}, {"n", 1}}}};
  const json expanding = {{"form", "AFFINE"}, {"M", {{-1, 0}, {0, 0.5}}}, {"c", {1, 0}}};
  const std::string trace = path("div.csv");
  r = run_cli({"solve", write("div.json", problem(cyl1, "solve", {{"map", expanding}})), "--trace", trace});
  EXPECT_EQ(r.code, exit_no_convergence);
  EXPECT_EQ(json::parse(r.out)["result"]["status"], "diverged");
  EXPECT_TRUE(fs::exists(trace));

  r = run_cli({"solve", shipped(), "--max-iter", "3"});
  EXPECT_EQ(r.code, exit_no_convergence);
  EXPECT_EQ(json::parse(r.out)["result"]["status"], "max_iter");

  EXPECT_EQ(run_cli({"solve", write("nc.json", problem(kMesoc22, "solve", {{"map", identity_map}}))}).code,
            exit_dimension);
}

TEST_F(CliTest, LyapRank) {
  auto r = run_cli({"lyap-rank", write("l.json", problem(kMesoc22, "lyap-rank", json::object()))});
  ASSERT_EQ(r.code, 0) << r.err;
  json rep = json::parse(r.out);
  EXPECT_EQ(rep["result"]["formula"], 5);
  EXPECT_EQ(rep["result"]["numeric_rank"], 5);
  EXPECT_EQ(rep["result"]["basis_count"], 5);
  EXPECT_TRUE(rep["result"]["agree"].get<bool>());

  r = run_cli({"lyap-rank", write("o.json", problem({{"type", "NONNEG_ORTHANT"}, {"n", 4}}, "lyap-rank", json::object()))});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["result"]["numeric_rank"], 4);

  r = run_cli({"lyap-rank", write("m.json", problem({{"type", "MONOTONE_NONNEG"}, {"n", 3}}, "lyap-rank", json::object()))});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["result"]["numeric_rank"], 3);

  r = run_cli({"lyap-rank", write("e.json", problem({{"type", "ESOC"}, {"p", 2}, {"q", 2}}, "lyap-rank", json::object()))});
  EXPECT_EQ(r.code, exit_dimension);
}

TEST_F(CliTest, CheckVerify) {
  json payload = {{"kind", "verify"}, {"map", two_block_map_json()}};
  const Vector zero = test::two_block_interior_zero().flat();
  payload["point"] = {zero(0), zero(1), zero(2), zero(3)};
  auto r = run_cli({"check", "verify", write("v.json", problem(kCylinder, "check", payload))});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(json::parse(r.out)["result"]["passed"].get<bool>());

  payload["point"] = {"992/691", "496/691", "212/691", 0};
  r = run_cli({"check", "verify", write("f.json", problem(kCylinder, "check", payload))});
  EXPECT_EQ(r.code, exit_verification);

  payload["point"] = {30, 12, 4, 3};
  r = run_cli({"check", "verify", write("o.json", problem(kCylinder, "check", payload))});
  EXPECT_EQ(r.code, exit_verification);
  const json rep = json::parse(r.out);
  EXPECT_TRUE(rep["result"]["in_omega"].get<bool>());
  EXPECT_NEAR(rep["result"]["G"][0].get<double>(), 15.0, 1e-12);
}

TEST_F(CliTest, CheckProjectFeasiblePointIsFixed) {
  const json payload = {{"point", {{"x", {5, -7}}, {"u", {2, 1}}}}};
  const RunResult r = run_cli({"check", "project", write("p.json", problem(kCylinder, "check", payload))});
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = json::parse(r.out);
  EXPECT_EQ(rep["result"]["projection"]["x"], json({5.0, -7.0}));
  EXPECT_EQ(rep["result"]["projection"]["u"], json({2.0, 1.0}));
  EXPECT_EQ(rep["result"]["distance"], 0.0);
  EXPECT_EQ(run_cli({"check", "project", write("u.json", problem(kMesoc22, "check", {{"point", {0, 0, 0, 0}}}))}).code,
            exit_dimension);
}

TEST_F(CliTest, CheckIsotoneFindsEsocWitness) {
  const json esoc = {{"type", "ESOC"}, {"p", 2}, {"q", 2}};
  const json payload = {{"kind", "isotone"},
                        {"map", two_block_map_json()},
                        {"pairs", {{{"lo", {0, 0, 2, 0}}, {"hi", {1, 2, 1, 0}}}}}};
  auto r = run_cli({"check", "isotone", write("i.json", problem(esoc, "check", payload)), "--samples", "50"});
  EXPECT_EQ(r.code, exit_verification);
  const json rep = json::parse(r.out);
  ASSERT_GE(rep["result"]["violation_count"].get<int>(), 1);
  EXPECT_EQ(rep["result"]["violations"][0]["index"], 0);

  r = run_cli({"check", "isotone", write("m.json", problem(kMesoc22, "check", payload)), "--samples", "2000"});
  EXPECT_EQ(r.code, exit_verification) << "witness is not MESOC-ordered";

  const json plain = {{"kind", "isotone"}, {"map", two_block_map_json()}};
  r = run_cli({"check", "isotone", write("p.json", problem(kMesoc22, "check", plain)), "--samples", "2000"});
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST_F(CliTest, CheckIsotoneProjection) {
  const json payload = {{"operator", "projection"}, {"set", kCylinder}};
  const RunResult r = run_cli({"check", "isotone", write("p.json", problem(kMesoc22, "check", payload))});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST_F(CliTest, CheckComplementarityAndDecompose) {
  json payload = {{"primal", {{"x", {1, 1}}, {"u", {0.6, 0.8}}}}, {"dual", {{"x", {1, 0}}, {"u", {-0.6, -0.8}}}}};
  auto r = run_cli({"check", "complementarity", write("c.json", problem(kMesoc22, "check", payload))});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["result"]["structured"].get<bool>());

  payload["dual"] = {2, 0, -0.6, -0.8};
  r = run_cli({"check", "complementarity", write("b.json", problem(kMesoc22, "check", payload))});
  EXPECT_EQ(r.code, exit_verification);

  const json mesoc31 = {{"type", "MESOC"}, {"p", 3}, {"q", 1}};
  r = run_cli({"check", "decompose", write("d.json", problem(mesoc31, "check", {{"point", {3, 2, 1, 0.5}}}))});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["result"]["a"], json({1.0, 1.0, 1.0}));

  r = run_cli({"check", "decompose", write("o.json", problem(mesoc31, "check", {{"point", {1, 2, 1, 0.5}}}))});
  EXPECT_EQ(r.code, exit_verification);

  r = run_cli({"check", "decompose", write("k.json", problem(mesoc31, "check", {{"kind", "project"}, {"point", {3, 2, 1, 0}}}))});
  EXPECT_EQ(r.code, exit_parse);
}

TEST_F(CliTest, ReportsAreDeterministic) {
  const json esoc = {{"type", "ESOC"}, {"p", 2}, {"q", 2}};
  const std::string file = write("i.json", problem(esoc, "check", {{"map", two_block_map_json()}}));
  const RunResult a = run_cli({"check", "isotone", file, "--samples", "3000", "--seed", "17"});
  ::setenv("MESOC_KIT_THREADS", "1", 1);
  const RunResult b = run_cli({"check", "isotone", file, "--samples", "3000", "--seed", "17"});
  ::unsetenv("MESOC_KIT_THREADS");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run_cli({"solve", shipped()}).out, run_cli({"solve", shipped()}).out);
}

TEST_F(CliTest, TextOutput) {
  const RunResult r = run_cli({"solve", shipped(), "--output", "text"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("result.status: converged\n"), std::string::npos);
  EXPECT_NE(r.out.find("exit_code: 0\n"), std::string::npos);
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = MESOC_KIT_PATH;
  const auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("solve " + shipped()), 0);
  EXPECT_EQ(status("solve " + shipped() + " --max-iter 2"), 4);
  EXPECT_EQ(status("contains " + write("bad.json", std::string("not json"))), 2);
  EXPECT_EQ(status("--help"), 0);
}

}  // namespace
}  // namespace mesoc::cli
