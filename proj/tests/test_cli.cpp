#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "monge/cli/config.hpp"
#include "monge/quadrature.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("monge_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path file(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  CliRun run(const std::string& args) {
    const auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = std::string("\"") + MONGE_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  json run_json(const std::string& args) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return json::parse(r.out);
  }

  json run_config(const std::string& command, const std::string& config, const std::string& extra = "") {
    const auto p = file("config.json", config);
    return run_json(command + " --config \"" + p.string() + "\" " + extra);
  }

  fs::path dir_;
};

// Everything before the timing block, byte for byte.
std::string without_timing(const std::string& text) { return text.substr(0, text.find("\"timing\"")); }

TEST_F(CliTest, EllipticValues) {
  const auto a = run_json("elliptic --kind F --beta 0.7 --k 0");
  EXPECT_EQ(a["results"]["value"].get<double>(), 0.7);
  const auto b = run_json("elliptic --kind E --beta 0 --k 0.5");
  EXPECT_EQ(b["results"]["value"].get<double>(), 0.0);

  const double k = 1 / std::sqrt(2.0);
  const double oracle =
      monge::quad_adaptive([k](double th) { return 1 / std::sqrt(1 - k * k * std::sin(th) * std::sin(th)); }, 0.0,
                           std::numbers::pi / 2, 1e-13)
          .value;
  const auto c = run_json("elliptic --kind F --beta 1.5707963267948966 --k 0.70710678118654757");
  EXPECT_NEAR(c["results"]["value"].get<double>(), oracle, 1e-12);
  EXPECT_EQ(c["tool_version"], "0.1.0");
  EXPECT_TRUE(c.contains("config_echo"));
  EXPECT_TRUE(c["timing"].contains("elapsed_ms"));
}

TEST_F(CliTest, FloatsUseSeventeenDigits) {
  const auto r = run("elliptic --kind F --beta 0.7 --k 0");
  EXPECT_NE(r.out.find("0.69999999999999996"), std::string::npos);
}

TEST_F(CliTest, DomainErrorExitsNonzeroWithOneLine) {
  const auto r = run("elliptic --kind F --beta 0.5 --k 1.5");
  EXPECT_NE(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST_F(CliTest, ResidualFairlieFiniteDifference) {
  const auto j = run_config("residual", R"({
    "solution": {"name": "fairlie", "a": 1},
    "grid": {"x": [0, 1], "t": [0, 0.5], "nx": 11, "nt": 11},
    "scheme": {"mode": "finite_difference", "order": 4, "h": 1e-4}})");
  const auto& s = j["results"]["summary"];
  EXPECT_LE(s["sup_abs_residual"].get<double>(), 1e-8);
  EXPECT_EQ(s["valid_points"], 121);
  // Row order is t-major, then x.
  const auto& rows = j["results"]["rows"];
  EXPECT_EQ(rows[1]["t"].get<double>(), 0.0);
  EXPECT_EQ(rows[11]["t"].get<double>(), 0.05);
}

TEST_F(CliTest, ResidualZeroAndLinear) {
  const auto z = run_config("residual", R"({"solution": {"name": "zero"}})");
  EXPECT_EQ(z["results"]["summary"]["sup_abs_residual"].get<double>(), 0.0);
  const auto l = run_config("residual", R"({"solution": {"name": "linear-x"}, "grid": {"x": [-0.5, 0.75]}})");
  EXPECT_EQ(l["results"]["summary"]["sup_abs_residual"].get<double>(), 0.75);
}

TEST_F(CliTest, ResidualEntirelyInvalidGridFails) {
  const auto p = file("c.json", R"({"solution": {"name": "hyperbola"}, "grid": {"t": [0, 0], "nt": 1}})");
  const auto r = run("residual --config \"" + p.string() + "\"");
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("valid domain"), std::string::npos);
}

TEST_F(CliTest, ResidualCsv) {
  const auto p = file("c.json", R"({"solution": {"name": "zero"}, "grid": {"nx": 2, "nt": 2}})");
  const auto r = run("residual --format csv --config \"" + p.string() + "\"");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x,t,lambda,residual\n0,0,0,0\n1,0,0,0\n0,1,0,0\n1,1,0,0\n");
}

TEST_F(CliTest, SolveExamples) {
  const auto a = run_config("solve", R"({
    "solution": {"name": "whitham", "profile": {"family": "affine", "a": 1, "b": 1}},
    "grid": {"x": [0.5, 0.5], "t": [0.5, 0.5], "nx": 1, "nt": 1}})");
  ASSERT_EQ(a["results"]["points"][0]["roots"].size(), 1u);
  EXPECT_NEAR(a["results"]["points"][0]["roots"][0].get<double>(), 3.0, 1e-12);
  EXPECT_NEAR(a["results"]["summary"]["breaking_time"]["time"].get<double>(), 1.0, 1e-12);

  const auto z = run_config("solve", R"({
    "solution": {"name": "whitham", "profile": {"family": "constant", "value": 0}}})");
  for (const auto& p : z["results"]["points"]) EXPECT_EQ(p["roots"], json::array({0.0}));
  EXPECT_TRUE(z["results"]["summary"]["breaking_time"].is_null());

  const auto t = run_config("solve", R"({
    "solution": {"name": "whitham", "profile": {"family": "tanh", "amplitude": 1, "scale": 1}},
    "grid": {"x": [0, 0], "t": [2, 2], "nx": 1, "nt": 1}})");
  EXPECT_EQ(t["results"]["points"][0]["roots"].size(), 3u);
}

TEST_F(CliTest, BreakingTime) {
  const auto j = run_config("breaking-time", R"({
    "solution": {"name": "whitham", "profile": {"family": "tanh", "amplitude": 1, "scale": 1}}})");
  EXPECT_NEAR(j["results"]["breaking_time"]["time"].get<double>(), 1.0, 1e-9);
}

TEST_F(CliTest, AuditAllOrderAndExitCodes) {
  const auto r = run("audit");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  const std::vector<std::string> expected = {"antiderivative-first", "antiderivative-second", "gradient-product",
                                             "mixed-partials",       "separability-a12",      "separability-a14",
                                             "plus-branch"};
  const auto& reports = j["results"]["reports"];
  ASSERT_EQ(reports.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(reports[i]["audit_name"], expected[i]);
  bool leznov_minus = false;
  for (const auto& s : j["results"]["sign_conventions"]) {
    if (s["solution"] == "leznov") leznov_minus = s["satisfied_sign"] == -1;
  }
  EXPECT_TRUE(leznov_minus);

  EXPECT_EQ(run("audit all --fail-on-violation").code, 1);
  EXPECT_EQ(run("audit antiderivative-second --fail-on-violation").code, 0);
}

TEST_F(CliTest, AuditSingleNames) {
  const auto z = run_config("audit", R"({"solution": {"name": "zero"}, "audit": {"name": "mixed-partials"}})");
  ASSERT_EQ(z["results"]["reports"].size(), 1u);
  EXPECT_EQ(z["results"]["reports"][0]["verdict"], "consistent");
  EXPECT_FALSE(z["results"].contains("sign_conventions"));

  const auto a = run_json("audit antiderivative-first");
  const auto& rep = a["results"]["reports"][0];
  EXPECT_NEAR(rep["fitted_constants"]["c_star"]["re"].get<double>(), 1.4069968263170489, 1e-12);
  EXPECT_EQ(rep["metrics"]["coefficient_match"].get<double>(), 0.0);
  EXPECT_EQ(rep["verdict"], "violated");

  EXPECT_NE(run("audit nonsense").code, 0);
}

TEST_F(CliTest, StrictConfigNamesUnknownKey) {
  auto p = file("c.json", R"({"solution": {"name": "zero"}, "gird": {}})");
  auto r = run("residual --config \"" + p.string() + "\"");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'gird'"), std::string::npos) << r.err;

  p = file("c2.json", R"({"audit": {"plus_branch": {"n_step": 300}}})");
  r = run("audit --config \"" + p.string() + "\"");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'audit.plus_branch.n_step'"), std::string::npos) << r.err;

  p = file("c3.json", R"({"solution": {"name": "whitham", "profile": {"family": "tanh", "amplitud": 1}}})");
  r = run("solve --config \"" + p.string() + "\"");
  EXPECT_NE(r.err.find("'solution.profile.amplitud'"), std::string::npos) << r.err;
}

TEST_F(CliTest, ConfigValidationAndMismatch) {
  auto p = file("c.json", R"({"audit": {"tolerance": 0}})");
  EXPECT_EQ(run("audit --config \"" + p.string() + "\"").code, 2);
  p = file("c2.json", R"({"command": "solve"})");
  EXPECT_EQ(run("audit --config \"" + p.string() + "\"").code, 2);
  p = file("c3.json", "{not json");
  EXPECT_EQ(run("audit --config \"" + p.string() + "\"").code, 2);
}

TEST_F(CliTest, DeterministicAuditOutput) {
  const auto a = run("audit all");
  const auto b = run("audit all");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(without_timing(a.out), without_timing(b.out));
  EXPECT_GT(without_timing(a.out).size(), 1000u);
}

TEST_F(CliTest, ConfigEchoRoundTrip) {
  for (const std::string cmd : {"audit", "residual", "solve"}) {
    std::string config = R"({"audit": {"antiderivative": {"n": 17}}})";
    if (cmd != "audit") {
      config = R"({"solution": {"name": "whitham", "profile": {"family": "polynomial", "coeffs": [0.1, 0.5, -0.2]}},
                   "grid": {"x": [-1, 1], "t": [0, 0.7], "nx": 5, "nt": 4},
                   "scheme": {"mode": "finite_difference", "order": 2, "h": 1e-3}})";
    }
    const auto first = run_config(cmd, config);
    const auto echo = file("echo.json", first["config_echo"].dump());
    const auto second = run_json(cmd + " --config \"" + echo.string() + "\"");
    EXPECT_EQ(first["results"], second["results"]) << cmd;
    EXPECT_EQ(first["config_echo"], second["config_echo"]) << cmd;
  }
}

TEST_F(CliTest, PlotDataAffine) {
  const auto out = dir_ / "plots";
  const auto j = run_config("plot-data", R"({
    "solution": {"name": "whitham", "profile": {"family": "affine", "a": 0.5, "b": 1}},
    "plot": {"t_slices": [0, 0.5], "x": [-1, 1], "nx": 9}})",
                            "--out \"" + out.string() + "\"");
  const auto& rows = j["results"]["profiles"];
  ASSERT_EQ(rows.size(), 18u);
  for (const auto& r : rows) {
    const double x = r["x"], t = r["t"];
    EXPECT_EQ(r["branch"], 0);
    EXPECT_NEAR(r["lambda"].get<double>(), (0.5 + x) / (1 - t), 1e-12);
  }
  const auto csv = slurp(out / "profiles.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,x,branch,lambda");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 19);
  const auto chars = slurp(out / "characteristics.csv");
  EXPECT_EQ(chars.substr(0, chars.find('\n')), "xi,t,x");
  // x = ξ − G(ξ)t along each characteristic.
  for (const auto& c : j["results"]["characteristics"]) {
    const double xi = c["xi"], t = c["t"];
    EXPECT_NEAR(c["x"].get<double>(), xi - (0.5 + xi) * t, 1e-15);
  }
}

TEST_F(CliTest, PlotDataZeroAndTanhBranches) {
  const auto z = run_config("plot-data", R"({
    "solution": {"name": "whitham", "profile": {"family": "constant", "value": 0}}})");
  for (const auto& r : z["results"]["profiles"]) EXPECT_EQ(r["lambda"].get<double>(), 0.0);

  const auto t = run_config("plot-data", R"({
    "solution": {"name": "whitham", "profile": {"family": "tanh", "amplitude": 1, "scale": 1}},
    "plot": {"t_slices": [2], "x": [-0.1, 0.1], "nx": 3}})");
  std::set<int> branches_at_zero;
  for (const auto& r : t["results"]["profiles"]) {
    if (r["x"].get<double>() == 0.0) branches_at_zero.insert(r["branch"].get<int>());
  }
  EXPECT_EQ(branches_at_zero, (std::set<int>{0, 1, 2}));
}

TEST_F(CliTest, PlainFormatAndOutFile) {
  const auto target = dir_ / "result.txt";
  const auto r = run("audit antiderivative-second --format plain --out \"" + target.string() + "\"");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(slurp(target).find("antiderivative-second: consistent"), std::string::npos);
}

// In-process checks of the config layer.
TEST(RunConfig, DefaultsRoundTrip) {
  monge::cli::RunConfig c;
  c.command = "audit";
  const auto echo = c.to_json();
  const auto back = monge::cli::RunConfig::parse(echo);
  EXPECT_EQ(back.to_json(), echo);
}

TEST(RunConfig, RejectsWrongTypes) {
  using monge::cli::Json;
  EXPECT_THROW(monge::cli::RunConfig::parse(Json::parse(R"({"grid": {"nx": 1.5}})")), monge::cli::ConfigError);
  EXPECT_THROW(monge::cli::RunConfig::parse(Json::parse(R"({"grid": {"nx": 0}})")), monge::cli::ConfigError);
  EXPECT_THROW(monge::cli::RunConfig::parse(Json::parse(R"({"scheme": {"order": 3}})")), monge::cli::ConfigError);
  EXPECT_THROW(monge::cli::RunConfig::parse(Json::parse(R"([1, 2])")), monge::cli::ConfigError);
  EXPECT_NO_THROW(monge::cli::RunConfig::parse(Json::parse(R"({"solution": null, "grid": null})")));
}

TEST(RunConfig, DocumentedSamplesParse) {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(MONGE_DOCS_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    EXPECT_NO_THROW(monge::cli::RunConfig::load(entry.path().string())) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 4);
}

}  // namespace
