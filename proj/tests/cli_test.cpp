#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "netrel/cli.hpp"

using namespace netrel;

namespace {

const std::string kData = NETREL_DATA_DIR;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(const std::vector<std::string>& args) {
  const auto r = run_cli(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return Json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("netrel_cli_test_" + name);
  std::ofstream(path) << content;
  return path;
}

void expect_metadata(const Json& j) {
  EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
  EXPECT_TRUE(j.contains("seed"));
  EXPECT_TRUE(j.contains("threshold_rule"));
  EXPECT_TRUE(j.contains("M_c"));
}

}  // namespace

TEST(CliExact, K4Example) {
  const auto j = run_json({"exact", "--graph", kData + "/k4.edges", "--p", "0.5"});
  expect_metadata(j);
  EXPECT_DOUBLE_EQ(j["reliability"].get<double>(), 0.59375);
  EXPECT_EQ(j["f_coefficients"], Json::parse("[1,6,15,16,0,0,0]"));
  const auto f = run_json({"exact", "--graph", kData + "/k4.edges", "--p", "0.5", "--method", "factoring"});
  EXPECT_NEAR(f["reliability"].get<double>(), 0.59375, 1e-15);
}

TEST(CliExact, HeterogeneousFromEdgeListRates) {
  const auto j = run_json({"exact", "--graph", kData + "/five_node.edges", "--time", "2"});
  const auto data = read_edge_list(kData + "/five_node.edges");
  std::vector<double> probs;
  for (double r : *data.rates) probs.push_back(std::exp(-2.0 * r));
  EXPECT_NEAR(j["reliability"].get<double>(), reliability_factoring(data.graph, probs), 1e-14);
}

TEST(CliExact, CapExceededIsComputationError) {
  std::string k8;
  for (int u = 0; u < 8; ++u)
    for (int v = u + 1; v < 8; ++v) k8 += std::to_string(u) + " " + std::to_string(v) + "\n";
  const auto path = temp_file("k8.edges", k8);
  const auto r = run_cli({"exact", "--graph", path.string(), "--p", "0.5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("too large"), std::string::npos);
}

TEST(CliThreshold, PoissonExample) {
  const auto j = run_json({"threshold", "--dist", R"({"kind":"poisson","lambda":4})"});
  expect_metadata(j);
  EXPECT_DOUBLE_EQ(j["p_c"].get<double>(), 0.25);
  EXPECT_DOUBLE_EQ(j["g_c"].get<double>(), 0.75);
  EXPECT_EQ(j["threshold_rule"], "distribution");
}

TEST(CliThreshold, GraphAndDegreeSequenceAgree) {
  const auto a = run_json({"threshold", "--graph", kData + "/five_node.edges", "--edges", "8"});
  const auto b = run_json({"threshold", "--degrees", "[4,4,3,3,2]"});
  EXPECT_NEAR(a["p_c"].get<double>(), 8.0 / 19.0, 1e-15);
  EXPECT_EQ(a["p_c"], b["p_c"]);
  EXPECT_EQ(a["M_c"], 3);
}

TEST(CliThreshold, TruncatedReportsBothForms) {
  const auto j = run_json({"threshold", "--dist", R"({"kind":"truncated_power","gamma":2.5,"k_min":1,"k_max":11})"});
  EXPECT_EQ(j["method"], "continuum");
  EXPECT_NEAR(j["p_c"].get<double>(), 1.0 / (std::sqrt(11.0) - 1.0), 1e-15);
  EXPECT_TRUE(j.contains("p_c_moments"));
}

TEST(CliThreshold, ScanGammaCsv) {
  const auto r = run_cli({"threshold", "--scan-gamma", "3.1:3.5:0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "gamma,p_c");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    const double g = std::stod(line.substr(0, comma));
    EXPECT_DOUBLE_EQ(std::stod(line.substr(comma + 1)), threshold_zeta(g).p_c);
    ++rows;
  }
  EXPECT_EQ(rows, 5);
}

TEST(CliThreshold, FixedPoint) {
  const auto j = run_json({"threshold", "--dist", R"({"kind":"poisson","lambda":2})", "--pe", "1"});
  EXPECT_NEAR(j["fixed_point"]["root"].get<double>(), 0.2031878699799799, 1e-10);
  EXPECT_TRUE(j["fixed_point"]["nontrivial"].get<bool>());
}

TEST(CliThreshold, DivergenceIsComputationError) {
  EXPECT_EQ(run_cli({"threshold", "--dist", R"({"kind":"zeta","gamma":1.5})"}).code, 1);
  EXPECT_EQ(run_cli({"threshold", "--dist", R"({"kind":"poisson"})"}).code, 2);
  EXPECT_EQ(run_cli({"threshold", "--dist", "{not json"}).code, 2);
}

TEST(CliAssess, MatchesLibrary) {
  const auto j = run_json({"assess", "--graph", kData + "/five_node.edges", "--pc-rule", "value:0.421053", "--time", "4"});
  expect_metadata(j);
  EXPECT_EQ(j["M_c"], 3);
  const auto data = read_edge_list(kData + "/five_node.edges");
  std::vector<double> probs;
  for (double r : *data.rates) probs.push_back(std::exp(-4.0 * r));
  EXPECT_DOUBLE_EQ(j["rel_c_exact"].get<double>(), rel_c_heterogeneous(probs, 3));
  EXPECT_DOUBLE_EQ(j["rel_c_poisson"].get<double>(), rel_c_poisson_approx(probs, 3).approx);
  EXPECT_DOUBLE_EQ(j["le_cam_bound"].get<double>(), le_cam_bound(probs));
}

TEST(CliAssess, K4GapReported) {
  const auto j = run_json({"assess", "--graph", kData + "/k4.edges", "--probs", "[0.5,0.5,0.5,0.5,0.5,0.5]",
                           "--pc-rule", "value:0.3333333333333333", "--with-exact"});
  EXPECT_EQ(j["M_c"], 2);
  EXPECT_NEAR(j["rel_c_minus_all_terminal"].get<double>(), 4.0 / 64.0, 1e-15);
}

TEST(CliAssess, ExplicitProbabilitiesAlone) {
  const auto j = run_json({"assess", "--probs", "[0.9,0.5,0.2,0.7]", "--pc-rule", "value:0.5"});
  EXPECT_EQ(j["N"], 4);
  EXPECT_EQ(j["M_c"], 2);
  EXPECT_NEAR(j["rel_c_exact"].get<double>(), rel_c_heterogeneous(std::vector<double>{0.9, 0.5, 0.2, 0.7}, 2),
              1e-15);
}

TEST(CliCurve, CsvReintegratesToSameLifetimeIntegral) {
  const auto r = run_cli({"curve", "--scenario", kData + "/five_node_scenario.json", "--end", "60", "--step", "0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,rel_c");
  ReliabilityCurve parsed;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    parsed.times.push_back(std::stod(line.substr(0, comma)));
    parsed.values.push_back(std::stod(line.substr(comma + 1)));
  }
  ASSERT_EQ(parsed.times.size(), 1201u);

  const auto data = read_edge_list(kData + "/five_node.edges");
  const auto direct = reliability_curve(EdgeReliabilityProfile::exponential(*data.rates),
                                        make_assessment_config(8, 0.421053), make_grid(0.0, 60.0, 0.05));
  EXPECT_NEAR(lifetime_integral(parsed).value, lifetime_integral(direct).value, 1e-9);
}

TEST(CliCurve, JsonWithDensity) {
  const auto j = run_json({"curve", "--edges", "250", "--rate", "0.25", "--pc-rule", "value:0.43166", "--format",
                           "json", "--density", "--end", "1"});
  expect_metadata(j);
  EXPECT_EQ(j["rel_c"].size(), 11u);
  EXPECT_EQ(j["failure_density"].size(), 11u);
  EXPECT_EQ(j["scenario"]["output"], "json");
}

TEST(CliLifetime, HeterogeneousExampleMatchesLibrary) {
  const auto j = run_json({"lifetime", "--graph", kData + "/five_node.edges", "--rates", kData + "/five_node.rates",
                           "--pc-rule", "value:0.421053"});
  expect_metadata(j);
  const auto data = read_edge_list(kData + "/five_node.edges");
  const auto crossing = lifetime_threshold_crossing(EdgeReliabilityProfile::exponential(*data.rates),
                                                    make_assessment_config(8, 0.421053));
  EXPECT_NEAR(j["lifetime_crossing"].get<double>(), crossing.rel_c_crossing, 1e-9);
  EXPECT_TRUE(j["integral_decayed"].get<bool>());
  EXPECT_GT(j["lifetime_integral"].get<double>(), 0.0);
  EXPECT_TRUE(j.contains("rel_c_at_T"));
  EXPECT_EQ(j["threshold_rule"], "value:0.421053");
}

TEST(CliLifetime, PowerLawScenario) {
  const auto j = run_json({"lifetime", "--scenario", kData + "/internet_scenario.json"});
  EXPECT_EQ(j["M_c"], 107);
  EXPECT_NEAR(j["edge_level_crossing"].get<double>(), 3.36, 0.02);
  EXPECT_LT(std::abs(j["lifetime_crossing"].get<double>() - j["edge_level_crossing"].get<double>()), 0.1);
}

TEST(CliLifetime, NoCrossingIsComputationError) {
  const auto path = temp_file("never.edges", "0 1 0\n1 2 0\n");
  const auto r = run_cli({"lifetime", "--graph", path.string(), "--pc-rule", "value:0.5", "--horizon", "10"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("horizon"), std::string::npos);
}

TEST(CliSimulate, DeterministicAndAccurate) {
  const std::vector<std::string> args{"simulate", "--graph", kData + "/k4.edges", "--p", "0.5", "--trials", "50000",
                                      "--seed", "9", "--exact"};
  const auto a = run_json(args);
  const auto b = run_json(args);
  expect_metadata(a);
  EXPECT_EQ(a["estimate"], b["estimate"]);
  EXPECT_EQ(a["seed"], 9);
  EXPECT_LT(std::abs(a["z_score"].get<double>()), 4.0);
}

TEST(CliSweep, JsonAndCsv) {
  const auto j = run_json({"sweep", "--graph", kData + "/k4.edges", "--fractions", "0:1:0.5", "--trials", "4"});
  expect_metadata(j);
  EXPECT_EQ(j["mean_largest_fraction"][0], 1.0);
  EXPECT_NEAR(j["mean_largest_fraction"][2].get<double>(), 0.25, 1e-15);
  const auto r = run_cli({"sweep", "--graph", kData + "/k4.edges", "--fractions", "0:1:0.5", "--format", "csv"});
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "g,mean_largest_fraction");
}

TEST(CliGenerate, EmitsParsableSimpleGraph) {
  const auto r = run_cli({"generate", "--dist", R"({"kind":"truncated_power","gamma":2.5,"k_min":1,"k_max":11})",
                          "--target-edges", "250", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const auto data = parse_edge_list(in);
  EXPECT_GT(data.graph.edge_count(), 230u);
  EXPECT_LE(data.graph.edge_count(), 256u);
  EXPECT_EQ(run_cli({"generate", "--model", "binomial", "--nodes", "4", "--p", "1"}).out.find("edges=6") !=
                std::string::npos,
            true);
}

TEST(CliRun, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"exact", "--graph", kData + "/k4.edges", "--bogus"}).code, 2);
  EXPECT_EQ(run_cli({"exact", "--graph", kData + "/k4.edges", "--p", "1.5"}).code, 2);
  EXPECT_EQ(run_cli({"exact", "--graph", kData + "/missing.edges", "--p", "0.5"}).code, 2);
  EXPECT_EQ(run_cli({"curve", "--edges", "10", "--rate", "0.1", "--pc-rule", "value:1.5"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(CliRun, OutFlagWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "netrel_cli_test_out.json";
  std::filesystem::remove(path);
  const auto r = run_cli({"exact", "--graph", kData + "/k4.edges", "--p", "0.5", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_DOUBLE_EQ(Json::parse(in)["reliability"].get<double>(), 0.59375);
}

TEST(Scenario, MinimalDefaults) {
  const auto s = parse_scenario(Json::parse(R"({"graph": {"edge_count": 8}, "profile": {"shared_rate": 0.5}})"));
  EXPECT_EQ(s.grid.start, 0.0);
  EXPECT_EQ(s.grid.end, 15.0);
  EXPECT_EQ(s.grid.step, 0.1);
  EXPECT_EQ(s.threshold.kind, ThresholdRule::Kind::Moment);
  EXPECT_EQ(s.seed, 0u);
  const Json echo = to_json(s);
  EXPECT_EQ(echo["threshold"]["rule"], "moment");
  EXPECT_EQ(echo["grid"]["step"], 0.1);
}

TEST(Scenario, RejectsInvalidInput) {
  auto message = [](const std::string& text) {
    try {
      parse_scenario(Json::parse(text));
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  EXPECT_NE(message(R"({"graph": {"edge_count": 8}, "threshold": {"rule": "value", "value": 1.5}})")
                .find("threshold.value"),
            std::string::npos);
  EXPECT_NE(message(R"({"graph": {"edge_count": 8}, "threshold": "value:1.5"})"), "accepted");
  EXPECT_NE(message(R"({"profile": {"shared_rate": 0.5}})").find("graph"), std::string::npos);
  EXPECT_NE(message(R"({"graph": {"edge_count": 8, "edge_list": "x"}})").find("exactly one"), std::string::npos);
  EXPECT_NE(message(R"({"graph": {"edge_count": 8}, "grid": {"step": 0}})").find("grid.step"), std::string::npos);
  EXPECT_NE(message(R"({"graph": {"edge_count": 8}, "colour": 1})").find("colour"), std::string::npos);
  EXPECT_NE(message(R"({"graph": {"edge_count": 8}, "threshold": {"rule": "distribution"}})")
                .find("threshold.distribution"),
            std::string::npos);
}

TEST(Scenario, GeneratorForPowerLawNetwork) {
  const auto s = read_scenario(kData + "/internet_generated_scenario.json");
  const auto& gen = std::get<GeneratorSource>(s.graph);
  EXPECT_EQ(gen.kind, "configuration");
  EXPECT_EQ(gen.target_edges, 250u);
  const auto& d = std::get<TruncatedPowerLaw>(*gen.distribution);
  EXPECT_EQ(d.gamma, 2.5);
  EXPECT_EQ(d.k_min, 1);
  EXPECT_EQ(d.k_max, 11);
  const auto m = realize(s);
  ASSERT_TRUE(m.graph.has_value());
  EXPECT_TRUE(m.stochastic);
  EXPECT_NEAR(static_cast<double>(m.N), 250.0, 10.0);
  const auto again = realize(s);
  EXPECT_EQ(again.graph->edges(), m.graph->edges());
}
