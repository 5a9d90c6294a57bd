#include <gtest/gtest.h>

#include <json.hpp>

#include "mgnet/errors.hpp"
#include "mgnet/scenario.hpp"

namespace mgnet {
namespace {

const std::string kGolden = std::string(MGNET_DATA_DIR) + "/golden.json";

std::string minimal(const std::string& microgrids, const std::string& extra = "") {
  return R"({"f": 0, "seed": 1, "microgrids": )" + microgrids + extra + "}";
}

TEST(Criterion, StrictInequality) {
  EXPECT_EQ(evaluate_criterion(441.44, 380.06), Verdict::interconnect);
  EXPECT_EQ(evaluate_criterion(0, 0), Verdict::stand_alone);
  EXPECT_EQ(evaluate_criterion(100, 100.000001), Verdict::stand_alone);
  EXPECT_THROW(evaluate_criterion(std::nan(""), 1), InvalidArgument);
}

TEST(Criterion, AntisymmetryAndScaleInvariance) {
  auto rng = derive_rng(50);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = uniform_real(rng, 0, 1000);
    const double b = uniform_real(rng, 0, 1000);
    if (a == b) continue;
    if (evaluate_criterion(a, b) == Verdict::interconnect) EXPECT_EQ(evaluate_criterion(b, a), Verdict::stand_alone);
    const double c = uniform_real(rng, 1e-3, 1e3);
    EXPECT_EQ(evaluate_criterion(a * c, b * c), evaluate_criterion(a, b));
  }
}

AttackSpec one_node(InjectionGenerator g, Node node = 3) {
  AttackSpec spec;
  spec.controllers.push_back({node, g, g});
  return spec;
}

TEST(SampleInjections, ExplicitPassthrough) {
  auto rng = derive_rng(1);
  const auto s = sample_injections(one_node({{5.0, -3.0, 12.0}}), Quantity::supply, 3, rng);
  EXPECT_EQ(s.faulty_nodes, (NodeSet{3}));
  EXPECT_EQ(s.values[0], (std::vector<double>{5.0, -3.0, 12.0}));
  const auto padded = sample_injections(one_node({{5.0}}), Quantity::demand, 3, rng);
  EXPECT_EQ(padded.values[0], (std::vector<double>{5.0, 0.0, 0.0}));
  EXPECT_THROW(sample_injections(one_node({{1, 2, 3, 4}}), Quantity::supply, 3, rng), ConfigError);
}

TEST(SampleInjections, Distributions) {
  InjectionGenerator zero{{}, "constant", {0.0}, 3};
  auto rng = derive_rng(2);
  const auto s = sample_injections(one_node(zero), Quantity::supply, 3, rng);
  EXPECT_EQ(s.values[0], (std::vector<double>{0.0, 0.0, 0.0}));

  InjectionGenerator normal{{}, "normal", {0.0, 50.0}, 3};
  auto a = derive_rng(42);
  auto b = derive_rng(42);
  const auto sa = sample_injections(one_node(normal), Quantity::supply, 3, a);
  const auto sb = sample_injections(one_node(normal), Quantity::supply, 3, b);
  EXPECT_EQ(sa.values, sb.values);
  EXPECT_NE(sa.values[0][0], sa.values[0][1]);

  InjectionGenerator uniform{{}, "uniform", {-2.0, -1.0}, 50};
  const auto su = sample_injections(one_node(uniform), Quantity::supply, 50, a);
  for (double v : su.values[0]) {
    EXPECT_GE(v, -2.0);
    EXPECT_LT(v, -1.0);
  }

  InjectionGenerator bogus{{}, "cauchy", {0.0, 1.0}, 3};
  EXPECT_THROW(sample_injections(one_node(bogus), Quantity::supply, 3, a), ConfigError);
}

TEST(LoadScenario, GoldenFileMatchesDemonstrationTable) {
  const auto s = load_scenario(kGolden);
  ASSERT_EQ(s.node_count(), 6u);
  const std::vector<double> supply{24.17, 64.31, 89.19, 134.43, 49.65, 79.69};
  const std::vector<double> demand{22.30, 44.72, 111.80, 89.44, 89.44, 22.36};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(s.microgrids[i].supply, supply[i]);
    EXPECT_EQ(s.microgrids[i].critical_demand, demand[i]);
  }
  EXPECT_EQ(s.f, 1u);
  EXPECT_EQ(s.attack.compromised_nodes(), (NodeSet{3}));
  EXPECT_EQ(s.attack.injection_steps(), 3u);
  ASSERT_TRUE(s.fixed_graph.has_value());
  EXPECT_EQ(s.fixed_graph->edge_count(), 10u);
  ASSERT_TRUE(s.weights.has_value());
  EXPECT_EQ((*s.weights)(0, 0), 5.0);
  EXPECT_NEAR(s.supply_total(), 441.44, 1e-9);
  EXPECT_NEAR(s.demand_total(), 380.06, 1e-9);
}

TEST(LoadScenario, RoundTrip) {
  const auto s = load_scenario(kGolden);
  const auto again = parse_scenario(to_json(s));
  EXPECT_EQ(again, s);
  EXPECT_EQ(to_json(again), to_json(s));

  const auto r = load_scenario(std::string(MGNET_DATA_DIR) + "/random_preventive.json");
  EXPECT_EQ(parse_scenario(to_json(r)), r);
}

void expect_config_error(const std::string& text, const std::string& needle) {
  try {
    parse_scenario(text);
    FAIL() << "expected ConfigError for " << text;
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

TEST(LoadScenario, SchemaErrorsNameTheField) {
  expect_config_error(minimal("[]"), "microgrids");
  expect_config_error(minimal(R"([{"supply": -1, "critical_demand": 2}])"), "microgrids[0].supply");
  expect_config_error(minimal(R"([{"supply": 1}])"), "microgrids[0].critical_demand");
  expect_config_error(minimal(R"([{"supply": "x", "critical_demand": 2}])"), "expected a number");
  expect_config_error(R"({"seed": 1, "microgrids": [{"supply": 1, "critical_demand": 2}]})", "f: missing");
  expect_config_error(minimal(R"([{"supply": 1, "critical_demand": 2}])",
                              R"(, "attack": {"controllers": [{"node": 0, "injection": {"values": [1]}}]})"),
                      "exceed the fault bound");
  expect_config_error(minimal(R"([{"supply": 1, "critical_demand": 2}, {"supply": 1, "critical_demand": 2}])",
                              R"(, "attack": {"compromised_links": [[0, 5]]})"),
                      "attack.compromised_links");
  expect_config_error(minimal(R"([{"supply": 1, "critical_demand": 2}])",
                              R"(, "weights": [[1, 2], [3, 4]])"),
                      "weights");
  expect_config_error(
      minimal(R"([{"supply": 1, "critical_demand": 2}])",
              R"(, "attack": {"controllers": [{"node": 0, "injection": {"distribution": "cauchy", "params": [], "steps": 1}}]})"),
      "unknown distribution");
}

TEST(LoadScenario, SyntaxErrorReportsLine) {
  expect_config_error("{\n  \"f\": 1,\n  oops\n}", "line 3");
}

TEST(LoadScenario, MissingFile) {
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ConfigError);
}

}  // namespace
}  // namespace mgnet
