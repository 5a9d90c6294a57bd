#include <gtest/gtest.h>

#include <type_traits>

#include "mgnet/errors.hpp"
#include "mgnet/records.hpp"
#include "mgnet/simulator.hpp"
#include "support/fixtures.hpp"

namespace mgnet {
namespace {

Scenario golden() { return load_scenario(std::string(MGNET_DATA_DIR) + "/golden.json"); }

CommunicationAgent agent_for(const Scenario& s) { return CommunicationAgent::for_attack(s.attack, s.f, s.seed); }

DecisionRecord run(const Scenario& s, DecodeMode mode, EngineOptions opts = {}) {
  return run_period(s, agent_for(s), mode, {0, s.period_hours}, opts);
}

TEST(RunPeriod, GoldenUnknownFaults) {
  const auto rec = run(golden(), DecodeMode::unknown_faults);
  EXPECT_FALSE(rec.rank_condition_satisfied);
  EXPECT_EQ(rec.horizon, 3u);
  ASSERT_TRUE(rec.unanimous);
  EXPECT_EQ(*rec.consensus_verdict, Verdict::interconnect);
  for (const auto& c : rec.controllers) {
    EXPECT_NEAR(*c.supply_total, 441.44, 1e-6);
    EXPECT_NEAR(*c.demand_total, 380.06, 1e-6);
    EXPECT_EQ(c.supply_decode->consistent_fault_sets, (std::vector<NodeSet>{{3}}));
  }
  EXPECT_EQ(rec.certificate->kappa, 3u);
}

TEST(RunPeriod, GoldenKnownFaults) {
  const auto rec = run(golden(), DecodeMode::known_faults);
  ASSERT_TRUE(rec.unanimous);
  EXPECT_LT(rec.max_supply_deviation, 1e-6);
  EXPECT_LT(rec.max_demand_deviation, 1e-6);
}

TEST(RunPeriod, GoldenBaselineIsFooled) {
  const auto rec = run(golden(), DecodeMode::baseline);
  EXPECT_EQ(rec.horizon, 30u);
  EXPECT_GT(rec.max_supply_deviation, 5.0);
  EXPECT_GT(rec.max_demand_deviation, 5.0);
}

TEST(RunPeriod, NoAttackEveryModeAgrees) {
  auto s = golden();
  s.attack.controllers.clear();
  for (auto mode : {DecodeMode::known_faults, DecodeMode::unknown_faults, DecodeMode::baseline}) {
    const auto rec = run(s, mode);
    ASSERT_TRUE(rec.unanimous) << to_string(mode);
    EXPECT_EQ(*rec.consensus_verdict, Verdict::interconnect);
    EXPECT_LT(rec.max_supply_deviation, 1e-3);
  }
}

TEST(RunPeriod, UnanimousAcrossRandomScenarios) {
  for (std::size_t t = 0; t < 100; ++t) {
    const auto s = fixtures::random_scenario(99, t);
    const auto mode = t % 2 == 0 ? DecodeMode::unknown_faults : DecodeMode::known_faults;
    const auto rec = run(s, mode);
    ASSERT_TRUE(rec.error.empty()) << s.name << ": " << rec.error;
    EXPECT_TRUE(rec.unanimous) << s.name;
    ASSERT_TRUE(rec.consensus_verdict.has_value()) << s.name;
    EXPECT_EQ(*rec.consensus_verdict, evaluate_criterion(s.supply_total(), s.demand_total())) << s.name;
    EXPECT_LT(rec.max_supply_deviation, 1e-6 * s.supply_total()) << s.name;
  }
}

TEST(RoundEngine, MatchesCentralizedIterationBitForBit) {
  const auto s = golden();
  const auto w = fixtures::demo_weights();
  const InjectionSchedule inj{{3}, {{45.0, 30.5, 62.25, 0.0, 0.0}}, 5};
  ProfileStore profiles(s.microgrids);
  RoundEngine engine(w, profiles);
  engine.run(Quantity::supply, inj, 5);
  const auto ref = run_updates(w, fixtures::demo_supply(), inj, 5);
  ASSERT_EQ(engine.trajectory(Quantity::supply).size(), ref.size());
  for (std::size_t k = 0; k < ref.size(); ++k) EXPECT_EQ(engine.trajectory(Quantity::supply)[k], ref[k]);
  // Each controller's record equals C_i S^k.
  for (const auto& c : engine.controllers()) {
    const auto expected = ObservationRecord::from_trajectory(w.graph(), c.id(), ref);
    EXPECT_EQ(c.observation(Quantity::supply).stacked(), expected.stacked());
  }
}

TEST(RoundEngine, ParallelEqualsSequential) {
  const auto s = load_scenario(std::string(MGNET_DATA_DIR) + "/random_preventive.json");
  const auto seq = run(s, DecodeMode::unknown_faults, {false});
  const auto par = run(s, DecodeMode::unknown_faults, {true});
  EXPECT_EQ(to_json(seq), to_json(par));
}

TEST(RoundEngine, AuditCounters) {
  const auto rec = run(golden(), DecodeMode::unknown_faults);
  // 10 edges, both directions, steps 0..3, two quantities.
  EXPECT_EQ(rec.audit.messages_delivered, 10u * 2 * 4 * 2);
  EXPECT_EQ(rec.audit.locality_violations, 0u);
  EXPECT_EQ(rec.audit.profile_reads, 6u);
  EXPECT_EQ(rec.audit.profile_violations, 0u);
}

TEST(Controller, RejectsNonNeighborMessages) {
  const auto w = fixtures::demo_weights();
  Controller c({0, 1.0, 2.0, "MG1"}, w);
  EXPECT_THROW(c.deliver({5, 0, 0, Quantity::supply, 1.0}), InternalInvariant);
  EXPECT_THROW(c.deliver({1, 2, 0, Quantity::supply, 1.0}), InternalInvariant);
  c.deliver({1, 0, 0, Quantity::supply, 1.0});
  EXPECT_THROW(c.deliver({1, 0, 0, Quantity::supply, 1.0}), InternalInvariant);
  // Missing messages from neighbors 2 and 3 break the step.
  EXPECT_THROW(c.finish_step(0, Quantity::supply, true, 0.0), InternalInvariant);
}

TEST(ProfileStore, CountsForeignReads) {
  ProfileStore store({{0, 1, 1, "a"}, {1, 2, 2, "b"}});
  store.read(0, 0);
  store.read(0, 1);
  EXPECT_EQ(store.reads(), 2u);
  EXPECT_EQ(store.violations(), 1u);
}

// The agent's only input type carries no supply or demand data.
static_assert(std::is_same_v<decltype(&CommunicationAgent::build), Graph (CommunicationAgent::*)(const TopologyRequest&) const>);

TEST(CommunicationAgent, BlindToMicrogridData) {
  auto a = load_scenario(std::string(MGNET_DATA_DIR) + "/random_preventive.json");
  auto b = a;
  for (auto& m : b.microgrids) {
    m.supply *= 3.0;
    m.critical_demand += 17.0;
  }
  const auto ra = run(a, DecodeMode::unknown_faults);
  const auto rb = run(b, DecodeMode::unknown_faults);
  EXPECT_EQ(*ra.graph, *rb.graph);
  EXPECT_EQ(*ra.weights, *rb.weights);
  EXPECT_EQ(ra.audit.agent_requests, 1u);
}

TEST(CommunicationAgent, StrategyFollowsAttackKnowledge) {
  AttackSpec attack;
  EXPECT_EQ(CommunicationAgent::for_attack(attack, 1, 0).strategy(), CommunicationAgent::Strategy::preventive);
  attack.known_to_agent = true;
  EXPECT_EQ(CommunicationAgent::for_attack(attack, 1, 0).strategy(), CommunicationAgent::Strategy::responsive);
}

TEST(RunCampaign, RegeneratesGraphsAndAgrees) {
  const auto s = load_scenario(std::string(MGNET_DATA_DIR) + "/random_preventive.json");
  const auto agent = agent_for(s);
  const auto recs = run_campaign(s, 3, agent, DecodeMode::unknown_faults);
  ASSERT_EQ(recs.size(), 3u);
  for (const auto& r : recs) {
    ASSERT_TRUE(r.error.empty()) << r.error;
    ASSERT_TRUE(r.unanimous);
    EXPECT_EQ(*r.consensus_verdict, *recs[0].consensus_verdict);
    EXPECT_GE(r.certificate->kappa, 3u);
  }
  EXPECT_FALSE(*recs[0].graph == *recs[1].graph && *recs[1].graph == *recs[2].graph);
  EXPECT_EQ(recs[1].period.index, 1u);

  const auto again = run_campaign(s, 3, agent_for(s), DecodeMode::unknown_faults);
  EXPECT_EQ(campaign_json(s, recs), campaign_json(s, again));

  const auto single = run_campaign(s, 1, agent_for(s), DecodeMode::unknown_faults);
  EXPECT_EQ(to_json(single[0]), to_json(run(s, DecodeMode::unknown_faults)));
}

TEST(RunCampaign, FixedGraphAcrossPeriods) {
  auto s = load_scenario(std::string(MGNET_DATA_DIR) + "/random_preventive.json");
  s.regenerate_graph_per_period = false;
  const auto recs = run_campaign(s, 3, agent_for(s), DecodeMode::known_faults);
  EXPECT_EQ(*recs[0].graph, *recs[2].graph);
}

TEST(RunCampaign, InfeasiblePeriodIsRecorded) {
  auto s = load_scenario(std::string(MGNET_DATA_DIR) + "/random_preventive.json");
  s.attack.known_to_agent = true;
  for (Node v = 0; v < 6; ++v) s.attack.compromised_links.forbidden_edges.insert(make_edge(v, v + 1));
  const auto recs = run_campaign(s, 2, agent_for(s), DecodeMode::unknown_faults);
  ASSERT_EQ(recs.size(), 2u);
  for (const auto& r : recs) {
    EXPECT_NE(r.error.find("infeasible_topology"), std::string::npos) << r.error;
    EXPECT_TRUE(r.decode_failed());
  }
  EXPECT_THROW(run_campaign(s, 0, agent_for(s), DecodeMode::unknown_faults), InvalidArgument);
}

TEST(Records, TrajectoryCsvShape) {
  const auto rec = run(golden(), DecodeMode::unknown_faults);
  const auto csv = trajectory_csv(rec);
  EXPECT_EQ(csv.rfind("step,controller,quantity,value\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 4 * 6);
  EXPECT_NE(csv.find("0,3,supply,134.43"), std::string::npos);
}

}  // namespace
}  // namespace mgnet
