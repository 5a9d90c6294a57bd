#include <benchmark/benchmark.h>

#include "mgnet/generators.hpp"
#include "mgnet/simulator.hpp"

namespace {

mgnet::WeightMatrix random_weights(std::size_t n, std::size_t f) {
  auto rng = mgnet::derive_rng(5, {n, f});
  const auto g = mgnet::generate_preventive(n, f, rng);
  return mgnet::synthesize_weights(g, f, n + 2, rng).weights;
}

void BM_VerifyRankCondition(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto w = random_weights(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(mgnet::verify_rank_condition(w, 1, n + 2));
}
BENCHMARK(BM_VerifyRankCondition)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_DecodeUnknownFaults(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto w = random_weights(n, 1);
  const auto k = *mgnet::verify_rank_condition(w, 1, n + 2);
  Eigen::VectorXd initial = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(n), 10.0, 90.0);
  const mgnet::InjectionSchedule inj{{1}, {std::vector<double>(k, 25.0)}, k};
  const auto states = mgnet::run_updates(w, initial, inj, k);
  const auto stack = mgnet::build_observability_stack(w, 0, k, mgnet::subsets_by_size(n, 0, 1));
  const auto obs = mgnet::ObservationRecord::from_trajectory(w.graph(), 0, states);
  for (auto _ : state) benchmark::DoNotOptimize(mgnet::decode_unknown_faults(stack, obs, 1));
}
BENCHMARK(BM_DecodeUnknownFaults)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_GoldenPeriod(benchmark::State& state) {
  const auto s = mgnet::load_scenario(MGNET_GOLDEN_SCENARIO);
  const auto agent = mgnet::CommunicationAgent::for_attack(s.attack, s.f, s.seed);
  const auto mode = static_cast<mgnet::DecodeMode>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mgnet::run_period(s, agent, mode, {0, s.period_hours}));
  state.SetLabel(std::string(mgnet::to_string(mode)));
}
BENCHMARK(BM_GoldenPeriod)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace
