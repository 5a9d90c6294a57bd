#include <benchmark/benchmark.h>

#include "mgnet/generators.hpp"

namespace {

void BM_VertexConnectivity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto rng = mgnet::derive_rng(1, {n});
  const auto g = mgnet::generate_preventive(n, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mgnet::vertex_connectivity(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VertexConnectivity)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_GeneratePreventive(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto rng = mgnet::derive_rng(seed++, {n});
    benchmark::DoNotOptimize(mgnet::generate_preventive(n, 1, rng));
  }
}
BENCHMARK(BM_GeneratePreventive)->Arg(6)->Arg(12)->Arg(24);

void BM_GenerateResponsive(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  mgnet::LinkAttackSet attacks;
  attacks.forbidden_edges = {mgnet::make_edge(0, 1), mgnet::make_edge(1, 2), mgnet::make_edge(0, 2)};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto rng = mgnet::derive_rng(seed++, {n});
    benchmark::DoNotOptimize(mgnet::generate_responsive(n, 1, attacks, rng));
  }
}
BENCHMARK(BM_GenerateResponsive)->Arg(8)->Arg(16);

}  // namespace
