#include <gtest/gtest.h>

#include "mgnet/consensus.hpp"
#include "mgnet/errors.hpp"
#include "mgnet/generators.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace mgnet {
namespace {

TEST(RunUpdates, IdentityKeepsState) {
  const auto w = WeightMatrix(Eigen::MatrixXd::Identity(3, 3), Graph(3));
  Eigen::VectorXd s0(3);
  s0 << 1.5, -2, 7;
  const auto states = run_updates(w, s0, InjectionSchedule::none(4), 4);
  ASSERT_EQ(states.size(), 5u);
  for (const auto& s : states) EXPECT_EQ(s, s0);
}

TEST(RunUpdates, Swap) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 1, 0;
  Eigen::VectorXd s0(2);
  s0 << 3, 8;
  const auto states = run_updates(WeightMatrix::from_matrix(m), s0, InjectionSchedule::none(1), 1);
  EXPECT_EQ(states[1], (Eigen::VectorXd(2) << 8, 3).finished());
}

TEST(RunUpdates, DemoInjectionMatchesHandIteration) {
  const auto w = fixtures::demo_weights();
  const auto s0 = fixtures::demo_supply();
  const InjectionSchedule inj{{3}, {{45.0, 30.5, 62.25}}, 3};
  const auto states = run_updates(w, s0, inj, 3);

  const auto wm = oracle::from_rows({{5, 4, 1, 1, 0, 0},
                                     {1, -3, -2, 1, 4, 0},
                                     {-3, -3, -4, 0, 0, -3},
                                     {-1, -2, 0, 5, -1, -3},
                                     {0, 4, 0, 5, -1, -4},
                                     {0, 0, -3, -1, 1, -3}});
  std::vector<oracle::Vec> u(3, oracle::Vec(6, 0.0));
  u[0][3] = 45.0;
  u[1][3] = 30.5;
  u[2][3] = 62.25;
  const auto ref = oracle::iterate(wm, {24.17, 64.31, 89.19, 134.43, 49.65, 79.69}, u, 3);
  for (std::size_t k = 0; k <= 3; ++k)
    for (int i = 0; i < 6; ++i) EXPECT_DOUBLE_EQ(states[k](i), ref[k][i]) << "k=" << k << " i=" << i;
}

TEST(RunUpdates, HorizonMismatch) {
  const auto w = fixtures::demo_weights();
  EXPECT_THROW(run_updates(w, fixtures::demo_supply(), InjectionSchedule::none(2), 3), InvalidArgument);
  EXPECT_THROW(run_updates(w, Eigen::VectorXd::Zero(5), InjectionSchedule::none(3), 3), InvalidArgument);
}

TEST(InjectionSchedule, HorizonPadding) {
  const InjectionSchedule inj{{2}, {{1.0, 2.0}}, 2};
  const auto padded = inj.with_horizon(4);
  EXPECT_EQ(padded.values[0], (std::vector<double>{1.0, 2.0, 0.0, 0.0}));
  EXPECT_EQ(padded.at(2, 1), 2.0);
  EXPECT_EQ(padded.at(1, 1), 0.0);
  EXPECT_THROW(inj.with_horizon(1), InvalidArgument);
  EXPECT_THROW(inj.validate(6, 0), InvalidArgument);
  EXPECT_THROW((InjectionSchedule{{1, 1}, {{0.0}, {0.0}}, 1}.validate(3)), InvalidArgument);
}

TEST(Baseline, ConvergesToMeanWithoutAttack) {
  auto rng = derive_rng(6);
  const auto g = generate_preventive(8, 1, rng);
  Eigen::VectorXd s0(8);
  for (int i = 0; i < 8; ++i) s0(i) = uniform_real(rng, 0, 100);
  const double mean = s0.mean();
  const auto traj = run_average_consensus_baseline(g, s0, InjectionSchedule::none(0), 60);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 10; k < traj.size(); ++k) {
    const double dev = (traj[k].array() - mean).abs().maxCoeff();
    EXPECT_LE(dev, prev + 1e-12);
    prev = dev;
  }
  EXPECT_LT(prev, 1e-6);
  for (const auto& s : traj) EXPECT_NEAR(s.sum(), s0.sum(), 1e-9);
}

TEST(Baseline, SingleNodeConstant) {
  Eigen::VectorXd s0(1);
  s0 << 42.0;
  for (const auto& s : run_average_consensus_baseline(Graph(1), s0, InjectionSchedule::none(0), 5))
    EXPECT_EQ(s(0), 42.0);
}

TEST(Baseline, InjectionShiftsTheAverage) {
  const auto g = fixtures::demo_graph();
  const InjectionSchedule inj{{3}, {{45.0, 30.5, 62.25}}, 3};
  const auto traj = run_average_consensus_baseline(g, fixtures::demo_supply(), inj, 30);
  const double truth = fixtures::demo_supply().sum();
  // Metropolis weights preserve the sum, so the injected 137.75 never washes out.
  EXPECT_NEAR(traj.back().sum(), truth + 137.75, 1e-9);
  EXPECT_GT((6.0 * traj.back().array() - truth).abs().minCoeff(), 5.0);
}

}  // namespace
}  // namespace mgnet
