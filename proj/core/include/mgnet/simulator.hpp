#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgnet/consensus.hpp"
#include "mgnet/graph.hpp"
#include "mgnet/scenario.hpp"
#include "mgnet/weights.hpp"

namespace mgnet {

/// Everything the communication agent is allowed to see.
struct TopologyRequest {
  std::size_t node_count = 0;
  std::size_t f = 0;
  LinkAttackSet compromised_links;
  std::size_t period = 0;
};

/// Chooses who talks to whom. It never sees supplies or demands: its only input is a TopologyRequest.
class CommunicationAgent {
 public:
  enum class Strategy { preventive, responsive };

  CommunicationAgent(Strategy strategy, std::size_t f, std::uint64_t seed)
      : strategy_(strategy), f_(f), seed_(seed) {}

  /// Picks the strategy from whether link attacks are known.
  static CommunicationAgent for_attack(const AttackSpec& attack, std::size_t f, std::uint64_t seed);

  Graph build(const TopologyRequest& request) const;

  Strategy strategy() const { return strategy_; }
  std::size_t f() const { return f_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t requests_served() const { return requests_served_; }

 private:
  Strategy strategy_;
  std::size_t f_;
  std::uint64_t seed_;
  mutable std::size_t requests_served_ = 0;
};

std::string_view to_string(CommunicationAgent::Strategy s);

/// Counts reads of microgrid profiles by requester; a read of someone else's profile is a violation.
class ProfileStore {
 public:
  explicit ProfileStore(std::vector<MicrogridProfile> profiles) : profiles_(std::move(profiles)) {}

  const MicrogridProfile& read(Node requester, Node owner);
  std::size_t size() const { return profiles_.size(); }
  std::size_t reads() const { return reads_; }
  std::size_t violations() const { return violations_; }

 private:
  std::vector<MicrogridProfile> profiles_;
  std::size_t reads_ = 0;
  std::size_t violations_ = 0;
};

struct Message {
  Node sender = 0;
  Node receiver = 0;
  std::size_t step = 0;
  Quantity quantity = Quantity::supply;
  double value = 0.0;
};

/// One microgrid controller. It holds its own profile, its own row of W, and
/// whatever arrives in its inbox; nothing else about other controllers.
class Controller {
 public:
  Controller(const MicrogridProfile& own, const WeightMatrix& weights);

  Node id() const { return id_; }
  const NodeSet& selector() const { return selector_; }

  /// Value this controller broadcasts to its neighbors at `step`.
  std::vector<Message> outgoing(std::size_t step, Quantity q) const;
  /// Throws InternalInvariant on a message from a non-neighbor or a duplicate.
  void deliver(const Message& m);
  /// Closes `step`: records y^step and, if `update`, applies its row of W plus `injection`.
  void finish_step(std::size_t step, Quantity q, bool update, double injection);

  double value(Quantity q) const { return q == Quantity::supply ? supply_ : demand_; }
  const ObservationRecord& observation(Quantity q) const {
    return q == Quantity::supply ? supply_obs_ : demand_obs_;
  }
  double local_supply() const { return local_supply_; }
  double local_demand() const { return local_demand_; }

 private:
  Node id_;
  double local_supply_;
  double local_demand_;
  double supply_;
  double demand_;
  NodeSet selector_;
  /// w_{i,selector[r]} for the controller's own row.
  std::vector<double> row_;
  /// inbox_[r] holds the current-step value from selector_[r] (r >= 1).
  std::vector<std::optional<double>> inbox_;
  ObservationRecord supply_obs_;
  ObservationRecord demand_obs_;
};

struct AuditCounters {
  std::size_t messages_delivered = 0;
  std::size_t locality_violations = 0;
  std::size_t profile_reads = 0;
  std::size_t profile_violations = 0;
  std::size_t agent_requests = 0;
};

struct EngineOptions {
  /// Run controllers of one step on worker threads; the delivery barrier is unchanged.
  bool parallel = false;
};

/// Lockstep message-passing realization of S^{k+1} = W S^k + B_F u^k.
class RoundEngine {
 public:
  RoundEngine(WeightMatrix weights, ProfileStore& profiles, EngineOptions options = {});

  /// Runs `horizon` updates of one quantity; the controllers end with y^0..y^horizon recorded.
  void run(Quantity q, const InjectionSchedule& injection, std::size_t horizon);

  const std::vector<Controller>& controllers() const { return controllers_; }
  const WeightMatrix& weights() const { return weights_; }
  /// States S^0..S^K of the last run of `q`, gathered for output only.
  const std::vector<Eigen::VectorXd>& trajectory(Quantity q) const {
    return q == Quantity::supply ? supply_traj_ : demand_traj_;
  }
  const AuditCounters& audit() const { return audit_; }

 private:
  void exchange(std::size_t step, Quantity q);

  WeightMatrix weights_;
  EngineOptions options_;
  std::vector<Controller> controllers_;
  std::vector<Eigen::VectorXd> supply_traj_;
  std::vector<Eigen::VectorXd> demand_traj_;
  AuditCounters audit_;
};

enum class DecodeMode { known_faults, unknown_faults, baseline };

std::string_view to_string(DecodeMode m);

struct ControllerOutcome {
  Node id = 0;
  Verdict verdict = Verdict::undecided;
  std::optional<double> supply_total;
  std::optional<double> demand_total;
  std::optional<DecodeResult> supply_decode;
  std::optional<DecodeResult> demand_decode;
  std::string error;
};

struct DecisionRecord {
  DecisionPeriod period;
  DecodeMode mode = DecodeMode::unknown_faults;
  std::optional<Graph> graph;
  std::optional<ConnectivityCertificate> certificate;
  std::optional<Eigen::MatrixXd> weights;
  std::size_t horizon = 0;
  bool rank_condition_satisfied = false;
  std::vector<ControllerOutcome> controllers;
  /// Totals reported by the lowest-index controller that produced one; NaN if none did.
  double recovered_supply_total = 0.0;
  double recovered_demand_total = 0.0;
  /// Ground truth kept by the harness for diagnostics; controllers never see it.
  double true_supply_total = 0.0;
  double true_demand_total = 0.0;
  double max_supply_deviation = 0.0;
  double max_demand_deviation = 0.0;
  bool unanimous = false;
  std::optional<Verdict> consensus_verdict;
  std::vector<Eigen::VectorXd> supply_trajectory;
  std::vector<Eigen::VectorXd> demand_trajectory;
  AuditCounters audit;
  /// Set when the period could not run at all, e.g. "infeasible_topology: ...".
  std::string error;

  bool decode_failed() const;
};

/// One decision period: agent builds the graph, weights are fixed or synthesized,
/// K+1 synchronous rounds run for supply and demand, each controller decodes its
/// own observations and votes. Throws InfeasibleTopology or SynthesisFailure.
DecisionRecord run_period(const Scenario& scenario, const CommunicationAgent& agent, DecodeMode mode,
                          const DecisionPeriod& period, const EngineOptions& options = {});

/// Runs `periods` consecutive periods; a failing period is recorded and the campaign continues.
std::vector<DecisionRecord> run_campaign(const Scenario& scenario, std::size_t periods,
                                         const CommunicationAgent& agent, DecodeMode mode,
                                         const EngineOptions& options = {});

}  // namespace mgnet
