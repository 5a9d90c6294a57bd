#include "mgnet/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "mgnet/errors.hpp"
#include "mgnet/generators.hpp"

namespace mgnet {
namespace {

enum StreamTag : std::uint64_t { kTopology = 1, kWeights = 2, kSupplyInjection = 3, kDemandInjection = 4 };

}  // namespace

std::string_view to_string(CommunicationAgent::Strategy s) {
  return s == CommunicationAgent::Strategy::preventive ? "preventive" : "responsive";
}

std::string_view to_string(DecodeMode m) {
  switch (m) {
    case DecodeMode::known_faults: return "resilient-known";
    case DecodeMode::unknown_faults: return "resilient-unknown";
    case DecodeMode::baseline: return "baseline";
  }
  return "baseline";
}

CommunicationAgent CommunicationAgent::for_attack(const AttackSpec& attack, std::size_t f, std::uint64_t seed) {
  return {attack.known_to_agent ? Strategy::responsive : Strategy::preventive, f, seed};
}

Graph CommunicationAgent::build(const TopologyRequest& request) const {
  ++requests_served_;
  auto rng = derive_rng(seed_, {kTopology, request.period});
  if (strategy_ == Strategy::responsive)
    return generate_responsive(request.node_count, f_, request.compromised_links, rng);
  return generate_preventive(request.node_count, f_, rng);
}

const MicrogridProfile& ProfileStore::read(Node requester, Node owner) {
  ++reads_;
  if (requester != owner) ++violations_;
  return profiles_.at(owner);
}

Controller::Controller(const MicrogridProfile& own, const WeightMatrix& weights)
    : id_(own.id),
      local_supply_(own.supply),
      local_demand_(own.critical_demand),
      supply_(own.supply),
      demand_(own.critical_demand),
      selector_(observation_selector(weights.graph(), own.id)) {
  for (Node j : selector_) row_.push_back(weights(id_, j));
  inbox_.assign(selector_.size(), std::nullopt);
  supply_obs_ = {id_, selector_, {}};
  demand_obs_ = {id_, selector_, {}};
}

std::vector<Message> Controller::outgoing(std::size_t step, Quantity q) const {
  std::vector<Message> out;
  for (std::size_t r = 1; r < selector_.size(); ++r) out.push_back({id_, selector_[r], step, q, value(q)});
  return out;
}

void Controller::deliver(const Message& m) {
  if (m.receiver != id_) throw InternalInvariant("message routed to the wrong controller");
  auto it = std::find(selector_.begin() + 1, selector_.end(), m.sender);
  if (it == selector_.end())
    throw InternalInvariant("controller " + std::to_string(id_) + " received a message from non-neighbor " +
                            std::to_string(m.sender));
  auto& slot = inbox_[static_cast<std::size_t>(it - selector_.begin())];
  if (slot) throw InternalInvariant("duplicate delivery on one edge within a step");
  slot = m.value;
}

void Controller::finish_step(std::size_t step, Quantity q, bool update, double injection) {
  auto& obs = q == Quantity::supply ? supply_obs_ : demand_obs_;
  auto& own = q == Quantity::supply ? supply_ : demand_;
  if (obs.samples.size() != step) throw InternalInvariant("controller stepped out of lockstep");

  Eigen::VectorXd y(static_cast<Eigen::Index>(selector_.size()));
  y(0) = own;
  for (std::size_t r = 1; r < selector_.size(); ++r) {
    if (!inbox_[r]) throw InternalInvariant("missing message from neighbor " + std::to_string(selector_[r]));
    y(static_cast<Eigen::Index>(r)) = *inbox_[r];
  }
  obs.samples.push_back(y);

  if (update) {
    // Ascending node order over self and neighbors, like the centralized iteration.
    std::vector<std::size_t> order(selector_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return selector_[a] < selector_[b]; });
    double acc = 0.0;
    for (auto r : order) acc += row_[r] * y(static_cast<Eigen::Index>(r));
    own = acc + injection;
  }
  std::fill(inbox_.begin(), inbox_.end(), std::nullopt);
}

RoundEngine::RoundEngine(WeightMatrix weights, ProfileStore& profiles, EngineOptions options)
    : weights_(std::move(weights)), options_(options) {
  if (profiles.size() != weights_.size()) throw InvalidArgument("profile count does not match the weights");
  for (Node i = 0; i < weights_.size(); ++i) controllers_.emplace_back(profiles.read(i, i), weights_);
  audit_.profile_reads = profiles.reads();
  audit_.profile_violations = profiles.violations();
}

void RoundEngine::exchange(std::size_t step, Quantity q) {
  std::vector<Message> wire;
  for (const auto& c : controllers_) {
    auto out = c.outgoing(step, q);
    wire.insert(wire.end(), out.begin(), out.end());
  }
  // Barrier: every step-k message is delivered before anyone updates.
  for (const auto& m : wire) {
    if (!weights_.graph().has_edge(m.sender, m.receiver)) {
      ++audit_.locality_violations;
      throw InternalInvariant("message sent along a non-edge");
    }
    controllers_.at(m.receiver).deliver(m);
    ++audit_.messages_delivered;
  }
}

void RoundEngine::run(Quantity q, const InjectionSchedule& injection, std::size_t horizon) {
  const auto n = controllers_.size();
  const auto inj = injection.with_horizon(horizon);
  auto& traj = q == Quantity::supply ? supply_traj_ : demand_traj_;
  traj.clear();

  auto snapshot = [&] {
    Eigen::VectorXd s(static_cast<Eigen::Index>(n));
    for (Node i = 0; i < n; ++i) s(static_cast<Eigen::Index>(i)) = controllers_[i].value(q);
    traj.push_back(std::move(s));
  };
  snapshot();

  for (std::size_t k = 0; k <= horizon; ++k) {
    exchange(k, q);
    const bool update = k < horizon;
    auto work = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i)
        controllers_[i].finish_step(k, q, update, update ? inj.at(i, k) : 0.0);
    };
    if (options_.parallel && n > 1) {
      const std::size_t workers = std::min<std::size_t>(n, std::max(2u, std::thread::hardware_concurrency()));
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, n * w / workers, n * (w + 1) / workers);
    } else {
      work(0, n);
    }
    if (update) snapshot();
  }
}

bool DecisionRecord::decode_failed() const {
  return !error.empty() || std::any_of(controllers.begin(), controllers.end(),
                                       [](const auto& c) { return c.verdict == Verdict::undecided; });
}

namespace {

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const InfeasibleTopology*>(&e)) return "infeasible_topology";
  if (dynamic_cast<const SynthesisFailure*>(&e)) return "synthesis_failure";
  if (dynamic_cast<const DecodeFailure*>(&e)) return "decode_failure";
  if (dynamic_cast<const DecodeInconsistency*>(&e)) return "decode_inconsistency";
  if (dynamic_cast<const InternalInvariant*>(&e)) return "internal_invariant";
  if (dynamic_cast<const ConfigError*>(&e)) return "config_error";
  return "error";
}

Graph period_graph(const Scenario& s, const CommunicationAgent& agent, const DecisionPeriod& period) {
  if (s.fixed_graph) return *s.fixed_graph;
  if (s.weights) return WeightMatrix::from_matrix(*s.weights).graph();
  TopologyRequest req{s.node_count(), s.f, s.attack.compromised_links,
                      s.regenerate_graph_per_period ? period.index : 0};
  return agent.build(req);
}

}  // namespace

DecisionRecord run_period(const Scenario& scenario, const CommunicationAgent& agent, DecodeMode mode,
                          const DecisionPeriod& period, const EngineOptions& options) {
  scenario.validate();
  const auto n = scenario.node_count();
  const auto f = scenario.f;
  const auto& settings = scenario.consensus;

  DecisionRecord rec;
  rec.period = period;
  rec.mode = mode;
  rec.true_supply_total = scenario.supply_total();
  rec.true_demand_total = scenario.demand_total();

  const std::size_t requests_before = agent.requests_served();
  Graph graph = period_graph(scenario, agent, period);
  rec.graph = graph;
  if (n >= 2) rec.certificate = vertex_connectivity(graph);

  const auto injection_steps = scenario.attack.injection_steps();
  std::optional<WeightMatrix> weights;
  if (mode == DecodeMode::baseline) {
    weights = metropolis_weights(graph);
    rec.horizon = std::max(settings.baseline_steps, injection_steps);
  } else if (scenario.weights) {
    weights.emplace(*scenario.weights, graph);
    const auto thr = settings.decode.rank_threshold;
    auto k = verify_rank_condition(*weights, f, scenario.k_max(), thr);
    rec.rank_condition_satisfied = k.has_value();
    if (!k) k = identifiability_horizon(*weights, f, scenario.k_max(), thr);
    if (!k)
      throw SynthesisFailure("supplied weights cannot identify the initial values for f = " + std::to_string(f) +
                             " within K <= " + std::to_string(scenario.k_max()));
    rec.horizon = std::max(*k, injection_steps);
  } else {
    auto rng = derive_rng(scenario.seed, {kWeights, period.index});
    SynthesisOptions opts;
    opts.max_attempts = settings.synthesis_attempts;
    opts.rank_threshold = settings.decode.rank_threshold;
    auto synth = synthesize_weights(graph, f, scenario.k_max(), rng, opts);
    weights = std::move(synth.weights);
    rec.rank_condition_satisfied = true;
    rec.horizon = std::max(synth.horizon, injection_steps);
  }
  rec.weights = weights->entries();

  auto supply_rng = derive_rng(scenario.seed, {kSupplyInjection, period.index});
  auto demand_rng = derive_rng(scenario.seed, {kDemandInjection, period.index});
  const auto supply_inj = sample_injections(scenario.attack, Quantity::supply, rec.horizon, supply_rng);
  const auto demand_inj = sample_injections(scenario.attack, Quantity::demand, rec.horizon, demand_rng);

  ProfileStore profiles(scenario.microgrids);
  RoundEngine engine(*weights, profiles, options);
  engine.run(Quantity::supply, supply_inj, rec.horizon);
  engine.run(Quantity::demand, demand_inj, rec.horizon);
  rec.supply_trajectory = engine.trajectory(Quantity::supply);
  rec.demand_trajectory = engine.trajectory(Quantity::demand);
  rec.audit = engine.audit();
  rec.audit.agent_requests = agent.requests_served() - requests_before;

  std::vector<NodeSet> candidates;
  if (mode == DecodeMode::known_faults) candidates = {scenario.attack.compromised_nodes()};
  if (mode == DecodeMode::unknown_faults) candidates = subsets_by_size(n, 0, f);

  for (const auto& c : engine.controllers()) {
    ControllerOutcome out;
    out.id = c.id();
    try {
      if (mode == DecodeMode::baseline) {
        out.supply_total = static_cast<double>(n) * c.value(Quantity::supply);
        out.demand_total = static_cast<double>(n) * c.value(Quantity::demand);
      } else {
        const auto stack = build_observability_stack(*weights, c.id(), rec.horizon, candidates);
        auto decode = [&](Quantity q) {
          return mode == DecodeMode::known_faults
                     ? decode_known_faults(stack, c.observation(q), candidates.front(), settings.decode)
                     : decode_unknown_faults(stack, c.observation(q), f, settings.decode);
        };
        out.supply_decode = decode(Quantity::supply);
        out.demand_decode = decode(Quantity::demand);
        out.supply_total = out.supply_decode->total;
        out.demand_total = out.demand_decode->total;
      }
      out.verdict = evaluate_criterion(*out.supply_total, *out.demand_total);
    } catch (const DecodeFailure& e) {
      out.error = error_kind(e) + ": " + e.what();
    } catch (const DecodeInconsistency& e) {
      out.error = error_kind(e) + ": " + e.what();
    } catch (const InternalInvariant& e) {
      out.error = error_kind(e) + ": " + e.what();
    }
    rec.controllers.push_back(std::move(out));
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  rec.recovered_supply_total = nan;
  rec.recovered_demand_total = nan;
  for (const auto& c : rec.controllers) {
    if (!c.supply_total) continue;
    if (std::isnan(rec.recovered_supply_total)) {
      rec.recovered_supply_total = *c.supply_total;
      rec.recovered_demand_total = *c.demand_total;
    }
    rec.max_supply_deviation = std::max(rec.max_supply_deviation, std::abs(*c.supply_total - rec.true_supply_total));
    rec.max_demand_deviation = std::max(rec.max_demand_deviation, std::abs(*c.demand_total - rec.true_demand_total));
  }
  const auto first = rec.controllers.front().verdict;
  rec.unanimous = first != Verdict::undecided &&
                  std::all_of(rec.controllers.begin(), rec.controllers.end(),
                              [first](const auto& c) { return c.verdict == first; });
  if (rec.unanimous) rec.consensus_verdict = first;
  return rec;
}

std::vector<DecisionRecord> run_campaign(const Scenario& scenario, std::size_t periods,
                                         const CommunicationAgent& agent, DecodeMode mode,
                                         const EngineOptions& options) {
  if (periods == 0) throw InvalidArgument("a campaign needs at least one period");
  std::vector<DecisionRecord> out;
  DecisionPeriod period{0, scenario.period_hours};
  for (std::size_t p = 0; p < periods; ++p, period = period.next()) {
    try {
      out.push_back(run_period(scenario, agent, mode, period, options));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      DecisionRecord rec;
      rec.period = period;
      rec.mode = mode;
      rec.true_supply_total = scenario.supply_total();
      rec.true_demand_total = scenario.demand_total();
      rec.error = error_kind(e) + ": " + e.what();
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace mgnet
