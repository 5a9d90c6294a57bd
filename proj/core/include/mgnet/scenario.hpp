#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mgnet/consensus.hpp"
#include "mgnet/graph.hpp"
#include "mgnet/random.hpp"
#include "mgnet/weights.hpp"

namespace mgnet {

struct MicrogridProfile {
  Node id = 0;
  /// Estimated supply for the period, kVA-h.
  double supply = 0.0;
  /// Estimated critical demand for the period, kVA-h.
  double critical_demand = 0.0;
  std::string label;

  friend bool operator==(const MicrogridProfile&, const MicrogridProfile&) = default;
};

struct DecisionPeriod {
  std::size_t index = 0;
  double period_hours = 1.0;

  DecisionPeriod next() const { return {index + 1, period_hours}; }
  friend bool operator==(const DecisionPeriod&, const DecisionPeriod&) = default;
};

enum class Quantity { supply, demand };
enum class Verdict { interconnect, stand_alone, undecided };

std::string_view to_string(Quantity q);
std::string_view to_string(Verdict v);

/// Interconnect iff total supply strictly exceeds total critical demand.
Verdict evaluate_criterion(double supply_total, double demand_total);

/// Either an explicit per-step value list or a distribution sampled once per step.
struct InjectionGenerator {
  std::vector<double> values;
  /// "uniform" (a, b), "normal" (mean, stddev) or "constant" (c); empty for explicit values.
  std::string distribution;
  std::vector<double> params;
  std::size_t steps = 0;

  bool is_explicit() const { return distribution.empty(); }
  std::size_t step_count() const { return is_explicit() ? values.size() : steps; }
  friend bool operator==(const InjectionGenerator&, const InjectionGenerator&) = default;
};

struct CompromisedController {
  Node node = 0;
  InjectionGenerator supply;
  InjectionGenerator demand;

  const InjectionGenerator& generator(Quantity q) const { return q == Quantity::supply ? supply : demand; }
  friend bool operator==(const CompromisedController&, const CompromisedController&) = default;
};

struct AttackSpec {
  std::vector<CompromisedController> controllers;
  LinkAttackSet compromised_links;
  /// Link attacks identified: the agent builds a responsive topology instead of a preventive one.
  bool known_to_agent = false;

  NodeSet compromised_nodes() const;
  /// Longest declared injection run over all controllers and both quantities.
  std::size_t injection_steps() const;
  friend bool operator==(const AttackSpec& a, const AttackSpec& b) {
    return a.controllers == b.controllers &&
           a.compromised_links.forbidden_edges == b.compromised_links.forbidden_edges &&
           a.known_to_agent == b.known_to_agent;
  }
};

/// Draws the injection schedule for one quantity. Explicit lists pass through;
/// distributions draw one value per node per step from `rng`. The schedule is
/// padded with zeros to `steps`. Throws ConfigError on an unknown distribution.
InjectionSchedule sample_injections(const AttackSpec& spec, Quantity quantity, std::size_t steps, Rng& rng);

struct ConsensusSettings {
  /// Defaults to N + 2 when absent.
  std::optional<std::size_t> k_max;
  DecodeOptions decode;
  std::size_t synthesis_attempts = 50;
  std::size_t baseline_steps = 30;

  friend bool operator==(const ConsensusSettings&, const ConsensusSettings&) = default;
};

struct Scenario {
  std::string name;
  std::vector<MicrogridProfile> microgrids;
  AttackSpec attack;
  std::size_t f = 0;
  double period_hours = 1.0;
  std::uint64_t seed = 0;
  ConsensusSettings consensus;
  /// Pins the communication graph instead of asking the agent for one.
  std::optional<Graph> fixed_graph;
  /// Pins the weight matrix instead of synthesizing one.
  std::optional<Eigen::MatrixXd> weights;
  bool regenerate_graph_per_period = true;

  std::size_t node_count() const { return microgrids.size(); }
  std::size_t k_max() const { return consensus.k_max.value_or(node_count() + 2); }
  double supply_total() const;
  double demand_total() const;
  /// Throws ConfigError naming the offending field.
  void validate() const;
};

bool operator==(const Scenario& a, const Scenario& b);

/// Parses the JSON scenario format; `origin` prefixes error messages.
Scenario parse_scenario(std::string_view text, std::string_view origin = "scenario");
Scenario load_scenario(const std::filesystem::path& path);
std::string to_json(const Scenario& scenario);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace mgnet
