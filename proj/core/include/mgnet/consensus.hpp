#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mgnet/graph.hpp"
#include "mgnet/weights.hpp"

namespace mgnet {

using NodeSet = std::vector<Node>;

/// Additive attacker input u_i^k for the compromised nodes, k = 0..horizon-1.
struct InjectionSchedule {
  NodeSet faulty_nodes;
  /// values[r][k] is the injection at faulty_nodes[r] on step k.
  std::vector<std::vector<double>> values;
  std::size_t horizon = 0;

  static InjectionSchedule none(std::size_t horizon) { return {{}, {}, horizon}; }

  double at(Node i, std::size_t k) const;
  /// Copy extended with zero injections up to `k` steps; throws if it would drop nonzero values.
  InjectionSchedule with_horizon(std::size_t k) const;
  /// Checks shapes, node range, distinct nodes and |F| <= fault_bound.
  void validate(std::size_t node_count, std::optional<std::size_t> fault_bound = std::nullopt) const;
};

/// S^{k+1} = W S^k + B_F u^k, summed in ascending neighbor order. Returns S^0..S^K.
std::vector<Eigen::VectorXd> run_updates(const WeightMatrix& w, const Eigen::VectorXd& initial,
                                         const InjectionSchedule& injection, std::size_t horizon);

/// Metropolis averaging with the same injection hook; returns S^0..S^steps.
std::vector<Eigen::VectorXd> run_average_consensus_baseline(const Graph& g,
                                                            const Eigen::VectorXd& initial,
                                                            const InjectionSchedule& injection,
                                                            std::size_t steps);

/// Observer followed by its neighbors, ascending.
NodeSet observation_selector(const Graph& g, Node observer);

struct ObservationRecord {
  Node observer = 0;
  NodeSet selector;
  /// samples[k] = C_i S^k.
  std::vector<Eigen::VectorXd> samples;

  static ObservationRecord from_trajectory(const Graph& g, Node observer,
                                           const std::vector<Eigen::VectorXd>& states);
  /// [y^0; y^1; ...; y^K].
  Eigen::VectorXd stacked() const;
  std::size_t horizon() const { return samples.empty() ? 0 : samples.size() - 1; }
};

/// O_{i,K} and the fault matrices M_{i,K}^F for a list of candidate sets.
struct ObservabilityStack {
  Node observer = 0;
  NodeSet selector;
  std::size_t horizon = 0;
  std::size_t node_count = 0;
  Eigen::MatrixXd observability;
  std::map<NodeSet, Eigen::MatrixXd> fault_matrices;

  const Eigen::MatrixXd& fault_matrix(const NodeSet& set) const;
};

ObservabilityStack build_observability_stack(const WeightMatrix& w, Node observer, std::size_t horizon,
                                             const std::vector<NodeSet>& candidate_sets);

/// All subsets of {0..n-1} with size lo..hi, by size then lexicographic.
std::vector<NodeSet> subsets_by_size(std::size_t n, std::size_t lo, std::size_t hi);

/// Numerical rank: singular values above threshold * largest.
std::size_t numerical_rank(const Eigen::MatrixXd& m, double relative_threshold = 1e-9);

/// Smallest K <= k_max such that rank([O M^Y]) = N + rank(M^Y) for every observer
/// and every node set Y of size 2f (clamped to N). Empty when no such K exists.
std::optional<std::size_t> verify_rank_condition(const WeightMatrix& w, std::size_t f,
                                                 std::size_t k_max,
                                                 double rank_threshold = 1e-9);

/// Same sweep over sets of size exactly f: the condition for decoding with a known fault set.
std::optional<std::size_t> identifiability_horizon(const WeightMatrix& w, std::size_t f,
                                                   std::size_t k_max,
                                                   double rank_threshold = 1e-9);

struct DecodeOptions {
  double residual_tolerance = 1e-8;
  double agreement_tolerance = 1e-6;
  double rank_threshold = 1e-9;
  double condition_threshold = 1e10;

  friend bool operator==(const DecodeOptions&, const DecodeOptions&) = default;
};

struct DecodeResult {
  Eigen::VectorXd initial_values;
  double total = 0.0;
  std::vector<NodeSet> consistent_fault_sets;
  double residual = 0.0;
  double condition_number = 0.0;
  bool ill_conditioned = false;
  /// Consistent candidates that could not pin down S^0 and were left out of the agreement check.
  std::size_t unidentifiable_candidates = 0;
};

/// Joint least squares for (S^0, u) given the fault set. Throws DecodeInconsistency
/// when the relative residual exceeds the tolerance or S^0 is not identifiable.
DecodeResult decode_known_faults(const ObservabilityStack& stack, const ObservationRecord& obs,
                                 const NodeSet& fault_set, const DecodeOptions& options = {});

/// Tries every fault set of size <= f (the stack must contain them all). Throws
/// DecodeFailure if none is consistent and InternalInvariant if consistent sets disagree.
DecodeResult decode_unknown_faults(const ObservabilityStack& stack, const ObservationRecord& obs,
                                   std::size_t f, const DecodeOptions& options = {});

std::string to_json(const DecodeResult& result);

}  // namespace mgnet
