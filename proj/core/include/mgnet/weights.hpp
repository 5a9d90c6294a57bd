#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "mgnet/graph.hpp"
#include "mgnet/random.hpp"

namespace mgnet {

/// Update matrix W whose off-diagonal support lies inside the graph's edges.
class WeightMatrix {
 public:
  /// Throws InvalidArgument when the shape, finiteness or zero pattern is violated.
  WeightMatrix(Eigen::MatrixXd entries, Graph graph);

  /// Graph implied by the off-diagonal nonzeros (i ~ j iff w_ij != 0 or w_ji != 0).
  static WeightMatrix from_matrix(Eigen::MatrixXd entries);

  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  const Graph& graph() const { return graph_; }
  double operator()(Node i, Node j) const { return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }

 private:
  Eigen::MatrixXd entries_;
  Graph graph_;
};

/// Metropolis weights: w_ij = 1/(1+max(deg_i,deg_j)) on edges, w_ii = 1 - sum_j w_ij.
WeightMatrix metropolis_weights(const Graph& g);

/// Dense row-major CSV with 17 significant digits; parse_weight_csv infers the graph.
std::string to_weight_csv(const WeightMatrix& w);
WeightMatrix parse_weight_csv(std::string_view text);

struct SynthesisOptions {
  std::size_t max_attempts = 50;
  /// Sampled magnitudes below this are redrawn.
  double dead_zone = 1e-3;
  double rank_threshold = 1e-9;
};

struct SynthesizedWeights {
  WeightMatrix weights;
  /// Smallest horizon meeting the rank condition.
  std::size_t horizon;
  std::size_t attempts;
};

/// Draws diagonal and neighbor weights i.i.d. uniform on [-1, 1] outside the dead
/// zone until the rank condition for fault bound `f` holds at some K <= k_max.
/// Throws SynthesisFailure once the attempts run out.
SynthesizedWeights synthesize_weights(const Graph& g, std::size_t f, std::size_t k_max, Rng& rng,
                                      const SynthesisOptions& options = {});

}  // namespace mgnet
