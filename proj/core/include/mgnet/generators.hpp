#pragma once

#include <cstddef>
#include <vector>

#include "mgnet/graph.hpp"
#include "mgnet/random.hpp"

namespace mgnet {

/// Adds node `g.node_count()` joined to each of `targets`.
/// Connectivity is preserved at >= targets.size() when g already had at least that much.
Graph extend_graph(const Graph& g, const std::vector<Node>& targets);

/// Same, with `m` distinct targets drawn uniformly without replacement.
Graph extend_graph(const Graph& g, std::size_t m, Rng& rng);

/// Randomized topology with vertex-connectivity >= 2f+1 (n >= 2f+2).
///
/// Seeds a clique on 2f+1 randomly chosen nodes, extends one node at a time with
/// 2f+1 random edges, then applies a uniform random relabeling. For n == 2f+1 the
/// result is the complete graph, whose connectivity is 2f. The output is certified
/// by vertex_connectivity before it is returned.
Graph generate_preventive(std::size_t n, std::size_t f, Rng& rng);

/// Topology avoiding every forbidden link, with vertex-connectivity >= 2f+1.
///
/// The seed clique uses only nodes with no attacked incident link. Throws
/// InfeasibleTopology naming the blocking step when too few clean nodes or safe
/// targets exist.
Graph generate_responsive(std::size_t n, std::size_t f, const LinkAttackSet& attacks, Rng& rng);

}  // namespace mgnet
