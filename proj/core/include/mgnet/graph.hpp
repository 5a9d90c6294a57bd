#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace mgnet {

using Node = std::size_t;
using Edge = std::pair<Node, Node>;

/// Normalizes an unordered pair so that first < second.
Edge make_edge(Node a, Node b);

/// Undirected simple graph over nodes 0..node_count-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count);
  /// Throws InvalidArgument on self-loops or out-of-range endpoints; duplicates collapse.
  Graph(std::size_t node_count, const std::vector<Edge>& edges);

  static Graph complete(std::size_t node_count);
  static Graph cycle(std::size_t node_count);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const;

  void add_edge(Node a, Node b);
  bool has_edge(Node a, Node b) const;
  bool is_complete() const;

  /// Sorted neighbor list of `i`.
  std::vector<Node> neighbors(Node i) const;
  std::size_t degree(Node i) const;

  /// All edges as (i, j) with i < j, lexicographically sorted.
  std::vector<Edge> edges() const;

  /// Connected after removing `removed`. An empty remainder counts as connected.
  bool connected_without(const std::vector<Node>& removed = {}) const;

  /// Graph whose node `v` becomes `perm[v]`.
  Graph relabeled(const std::vector<Node>& perm) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_node(Node i) const;

  std::vector<std::set<Node>> adjacency_;
};

/// Communication links known to be compromised.
struct LinkAttackSet {
  std::set<Edge> forbidden_edges;

  bool contains(Node a, Node b) const { return forbidden_edges.count(make_edge(a, b)) != 0; }
  bool touches(Node v) const;
  void validate(std::size_t node_count) const;
};

struct ConnectivityCertificate {
  std::size_t kappa = 0;
  /// Minimum vertex cut; absent only for complete graphs.
  std::optional<std::vector<Node>> witness_cut;
};

/// Exact vertex-connectivity via node-split max-flow over non-adjacent pairs.
ConnectivityCertificate vertex_connectivity(const Graph& g);

/// Local connectivity: max number of internally vertex-disjoint s-t paths, s and t non-adjacent.
std::size_t local_vertex_connectivity(const Graph& g, Node s, Node t,
                                      std::vector<Node>* min_cut = nullptr);

}  // namespace mgnet
