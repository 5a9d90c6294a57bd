#include "mgnet/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "mgnet/errors.hpp"

namespace mgnet {

Edge make_edge(Node a, Node b) { return a < b ? Edge{a, b} : Edge{b, a}; }

Graph::Graph(std::size_t node_count) : adjacency_(node_count) {}

Graph::Graph(std::size_t node_count, const std::vector<Edge>& edges) : adjacency_(node_count) {
  for (const auto& [a, b] : edges) add_edge(a, b);
}

Graph Graph::complete(std::size_t node_count) {
  Graph g(node_count);
  for (Node i = 0; i < node_count; ++i)
    for (Node j = i + 1; j < node_count; ++j) g.add_edge(i, j);
  return g;
}

Graph Graph::cycle(std::size_t node_count) {
  Graph g(node_count);
  if (node_count < 3) throw InvalidArgument("cycle needs at least 3 nodes");
  for (Node i = 0; i < node_count; ++i) g.add_edge(i, (i + 1) % node_count);
  return g;
}

void Graph::check_node(Node i) const {
  if (i >= node_count())
    throw InvalidArgument("node " + std::to_string(i) + " out of range for graph with " +
                          std::to_string(node_count()) + " nodes");
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency_) twice += adj.size();
  return twice / 2;
}

void Graph::add_edge(Node a, Node b) {
  check_node(a);
  check_node(b);
  if (a == b) throw InvalidArgument("self-loop on node " + std::to_string(a));
  adjacency_[a].insert(b);
  adjacency_[b].insert(a);
}

bool Graph::has_edge(Node a, Node b) const {
  check_node(a);
  check_node(b);
  return adjacency_[a].count(b) != 0;
}

bool Graph::is_complete() const {
  const std::size_t n = node_count();
  return std::all_of(adjacency_.begin(), adjacency_.end(),
                     [n](const auto& adj) { return adj.size() + 1 == n; });
}

std::vector<Node> Graph::neighbors(Node i) const {
  check_node(i);
  return {adjacency_[i].begin(), adjacency_[i].end()};
}

std::size_t Graph::degree(Node i) const {
  check_node(i);
  return adjacency_[i].size();
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (Node i = 0; i < node_count(); ++i)
    for (Node j : adjacency_[i])
      if (i < j) out.emplace_back(i, j);
  return out;
}

bool Graph::connected_without(const std::vector<Node>& removed) const {
  std::vector<char> gone(node_count(), 0);
  for (Node r : removed) {
    check_node(r);
    gone[r] = 1;
  }
  auto start = std::find(gone.begin(), gone.end(), 0);
  if (start == gone.end()) return true;

  std::vector<char> seen(gone);
  std::deque<Node> queue{static_cast<Node>(start - gone.begin())};
  seen[queue.front()] = 1;
  while (!queue.empty()) {
    Node v = queue.front();
    queue.pop_front();
    for (Node w : adjacency_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

Graph Graph::relabeled(const std::vector<Node>& perm) const {
  if (perm.size() != node_count()) throw InvalidArgument("permutation size mismatch");
  std::vector<char> hit(perm.size(), 0);
  for (Node p : perm) {
    if (p >= perm.size() || hit[p]) throw InvalidArgument("not a permutation");
    hit[p] = 1;
  }
  Graph out(node_count());
  for (const auto& [a, b] : edges()) out.add_edge(perm[a], perm[b]);
  return out;
}

bool LinkAttackSet::touches(Node v) const {
  return std::any_of(forbidden_edges.begin(), forbidden_edges.end(),
                     [v](const Edge& e) { return e.first == v || e.second == v; });
}

void LinkAttackSet::validate(std::size_t node_count) const {
  for (const auto& [a, b] : forbidden_edges) {
    if (a == b || a >= node_count || b >= node_count)
      throw InvalidArgument("attacked link (" + std::to_string(a) + "," + std::to_string(b) +
                            ") is not a pair over " + std::to_string(node_count) + " nodes");
  }
}

}  // namespace mgnet
