#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "mgnet/errors.hpp"
#include "mgnet/graph.hpp"

namespace mgnet {
namespace {

// Unit-capacity flow network where every node v is split into in(v) = 2v and
// out(v) = 2v+1 joined by a capacity-1 arc; graph edges become unbounded arcs.
class SplitNetwork {
 public:
  SplitNetwork(const Graph& g, Node s, Node t) : size_(2 * g.node_count()), adj_(size_) {
    constexpr int kInf = std::numeric_limits<int>::max() / 2;
    for (Node v = 0; v < g.node_count(); ++v)
      add_arc(in(v), out(v), (v == s || v == t) ? kInf : 1);
    for (const auto& [a, b] : g.edges()) {
      add_arc(out(a), in(b), kInf);
      add_arc(out(b), in(a), kInf);
    }
  }

  static std::size_t in(Node v) { return 2 * v; }
  static std::size_t out(Node v) { return 2 * v + 1; }

  std::size_t max_flow(std::size_t source, std::size_t sink) {
    std::size_t flow = 0;
    while (augment(source, sink)) ++flow;
    return flow;
  }

  std::vector<char> residual_reachable(std::size_t source) const {
    std::vector<char> seen(size_, 0);
    std::deque<std::size_t> queue{source};
    seen[source] = 1;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (auto idx : adj_[v]) {
        const auto& a = arcs_[idx];
        if (a.cap > 0 && !seen[a.to]) {
          seen[a.to] = 1;
          queue.push_back(a.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    int cap;
  };

  void add_arc(std::size_t from, std::size_t to, int cap) {
    adj_[from].push_back(arcs_.size());
    arcs_.push_back({to, cap});
    adj_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0});
  }

  // One BFS augmenting path; every s-t path through a split node carries one unit.
  bool augment(std::size_t source, std::size_t sink) {
    constexpr auto kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> via(size_, kNone);
    std::vector<char> seen(size_, 0);
    std::deque<std::size_t> queue{source};
    seen[source] = 1;
    while (!queue.empty() && !seen[sink]) {
      auto v = queue.front();
      queue.pop_front();
      for (auto idx : adj_[v]) {
        const auto& a = arcs_[idx];
        if (a.cap > 0 && !seen[a.to]) {
          seen[a.to] = 1;
          via[a.to] = idx;
          queue.push_back(a.to);
        }
      }
    }
    if (!seen[sink]) return false;
    for (auto v = sink; v != source;) {
      auto idx = via[v];
      arcs_[idx].cap -= 1;
      arcs_[idx ^ 1].cap += 1;
      v = arcs_[idx ^ 1].to;
    }
    return true;
  }

  std::size_t size_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Arc> arcs_;
};

}  // namespace

std::size_t local_vertex_connectivity(const Graph& g, Node s, Node t, std::vector<Node>* min_cut) {
  if (s == t || g.has_edge(s, t))
    throw InvalidArgument("local connectivity needs distinct non-adjacent nodes");
  SplitNetwork net(g, s, t);
  const auto flow = net.max_flow(SplitNetwork::out(s), SplitNetwork::in(t));
  if (min_cut) {
    const auto reach = net.residual_reachable(SplitNetwork::out(s));
    min_cut->clear();
    for (Node v = 0; v < g.node_count(); ++v)
      if (reach[SplitNetwork::in(v)] && !reach[SplitNetwork::out(v)]) min_cut->push_back(v);
  }
  return flow;
}

ConnectivityCertificate vertex_connectivity(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 2)
    throw InvalidGraph("vertex connectivity needs at least 2 nodes, got " + std::to_string(n));
  if (g.is_complete()) return {n - 1, std::nullopt};

  // Some node among the first kappa+1 lies outside any minimum cut, so pairs whose
  // smaller index is <= the running best suffice.
  std::size_t best = n - 1;
  std::vector<Node> best_cut;
  std::vector<Node> cut;
  for (Node i = 0; i < n && i <= best; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      if (g.has_edge(i, j)) continue;
      const auto k = local_vertex_connectivity(g, i, j, &cut);
      // Non-complete graphs have kappa <= n-2, so the first pair always lands here.
      if (k < best) {
        best = k;
        best_cut = cut;
      }
      if (best == 0) return {0, std::vector<Node>{}};
    }
  }
  std::sort(best_cut.begin(), best_cut.end());
  return {best, best_cut};
}

}  // namespace mgnet
