#include "mgnet/generators.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mgnet/errors.hpp"

namespace mgnet {
namespace {

// Fisher-Yates with the portable index sampler so outputs do not depend on the STL.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[uniform_index(rng, i)]);
}

std::vector<Node> sample_without_replacement(std::vector<Node> pool, std::size_t m, Rng& rng) {
  for (std::size_t i = 0; i < m; ++i) std::swap(pool[i], pool[i + uniform_index(rng, pool.size() - i)]);
  pool.resize(m);
  std::sort(pool.begin(), pool.end());
  return pool;
}

void certify(const Graph& g, std::size_t f, const char* who) {
  if (g.node_count() < 2 * f + 2) return;
  const auto cert = vertex_connectivity(g);
  if (cert.kappa < 2 * f + 1)
    throw InternalInvariant(std::string(who) + ": generated graph has connectivity " +
                            std::to_string(cert.kappa) + " < " + std::to_string(2 * f + 1));
}

}  // namespace

Graph extend_graph(const Graph& g, const std::vector<Node>& targets) {
  const std::size_t n = g.node_count();
  if (targets.empty()) throw InvalidArgument("extension needs at least one target");
  if (targets.size() > n)
    throw InvalidArgument("cannot pick " + std::to_string(targets.size()) + " distinct targets among " +
                          std::to_string(n) + " nodes");
  auto sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("extension targets are not distinct");
  if (sorted.back() >= n)
    throw InvalidArgument("extension target " + std::to_string(sorted.back()) + " out of range");

  Graph out(n + 1, g.edges());
  for (Node t : sorted) out.add_edge(n, t);
  return out;
}

Graph extend_graph(const Graph& g, std::size_t m, Rng& rng) {
  if (m == 0 || m > g.node_count())
    throw InvalidArgument("cannot pick " + std::to_string(m) + " distinct targets among " +
                          std::to_string(g.node_count()) + " nodes");
  std::vector<Node> pool(g.node_count());
  std::iota(pool.begin(), pool.end(), Node{0});
  return extend_graph(g, sample_without_replacement(std::move(pool), m, rng));
}

Graph generate_preventive(std::size_t n, std::size_t f, Rng& rng) {
  const std::size_t m = 2 * f + 1;
  if (n < m)
    throw InfeasibleTopology("preventive topology needs n >= 2f+1 = " + std::to_string(m) +
                             ", got n = " + std::to_string(n));

  // Build in insertion order; the clique members and extension order are then
  // scattered over the final labels by one random permutation, which covers both
  // the random seed-node choice and the final reordering.
  Graph g = Graph::complete(m);
  while (g.node_count() < n) g = extend_graph(g, m, rng);

  std::vector<Node> perm(n);
  std::iota(perm.begin(), perm.end(), Node{0});
  shuffle(perm, rng);
  g = g.relabeled(perm);

  certify(g, f, "generate_preventive");
  return g;
}

Graph generate_responsive(std::size_t n, std::size_t f, const LinkAttackSet& attacks, Rng& rng) {
  const std::size_t m = 2 * f + 1;
  if (n < m)
    throw InfeasibleTopology("responsive topology needs n >= 2f+1 = " + std::to_string(m) +
                             ", got n = " + std::to_string(n));
  attacks.validate(n);

  std::vector<Node> clean;
  for (Node v = 0; v < n; ++v)
    if (!attacks.touches(v)) clean.push_back(v);
  if (clean.size() < m)
    throw InfeasibleTopology("step 1: only " + std::to_string(clean.size()) +
                             " nodes have no attacked link, need 2f+1 = " + std::to_string(m));

  const auto seeds = sample_without_replacement(clean, m, rng);
  Graph g(n);
  for (std::size_t a = 0; a < seeds.size(); ++a)
    for (std::size_t b = a + 1; b < seeds.size(); ++b) g.add_edge(seeds[a], seeds[b]);

  std::vector<Node> placed = seeds;
  std::vector<Node> remaining;
  for (Node v = 0; v < n; ++v)
    if (!std::binary_search(seeds.begin(), seeds.end(), v)) remaining.push_back(v);

  auto safe_targets = [&](Node v) {
    std::vector<Node> out;
    for (Node p : placed)
      if (!attacks.contains(v, p)) out.push_back(p);
    return out;
  };

  std::size_t step = 0;
  while (!remaining.empty()) {
    ++step;
    std::vector<std::size_t> ready;
    for (std::size_t r = 0; r < remaining.size(); ++r)
      if (safe_targets(remaining[r]).size() >= m) ready.push_back(r);
    if (ready.empty())
      throw InfeasibleTopology("step 3, extension " + std::to_string(step) + ": none of the " +
                               std::to_string(remaining.size()) +
                               " remaining nodes has 2f+1 = " + std::to_string(m) +
                               " safe links to the graph built so far");

    const auto pick = ready[uniform_index(rng, ready.size())];
    const Node v = remaining[pick];
    for (Node t : sample_without_replacement(safe_targets(v), m, rng)) g.add_edge(v, t);
    placed.push_back(v);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }

  for (const auto& e : attacks.forbidden_edges)
    if (g.has_edge(e.first, e.second))
      throw InternalInvariant("generate_responsive used a forbidden link");
  certify(g, f, "generate_responsive");
  return g;
}

}  // namespace mgnet
