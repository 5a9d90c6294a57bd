#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mgnet/graph.hpp"
#include "mgnet/random.hpp"
#include "mgnet/scenario.hpp"
#include "mgnet/weights.hpp"

namespace mgnet::fixtures {

/// Support of the demonstration weight matrix, 0-indexed.
inline Graph demo_graph() {
  return Graph(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}});
}

inline Eigen::MatrixXd demo_weight_entries() {
  Eigen::MatrixXd w(6, 6);
  w << 5, 4, 1, 1, 0, 0,
       1, -3, -2, 1, 4, 0,
       -3, -3, -4, 0, 0, -3,
       -1, -2, 0, 5, -1, -3,
       0, 4, 0, 5, -1, -4,
       0, 0, -3, -1, 1, -3;
  return w;
}

inline WeightMatrix demo_weights() { return WeightMatrix(demo_weight_entries(), demo_graph()); }

inline Eigen::VectorXd demo_supply() {
  Eigen::VectorXd s(6);
  s << 24.17, 64.31, 89.19, 134.43, 49.65, 79.69;
  return s;
}

inline Eigen::VectorXd demo_demand() {
  Eigen::VectorXd d(6);
  d << 22.30, 44.72, 111.80, 89.44, 89.44, 22.36;
  return d;
}

/// Erdos-Renyi graph on n nodes with edge probability p.
inline Graph random_graph(std::size_t n, double p, Rng& rng) {
  Graph g(n);
  for (Node i = 0; i < n; ++i)
    for (Node j = i + 1; j < n; ++j)
      if (uniform_real(rng, 0.0, 1.0) < p) g.add_edge(i, j);
  return g;
}

/// Forbidden links confined to a dirty set small enough to leave 2f+1 clean nodes.
inline LinkAttackSet random_link_attack(std::size_t n, std::size_t f, Rng& rng) {
  const std::size_t max_dirty = n - (2 * f + 1);
  const std::size_t dirty = uniform_index(rng, max_dirty + 1);
  std::vector<Node> nodes(n);
  for (Node i = 0; i < n; ++i) nodes[i] = i;
  for (std::size_t i = 0; i < dirty; ++i) std::swap(nodes[i], nodes[i + uniform_index(rng, n - i)]);
  LinkAttackSet links;
  for (std::size_t a = 0; a < dirty; ++a)
    for (std::size_t b = a + 1; b < dirty; ++b)
      if (uniform_real(rng, 0.0, 1.0) < 0.6) links.forbidden_edges.insert(make_edge(nodes[a], nodes[b]));
  return links;
}

/// At most f attackers with explicit injections; half the scenarios carry known link attacks.
inline Scenario random_scenario(std::uint64_t seed, std::size_t t) {
  auto rng = derive_rng(seed, {7, t});
  Scenario s;
  s.name = "random-" + std::to_string(t);
  s.f = uniform_index(rng, 3);
  const std::size_t n = 2 * s.f + 2 + uniform_index(rng, 4);
  for (Node i = 0; i < n; ++i)
    s.microgrids.push_back({i, uniform_real(rng, 10.0, 120.0), uniform_real(rng, 5.0, 100.0), "MG" + std::to_string(i + 1)});
  s.seed = rng();
  s.period_hours = 1.0;
  std::vector<Node> nodes(n);
  for (Node i = 0; i < n; ++i) nodes[i] = i;
  const std::size_t attackers = uniform_index(rng, s.f + 1);
  for (std::size_t a = 0; a < attackers; ++a) {
    std::swap(nodes[a], nodes[a + uniform_index(rng, n - a)]);
    CompromisedController c;
    c.node = nodes[a];
    const std::size_t steps = 1 + uniform_index(rng, 3);
    for (std::size_t k = 0; k < steps; ++k) {
      c.supply.values.push_back(uniform_real(rng, -60.0, 60.0));
      c.demand.values.push_back(uniform_real(rng, -60.0, 60.0));
    }
    s.attack.controllers.push_back(c);
  }
  if (uniform_real(rng, 0.0, 1.0) < 0.5) {
    s.attack.known_to_agent = true;
    s.attack.compromised_links = random_link_attack(n, s.f, rng);
  }
  return s;
}

}  // namespace mgnet::fixtures
