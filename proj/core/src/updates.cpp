#include <algorithm>
#include <string>

#include "mgnet/consensus.hpp"
#include "mgnet/errors.hpp"

namespace mgnet {

double InjectionSchedule::at(Node i, std::size_t k) const {
  for (std::size_t r = 0; r < faulty_nodes.size(); ++r)
    if (faulty_nodes[r] == i) return k < values[r].size() ? values[r][k] : 0.0;
  return 0.0;
}

InjectionSchedule InjectionSchedule::with_horizon(std::size_t k) const {
  InjectionSchedule out = *this;
  for (auto& row : out.values) {
    if (row.size() > k &&
        std::any_of(row.begin() + static_cast<std::ptrdiff_t>(k), row.end(), [](double v) { return v != 0.0; }))
      throw InvalidArgument("injection schedule has nonzero values beyond step " + std::to_string(k));
    row.resize(k, 0.0);
  }
  out.horizon = k;
  return out;
}

void InjectionSchedule::validate(std::size_t node_count, std::optional<std::size_t> fault_bound) const {
  if (values.size() != faulty_nodes.size())
    throw InvalidArgument("injection schedule needs one value row per faulty node");
  auto sorted = faulty_nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("faulty nodes are not distinct");
  for (std::size_t r = 0; r < faulty_nodes.size(); ++r) {
    if (faulty_nodes[r] >= node_count) throw InvalidArgument("faulty node out of range");
    if (values[r].size() != horizon)
      throw InvalidArgument("injection row for node " + std::to_string(faulty_nodes[r]) + " has " +
                            std::to_string(values[r].size()) + " steps, horizon is " +
                            std::to_string(horizon));
  }
  if (fault_bound && faulty_nodes.size() > *fault_bound)
    throw InvalidArgument(std::to_string(faulty_nodes.size()) + " faulty nodes exceed the bound f = " +
                          std::to_string(*fault_bound));
}

std::vector<Eigen::VectorXd> run_updates(const WeightMatrix& w, const Eigen::VectorXd& initial,
                                         const InjectionSchedule& injection, std::size_t horizon) {
  const auto n = w.size();
  if (static_cast<std::size_t>(initial.size()) != n)
    throw InvalidArgument("initial vector length does not match the weight matrix");
  if (injection.horizon != horizon)
    throw InvalidArgument("injection horizon " + std::to_string(injection.horizon) +
                          " differs from the update horizon " + std::to_string(horizon));
  injection.validate(n);

  std::vector<Eigen::VectorXd> states{initial};
  states.reserve(horizon + 1);
  for (std::size_t k = 0; k < horizon; ++k) {
    const auto& cur = states.back();
    Eigen::VectorXd next(static_cast<Eigen::Index>(n));
    for (Node i = 0; i < n; ++i) {
      // Ascending j over the support of row i, matching the distributed engine.
      double acc = 0.0;
      for (Node j = 0; j < n; ++j) {
        if (j != i && !w.graph().has_edge(i, j)) continue;
        acc += w(i, j) * cur(static_cast<Eigen::Index>(j));
      }
      next(static_cast<Eigen::Index>(i)) = acc + injection.at(i, k);
    }
    states.push_back(std::move(next));
  }
  return states;
}

std::vector<Eigen::VectorXd> run_average_consensus_baseline(const Graph& g,
                                                            const Eigen::VectorXd& initial,
                                                            const InjectionSchedule& injection,
                                                            std::size_t steps) {
  if (steps == 0) throw InvalidArgument("baseline needs at least one step");
  const auto w = metropolis_weights(g);
  return run_updates(w, initial, injection.with_horizon(steps), steps);
}

ObservationRecord ObservationRecord::from_trajectory(const Graph& g, Node observer,
                                                     const std::vector<Eigen::VectorXd>& states) {
  ObservationRecord rec;
  rec.observer = observer;
  rec.selector = observation_selector(g, observer);
  for (const auto& s : states) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(rec.selector.size()));
    for (std::size_t r = 0; r < rec.selector.size(); ++r)
      y(static_cast<Eigen::Index>(r)) = s(static_cast<Eigen::Index>(rec.selector[r]));
    rec.samples.push_back(std::move(y));
  }
  return rec;
}

Eigen::VectorXd ObservationRecord::stacked() const {
  Eigen::Index total = 0;
  for (const auto& s : samples) total += s.size();
  Eigen::VectorXd out(total);
  Eigen::Index at = 0;
  for (const auto& s : samples) {
    out.segment(at, s.size()) = s;
    at += s.size();
  }
  return out;
}

}  // namespace mgnet
