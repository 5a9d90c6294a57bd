#include <algorithm>
#include <string>

#include "mgnet/consensus.hpp"
#include "mgnet/errors.hpp"

namespace mgnet {
namespace {

Eigen::MatrixXd selector_matrix(const NodeSet& selector, std::size_t n) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(selector.size()),
                                            static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < selector.size(); ++r)
    c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(selector[r])) = 1.0;
  return c;
}

// O_{i,L} = [C_i; O_{i,L-1} W] and M_{i,L}^F = [0 0; O_{i,L-1} B_F  M_{i,L-1}^F].
Eigen::MatrixXd fault_matrix_for(const Eigen::MatrixXd& c, const Eigen::MatrixXd& w,
                                 const NodeSet& set, std::size_t horizon) {
  const auto rows = c.rows();
  const auto f = static_cast<Eigen::Index>(set.size());
  Eigen::MatrixXd obs = c;
  Eigen::MatrixXd m(rows, 0);
  for (std::size_t level = 1; level <= horizon; ++level) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(obs.rows() + rows, m.cols() + f);
    for (Eigen::Index col = 0; col < f; ++col)
      next.block(rows, col, obs.rows(), 1) = obs.col(static_cast<Eigen::Index>(set[col]));
    next.bottomRightCorner(m.rows(), m.cols()) = m;
    m = std::move(next);

    Eigen::MatrixXd grown(obs.rows() + rows, obs.cols());
    grown << c, obs * w;
    obs = std::move(grown);
  }
  return m;
}

Eigen::MatrixXd observability_for(const Eigen::MatrixXd& c, const Eigen::MatrixXd& w,
                                  std::size_t horizon) {
  Eigen::MatrixXd obs = c;
  for (std::size_t level = 1; level <= horizon; ++level) {
    Eigen::MatrixXd grown(obs.rows() + c.rows(), obs.cols());
    grown << c, obs * w;
    obs = std::move(grown);
  }
  return obs;
}

std::optional<std::size_t> smallest_horizon(const WeightMatrix& w, std::size_t set_size,
                                            std::size_t k_max, double threshold) {
  const auto n = w.size();
  const auto sets = subsets_by_size(n, std::min(set_size, n), std::min(set_size, n));
  for (std::size_t k = 1; k <= k_max; ++k) {
    bool holds = true;
    for (Node i = 0; i < n && holds; ++i) {
      const auto c = selector_matrix(observation_selector(w.graph(), i), n);
      const auto obs = observability_for(c, w.entries(), k);
      for (const auto& set : sets) {
        const auto m = fault_matrix_for(c, w.entries(), set, k);
        Eigen::MatrixXd joint(obs.rows(), obs.cols() + m.cols());
        joint << obs, m;
        if (numerical_rank(joint, threshold) != n + numerical_rank(m, threshold)) {
          holds = false;
          break;
        }
      }
    }
    if (holds) return k;
  }
  return std::nullopt;
}

}  // namespace

NodeSet observation_selector(const Graph& g, Node observer) {
  NodeSet sel{observer};
  for (Node j : g.neighbors(observer)) sel.push_back(j);
  return sel;
}

std::vector<NodeSet> subsets_by_size(std::size_t n, std::size_t lo, std::size_t hi) {
  std::vector<NodeSet> out;
  for (std::size_t size = lo; size <= std::min(hi, n); ++size) {
    NodeSet cur(size);
    for (std::size_t i = 0; i < size; ++i) cur[i] = i;
    while (true) {
      out.push_back(cur);
      // Advance to the next combination in lexicographic order.
      std::size_t pos = size;
      while (pos > 0 && cur[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++cur[pos - 1];
      for (std::size_t j = pos; j < size; ++j) cur[j] = cur[j - 1] + 1;
    }
  }
  return out;
}

std::size_t numerical_rank(const Eigen::MatrixXd& m, double relative_threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > relative_threshold * s(0)) ++rank;
  return rank;
}

const Eigen::MatrixXd& ObservabilityStack::fault_matrix(const NodeSet& set) const {
  auto it = fault_matrices.find(set);
  if (it == fault_matrices.end())
    throw InvalidArgument("observability stack has no fault matrix for the requested set");
  return it->second;
}

ObservabilityStack build_observability_stack(const WeightMatrix& w, Node observer, std::size_t horizon,
                                             const std::vector<NodeSet>& candidate_sets) {
  const auto n = w.size();
  if (observer >= n) throw InvalidArgument("observer out of range");
  ObservabilityStack stack;
  stack.observer = observer;
  stack.selector = observation_selector(w.graph(), observer);
  stack.horizon = horizon;
  stack.node_count = n;
  const auto c = selector_matrix(stack.selector, n);
  stack.observability = observability_for(c, w.entries(), horizon);
  for (auto set : candidate_sets) {
    std::sort(set.begin(), set.end());
    for (Node v : set)
      if (v >= n) throw InvalidArgument("candidate fault node out of range");
    stack.fault_matrices.emplace(set, fault_matrix_for(c, w.entries(), set, horizon));
  }
  return stack;
}

std::optional<std::size_t> verify_rank_condition(const WeightMatrix& w, std::size_t f,
                                                 std::size_t k_max, double rank_threshold) {
  return smallest_horizon(w, 2 * f, k_max, rank_threshold);
}

std::optional<std::size_t> identifiability_horizon(const WeightMatrix& w, std::size_t f,
                                                   std::size_t k_max, double rank_threshold) {
  return smallest_horizon(w, f, k_max, rank_threshold);
}

}  // namespace mgnet
