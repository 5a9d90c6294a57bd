#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mgnet/consensus.hpp"
#include "mgnet/errors.hpp"

namespace mgnet {
namespace {

struct Solve {
  Eigen::VectorXd initial;
  double residual;
  double condition;
  bool identifiable;
};

std::string describe(const NodeSet& set) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < set.size(); ++i) out << (i ? "," : "") << set[i];
  out << '}';
  return out.str();
}

Solve solve_joint(const ObservabilityStack& stack, const Eigen::VectorXd& y, const NodeSet& set,
                  double threshold) {
  const auto& obs = stack.observability;
  const auto& m = stack.fault_matrix(set);
  if (y.size() != obs.rows())
    throw InvalidArgument("observation length " + std::to_string(y.size()) +
                          " does not match the stack (" + std::to_string(obs.rows()) + " rows)");
  Eigen::MatrixXd joint(obs.rows(), obs.cols() + m.cols());
  joint << obs, m;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(joint);
  const auto& s = svd.singularValues();
  std::size_t rank = 0;
  double smallest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold * s(0)) {
      ++rank;
      smallest = s(i);
    }
  }
  const double condition = rank == 0 ? std::numeric_limits<double>::infinity() : s(0) / smallest;

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(joint);
  cod.setThreshold(threshold);
  const Eigen::VectorXd z = cod.solve(y);
  const double scale = y.norm();
  const double abs_residual = (joint * z - y).norm();
  const double residual = scale > 0.0 ? abs_residual / scale : abs_residual;

  const bool identifiable = rank == stack.node_count + numerical_rank(m, threshold);
  return {z.head(static_cast<Eigen::Index>(stack.node_count)), residual, condition, identifiable};
}

}  // namespace

DecodeResult decode_known_faults(const ObservabilityStack& stack, const ObservationRecord& obs,
                                 const NodeSet& fault_set, const DecodeOptions& options) {
  if (obs.selector != stack.selector)
    throw InvalidArgument("observation record and stack belong to different observers");
  auto set = fault_set;
  std::sort(set.begin(), set.end());
  const auto solved = solve_joint(stack, obs.stacked(), set, options.rank_threshold);
  if (!solved.identifiable)
    throw DecodeInconsistency("fault set " + describe(set) +
                              " leaves the initial values unidentifiable at this horizon");
  if (solved.residual > options.residual_tolerance)
    throw DecodeInconsistency("fault set " + describe(set) + " leaves relative residual " +
                              std::to_string(solved.residual) + " above tolerance");
  DecodeResult out;
  out.initial_values = solved.initial;
  out.total = solved.initial.sum();
  out.consistent_fault_sets = {set};
  out.residual = solved.residual;
  out.condition_number = solved.condition;
  out.ill_conditioned = solved.condition > options.condition_threshold;
  return out;
}

DecodeResult decode_unknown_faults(const ObservabilityStack& stack, const ObservationRecord& obs,
                                   std::size_t f, const DecodeOptions& options) {
  if (obs.selector != stack.selector)
    throw InvalidArgument("observation record and stack belong to different observers");
  const auto y = obs.stacked();

  std::optional<DecodeResult> out;
  std::size_t unidentifiable = 0;
  // Every candidate is checked; the first consistent one fixes the answer.
  for (const auto& set : subsets_by_size(stack.node_count, 0, f)) {
    const auto solved = solve_joint(stack, y, set, options.rank_threshold);
    if (solved.residual > options.residual_tolerance) continue;
    if (!solved.identifiable) {
      ++unidentifiable;
      continue;
    }
    if (!out) {
      out.emplace();
      out->initial_values = solved.initial;
      out->total = solved.initial.sum();
      out->residual = solved.residual;
      out->condition_number = solved.condition;
      out->ill_conditioned = solved.condition > options.condition_threshold;
    } else {
      const double scale = std::max(out->initial_values.norm(), 1.0);
      const double gap = (solved.initial - out->initial_values).norm() / scale;
      if (gap > options.agreement_tolerance)
        throw InternalInvariant("consistent fault sets " + describe(out->consistent_fault_sets.front()) +
                                " and " + describe(set) + " disagree on the initial values (relative gap " +
                                std::to_string(gap) + "); the rank condition does not hold numerically");
      out->ill_conditioned = out->ill_conditioned || solved.condition > options.condition_threshold;
    }
    out->consistent_fault_sets.push_back(set);
  }
  if (!out)
    throw DecodeFailure("observer " + std::to_string(stack.observer) +
                        ": no fault set of size <= " + std::to_string(f) +
                        " explains the observations");
  out->unidentifiable_candidates = unidentifiable;
  return *out;
}

std::string to_json(const DecodeResult& result) {
  nlohmann::json j;
  j["initial_values"] = std::vector<double>(result.initial_values.data(),
                                            result.initial_values.data() + result.initial_values.size());
  j["total"] = result.total;
  j["consistent_fault_sets"] = result.consistent_fault_sets;
  j["residual"] = result.residual;
  j["condition_number"] = std::isfinite(result.condition_number) ? nlohmann::json(result.condition_number)
                                                                 : nlohmann::json(nullptr);
  return j.dump(2);
}

}  // namespace mgnet
