#include "mgnet/records.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace mgnet {
namespace {

using nlohmann::json;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json decode_json(const DecodeResult& d) {
  return {{"initial_values", std::vector<double>(d.initial_values.data(), d.initial_values.data() + d.initial_values.size())},
          {"total", d.total},
          {"consistent_fault_sets", d.consistent_fault_sets},
          {"residual", d.residual},
          {"condition_number", number_or_null(d.condition_number)},
          {"ill_conditioned", d.ill_conditioned},
          {"unidentifiable_candidates", d.unidentifiable_candidates}};
}

json record_json(const DecisionRecord& r) {
  json j;
  j["period"] = {{"index", r.period.index}, {"period_hours", r.period.period_hours}};
  j["mode"] = std::string(to_string(r.mode));
  if (!r.error.empty()) j["error"] = r.error;
  j["horizon"] = r.horizon;
  j["rank_condition_satisfied"] = r.rank_condition_satisfied;
  if (r.graph) {
    j["graph"] = {{"node_count", r.graph->node_count()}, {"edges", r.graph->edges()}};
  }
  if (r.certificate) {
    j["connectivity"] = {{"kappa", r.certificate->kappa},
                         {"witness_cut", r.certificate->witness_cut ? json(*r.certificate->witness_cut) : json(nullptr)}};
  }
  if (r.weights) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < r.weights->rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < r.weights->cols(); ++k) row.push_back((*r.weights)(i, k));
      rows.push_back(row);
    }
    j["weights"] = rows;
  }
  j["controllers"] = json::array();
  for (const auto& c : r.controllers) {
    json cj{{"id", c.id}, {"verdict", std::string(to_string(c.verdict))}};
    cj["supply_total"] = c.supply_total ? json(*c.supply_total) : json(nullptr);
    cj["demand_total"] = c.demand_total ? json(*c.demand_total) : json(nullptr);
    if (c.supply_decode) cj["supply_decode"] = decode_json(*c.supply_decode);
    if (c.demand_decode) cj["demand_decode"] = decode_json(*c.demand_decode);
    if (!c.error.empty()) cj["error"] = c.error;
    j["controllers"].push_back(cj);
  }
  j["recovered_supply_total"] = number_or_null(r.recovered_supply_total);
  j["recovered_demand_total"] = number_or_null(r.recovered_demand_total);
  j["true_supply_total"] = r.true_supply_total;
  j["true_demand_total"] = r.true_demand_total;
  j["max_supply_deviation"] = r.max_supply_deviation;
  j["max_demand_deviation"] = r.max_demand_deviation;
  // Relative 1e-6 matches the decoder's agreement tolerance.
  const bool accurate =
      r.max_supply_deviation <= 1e-6 * std::max(1.0, std::abs(r.true_supply_total)) &&
      r.max_demand_deviation <= 1e-6 * std::max(1.0, std::abs(r.true_demand_total));
  j["totals_accurate"] = !r.decode_failed() && accurate;
  j["unanimous"] = r.unanimous;
  j["consensus_verdict"] = r.consensus_verdict ? json(std::string(to_string(*r.consensus_verdict))) : json(nullptr);
  j["audit"] = {{"messages_delivered", r.audit.messages_delivered},
                {"locality_violations", r.audit.locality_violations},
                {"profile_reads", r.audit.profile_reads},
                {"profile_violations", r.audit.profile_violations},
                {"agent_requests", r.audit.agent_requests}};
  return j;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_json(const DecisionRecord& record) { return record_json(record).dump(2) + "\n"; }

std::string campaign_json(const Scenario& scenario, const std::vector<DecisionRecord>& records) {
  json j;
  j["scenario"] = json::parse(to_json(scenario));
  j["records"] = json::array();
  for (const auto& r : records) j["records"].push_back(record_json(r));
  return j.dump(2) + "\n";
}

std::string trajectory_csv(const DecisionRecord& record) {
  std::string out = "step,controller,quantity,value\n";
  for (auto q : {Quantity::supply, Quantity::demand}) {
    const auto& traj = q == Quantity::supply ? record.supply_trajectory : record.demand_trajectory;
    for (std::size_t k = 0; k < traj.size(); ++k)
      for (Eigen::Index i = 0; i < traj[k].size(); ++i)
        out += std::to_string(k) + "," + std::to_string(i) + "," + std::string(to_string(q)) + "," +
               fmt17(traj[k](i)) + "\n";
  }
  return out;
}

std::string estimates_csv(const std::vector<DecisionRecord>& records) {
  std::string out = "period,mode,controller,quantity,estimate,true_total,deviation,verdict\n";
  for (const auto& r : records) {
    for (const auto& c : r.controllers) {
      for (auto q : {Quantity::supply, Quantity::demand}) {
        const auto& est = q == Quantity::supply ? c.supply_total : c.demand_total;
        const double truth = q == Quantity::supply ? r.true_supply_total : r.true_demand_total;
        out += std::to_string(r.period.index) + "," + std::string(to_string(r.mode)) + "," + std::to_string(c.id) +
               "," + std::string(to_string(q)) + "," + (est ? fmt17(*est) : "") + "," + fmt17(truth) + "," +
               (est ? fmt17(*est - truth) : "") + "," + std::string(to_string(c.verdict)) + "\n";
      }
    }
  }
  return out;
}

}  // namespace mgnet
