#pragma once

#include <string>
#include <vector>

#include "mgnet/scenario.hpp"
#include "mgnet/simulator.hpp"

namespace mgnet {

/// Full diagnostics for one period as a JSON object.
std::string to_json(const DecisionRecord& record);

/// {"scenario": ..., "mode": ..., "records": [...]} for a whole campaign.
std::string campaign_json(const Scenario& scenario, const std::vector<DecisionRecord>& records);

/// Columns step,controller,quantity,value.
std::string trajectory_csv(const DecisionRecord& record);

/// Columns period,mode,controller,quantity,estimate,true_total,deviation,verdict.
std::string estimates_csv(const std::vector<DecisionRecord>& records);

}  // namespace mgnet
