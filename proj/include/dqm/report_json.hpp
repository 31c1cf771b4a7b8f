#ifndef DQM_REPORT_JSON_HPP
#define DQM_REPORT_JSON_HPP

#include <json.hpp>

#include "dqm/baselines.hpp"
#include "dqm/degrade.hpp"
#include "dqm/quality.hpp"

// JSON envelopes for all reports. Field names are stable; every report
// carries "schema": 1. Non-finite measure values serialize as null with a
// boolean flag alongside explaining why.

namespace dqm {

nlohmann::ordered_json to_json(const MeasureConfig& cfg);
nlohmann::ordered_json to_json(const QualityReport& report);
nlohmann::ordered_json to_json(const ExactReport& report);
nlohmann::ordered_json to_json(const baselines::BaselineReport& report);
nlohmann::ordered_json to_json(const ExactApproxTable& table);
nlohmann::ordered_json to_json(const DegradeSpec& spec);

}  // namespace dqm

#endif  // DQM_REPORT_JSON_HPP
