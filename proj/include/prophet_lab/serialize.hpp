#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "prophet_lab/alpha.hpp"
#include "prophet_lab/engine.hpp"
#include "prophet_lab/model.hpp"
#include "prophet_lab/optimize.hpp"
#include "prophet_lab/strategies.hpp"

namespace prophet_lab {

using Json = nlohmann::ordered_json;

// Nearest double to the 9-significant-digit decimal rendering of v.
// Idempotent, so serialized numbers survive a parse/serialize cycle.
double round9(double v);
// 9 significant digits, '.' separator, independent of the C locale.
std::string format9(double v);

// Loaders throw ConfigurationError on unreadable files, malformed JSON or
// content that fails validation.
Instance instance_from_json(const Json& j);
Json to_json(const Instance& instance);
Instance load_instance(const std::string& path);

ScheduleFamily schedule_family_from_json(const Json& j);
Json to_json(const ScheduleFamily& family);
ScheduleFamily load_schedule_family(const std::string& path);

AlphaTable alpha_table_from_json(const Json& j);
Json to_json(const AlphaTable& table);
AlphaTable load_alpha_table(const std::string& path);

// Reals are written through round9; parsing a serialized report and writing
// it again gives identical text.
Json to_json(const SimulationReport& report);
SimulationReport simulation_report_from_json(const Json& j);
std::string csv_header(const SimulationReport&);
std::string csv_row(const SimulationReport& report);

Json to_json(const ExactReport& report);
Json to_json(const OptResult& result);
Json to_json(const TunedSchedule& tuned);
Json to_json(const AlphaEstimate& estimate);

// Header "lambda,curve,x_star,value" and one row per point.
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points);

}  // namespace prophet_lab
