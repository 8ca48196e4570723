#pragma once

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "phasebal/analysis.hpp"
#include "phasebal/scenario.hpp"
#include "phasebal/sim.hpp"

namespace phasebal {

inline constexpr int kSchemaVersion = 1;

/// Shortest locale-independent text with 17 significant digits.
std::string format_number(double v);

/// One row per recorded sample; see the README for the column layout.
void write_trace_csv(std::ostream& os, const SimulationTrace& trace);

/// {"rad": unwrapped, "deg": unwrapped degrees, "wrapped_deg": (-180, 180]}
nlohmann::json angle_json(double rad);
nlohmann::json interval_json(const Interval& in);

/// Gain-condition checks for the scenario. Advisory only.
nlohmann::json validation_flags(const ScenarioConfig& cfg);

/// Closed-form predictions for the scenario. Items that fall outside the
/// proven regime are reported as {"status": "outside_proven_scope", ...}
/// rather than raised.
nlohmann::json analysis_report(const ScenarioConfig& cfg);

nlohmann::json run_report(const ScenarioConfig& cfg, const SimulationTrace& trace);

nlohmann::json synthesis_json(const SynthesisResult& res, double target);

nlohmann::json out_of_scope(const std::string& reason);

}  // namespace phasebal
