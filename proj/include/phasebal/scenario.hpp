#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "phasebal/control.hpp"
#include "phasebal/model.hpp"
#include "phasebal/sim.hpp"

namespace phasebal {

/// Malformed input: bad JSON, wrong field types, unknown preset or field.
class ConfigParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that does not describe a usable scenario.
class ConfigValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scenario as seen at the user boundary: headings in degrees, everything
/// else in SI units.
struct ScenarioConfig {
  std::string seed_name;
  std::vector<double> theta0_deg;
  std::vector<Point> r0;  // empty: agents at (2(k-1), 0)
  std::vector<double> gains;
  double omega0 = 0.0;
  LawKind law = LawKind::balance;
  IntegratorSettings integrator;

  // Analysis knobs.
  std::optional<double> sigma;
  std::optional<double> rho;
  std::optional<double> target_deg;
  std::optional<double> c;

  std::size_t n() const { return theta0_deg.size(); }
  std::vector<double> theta0_rad() const;
  std::vector<Point> positions() const;

  /// Throws ConfigValidationError.
  void validate() const;
  Scenario to_scenario() const;
};

std::vector<std::string> preset_names();

/// Frozen fixture by name. Throws ConfigParseError for unknown names.
ScenarioConfig preset(std::string_view name);

/// Overlay the fields of a flat JSON object onto `base`. A "preset" field,
/// if present, replaces `base` before the other fields apply.
ScenarioConfig merge_json(const nlohmann::json& doc, ScenarioConfig base = {});

ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base = {});

/// Echo of the scenario for reports, in the same flat format merge_json reads.
nlohmann::json to_json(const ScenarioConfig& cfg);

}  // namespace phasebal
