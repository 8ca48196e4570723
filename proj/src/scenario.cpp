#include "phasebal/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include "phasebal/angles.hpp"

namespace phasebal {

using nlohmann::json;

std::vector<double> ScenarioConfig::theta0_rad() const {
  std::vector<double> out(theta0_deg.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = deg_to_rad(theta0_deg[k]);
  return out;
}

std::vector<Point> ScenarioConfig::positions() const {
  if (!r0.empty()) return r0;
  std::vector<Point> out(n());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {2.0 * static_cast<double>(k), 0.0};
  return out;
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigValidationError(m); };
  if (n() < 2) fail("need at least 2 initial headings (theta0_deg)");
  if (gains.size() != n()) {
    fail("gains has " + std::to_string(gains.size()) + " entries for " + std::to_string(n()) +
         " agents");
  }
  if (!r0.empty() && r0.size() != n()) {
    fail("r0 has " + std::to_string(r0.size()) + " positions for " + std::to_string(n()) +
         " agents");
  }
  for (double v : theta0_deg) {
    if (!std::isfinite(v)) fail("non-finite initial heading");
  }
  for (double v : gains) {
    if (!std::isfinite(v)) fail("non-finite gain");
  }
  for (const auto& p : r0) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail("non-finite initial position");
  }
  if (!std::isfinite(omega0)) fail("non-finite omega0");
  if (sigma && !(*sigma >= 0.0 && *sigma < 1.0)) fail("sigma must lie in [0, 1)");
  if (c && !(*c > 0.0 && std::isfinite(*c))) fail("c must be > 0");
  if (rho && !std::isfinite(*rho)) fail("non-finite rho");
  if (target_deg && !std::isfinite(*target_deg)) fail("non-finite target");
  try {
    integrator.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

Scenario ScenarioConfig::to_scenario() const {
  validate();
  return {SwarmState(0.0, positions(), theta0_rad()), ControlLaw{law, omega0, GainVector(gains)},
          integrator};
}

namespace {

ScenarioConfig make(std::string name, std::vector<double> theta0, std::vector<double> gains,
                    std::vector<Point> r0 = {}) {
  ScenarioConfig c;
  c.seed_name = std::move(name);
  c.theta0_deg = std::move(theta0);
  c.gains = std::move(gains);
  c.r0 = std::move(r0);
  return c;
}

const std::vector<Point> kTwoAgentStart{{-1.0, -2.0}, {5.0, -2.0}};

const std::map<std::string, ScenarioConfig, std::less<>>& fixtures() {
  static const auto table = [] {
    std::map<std::string, ScenarioConfig, std::less<>> t;
    t["example1"] = make("example1", {-90, -60, -30, 0, 30, 60, 90}, {2, 1, 0, 0, 0, 1, 2});
    t["example2a"] = make("example2a", {0, 30, 60}, {2, 3, 6});
    t["example2b"] = make("example2b", {0, 30, 60}, {6, 3, 1});
    t["example3a"] = make("example3a", {0, 120}, {3, -1}, kTwoAgentStart);
    t["example3b"] = make("example3b", {0, 120}, {-3, 5}, kTwoAgentStart);
    auto ex4 = make("example4", {0, 120}, {1, 1}, kTwoAgentStart);
    ex4.rho = 1.0;
    t["example4"] = ex4;
    t["fig5"] = make("fig5", {0, 30, 60}, {-0.5, 4, 7});
    auto splay = make("splay10", {-150, -95, -40, -20, 15, 50, 70, 110, 140, 175},
                      {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    splay.law = LawKind::splay;
    t["splay10"] = splay;
    return t;
  }();
  return table;
}

const std::map<std::string, std::string, std::less<>> kAliases{{"example2", "example2a"},
                                                               {"example3", "example3a"}};

std::vector<double> number_list(const json& v, const char* field) {
  if (!v.is_array()) throw ConfigParseError(std::string(field) + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigParseError(std::string(field) + ": expected numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

double number(const json& v, const char* field) {
  if (!v.is_number()) throw ConfigParseError(std::string(field) + ": expected a number");
  return v.get<double>();
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, cfg] : fixtures()) out.push_back(name);
  return out;
}

ScenarioConfig preset(std::string_view name) {
  if (auto a = kAliases.find(name); a != kAliases.end()) name = a->second;
  const auto& t = fixtures();
  auto it = t.find(name);
  if (it == t.end()) {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigParseError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
  }
  return it->second;
}

ScenarioConfig merge_json(const json& doc, ScenarioConfig base) {
  if (!doc.is_object()) throw ConfigParseError("config: top level must be a JSON object");
  ScenarioConfig c = std::move(base);
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw ConfigParseError("preset: expected a string");
    c = preset(doc["preset"].get<std::string>());
  }
  for (const auto& [key, v] : doc.items()) {
    if (key == "preset") continue;
    if (key == "seed_name") {
      if (!v.is_string()) throw ConfigParseError("seed_name: expected a string");
      c.seed_name = v.get<std::string>();
    } else if (key == "theta0_deg") {
      c.theta0_deg = number_list(v, "theta0_deg");
    } else if (key == "gains") {
      c.gains = number_list(v, "gains");
    } else if (key == "r0") {
      if (!v.is_array()) throw ConfigParseError("r0: expected an array of [x, y] pairs");
      c.r0.clear();
      for (const auto& p : v) {
        const auto xy = number_list(p, "r0");
        if (xy.size() != 2) throw ConfigParseError("r0: each position needs exactly two numbers");
        c.r0.push_back({xy[0], xy[1]});
      }
    } else if (key == "omega0") {
      c.omega0 = number(v, "omega0");
    } else if (key == "law") {
      const auto s = v.is_string() ? v.get<std::string>() : std::string();
      if (s == "balance") {
        c.law = LawKind::balance;
      } else if (s == "splay") {
        c.law = LawKind::splay;
      } else {
        throw ConfigParseError("law: expected \"balance\" or \"splay\"");
      }
    } else if (key == "method") {
      const auto s = v.is_string() ? v.get<std::string>() : std::string();
      if (s == "rk4") {
        c.integrator.method = Method::rk4;
      } else if (s == "euler") {
        c.integrator.method = Method::euler;
      } else {
        throw ConfigParseError("method: expected \"rk4\" or \"euler\"");
      }
    } else if (key == "dt") {
      c.integrator.dt = number(v, "dt");
    } else if (key == "t_max") {
      c.integrator.t_max = number(v, "t_max");
    } else if (key == "tol") {
      c.integrator.balance_tol = number(v, "tol");
    } else if (key == "record_stride") {
      if (!v.is_number_unsigned()) throw ConfigParseError("record_stride: expected a positive integer");
      c.integrator.record_stride = v.get<std::size_t>();
    } else if (key == "sigma") {
      c.sigma = number(v, "sigma");
    } else if (key == "rho") {
      c.rho = number(v, "rho");
    } else if (key == "target_deg") {
      c.target_deg = number(v, "target_deg");
    } else if (key == "c") {
      c.c = number(v, "c");
    } else {
      throw ConfigParseError("unknown config field '" + key + "'");
    }
  }
  return c;
}

ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigParseError(path + ": " + e.what());
  }
  return merge_json(doc, std::move(base));
}

json to_json(const ScenarioConfig& cfg) {
  json j;
  if (!cfg.seed_name.empty()) j["seed_name"] = cfg.seed_name;
  j["theta0_deg"] = cfg.theta0_deg;
  json r0 = json::array();
  for (const auto& p : cfg.positions()) r0.push_back({p.x, p.y});
  j["r0"] = r0;
  j["gains"] = cfg.gains;
  j["omega0"] = cfg.omega0;
  j["law"] = std::string(to_string(cfg.law));
  j["method"] = std::string(to_string(cfg.integrator.method));
  j["dt"] = cfg.integrator.dt;
  j["t_max"] = cfg.integrator.t_max;
  j["tol"] = cfg.integrator.balance_tol;
  j["record_stride"] = cfg.integrator.record_stride;
  if (cfg.sigma) j["sigma"] = *cfg.sigma;
  if (cfg.rho) j["rho"] = *cfg.rho;
  if (cfg.target_deg) j["target_deg"] = *cfg.target_deg;
  if (cfg.c) j["c"] = *cfg.c;
  return j;
}

}  // namespace phasebal
