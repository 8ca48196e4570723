// phasebal: simulate and analyse heading balancing of unicycle swarms.
//
//   phasebal run        --preset example3a --out out/ex3a
//   phasebal predict    --preset example2 --gains 6,3,1
//   phasebal synthesize --preset example3 --target -90 --c 0.5 --simulate
//   phasebal sweep      --config sweep.json --jobs 4 --out out/sweep

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "phasebal/analysis.hpp"
#include "phasebal/angles.hpp"
#include "phasebal/errors.hpp"
#include "phasebal/report.hpp"
#include "phasebal/scenario.hpp"
#include "phasebal/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace phasebal;

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kValidation = 3, kBlowup = 4 };

struct Flags {
  std::string preset;
  std::string config;
  std::string out;
  std::optional<double> omega0, sigma, rho, target, c, dt, tmax, tol;
  std::vector<double> gains;
  bool simulate = false;
  unsigned jobs = 0;
  std::vector<std::string> presets;
};

ScenarioConfig apply_flags(ScenarioConfig cfg, const Flags& f) {
  if (f.omega0) cfg.omega0 = *f.omega0;
  if (!f.gains.empty()) cfg.gains = f.gains;
  if (f.sigma) cfg.sigma = f.sigma;
  if (f.rho) cfg.rho = f.rho;
  if (f.target) cfg.target_deg = f.target;
  if (f.c) cfg.c = f.c;
  if (f.dt) cfg.integrator.dt = *f.dt;
  if (f.tmax) cfg.integrator.t_max = *f.tmax;
  if (f.tol) cfg.integrator.balance_tol = *f.tol;
  return cfg;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigParseError(path + ": " + e.what());
  }
}

ScenarioConfig resolve(const Flags& f) {
  ScenarioConfig cfg;
  if (!f.preset.empty()) cfg = preset(f.preset);
  if (!f.config.empty()) {
    json doc = read_json_file(f.config);
    if (!f.preset.empty() && doc.is_object()) doc.erase("preset");
    cfg = merge_json(doc, cfg);
  }
  if (f.preset.empty() && f.config.empty()) {
    throw ConfigParseError("no scenario given; use --preset or --config");
  }
  return apply_flags(std::move(cfg), f);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

struct RunResult {
  int code = kOk;
  json summary;
};

// Simulate one scenario into `dir`. Never prints; safe to call from workers.
RunResult run_scenario(const ScenarioConfig& cfg, const fs::path& dir) {
  RunResult r;
  fs::create_directories(dir);
  const Scenario scenario = cfg.to_scenario();
  try {
    const auto trace = simulate(scenario);
    std::ofstream csv(dir / "trace.csv", std::ios::binary);
    write_trace_csv(csv, trace);
    const json report = run_report(cfg, trace);
    write_json(dir / "report.json", report);
    r.summary = {{"outcome", report["outcome"]},
                 {"t_end", report["t_end"]},
                 {"theta_f_sim_deg", report["theta_f_sim"]["deg"]}};
    if (report.contains("theta_f_pred")) r.summary["theta_f_pred_deg"] = report["theta_f_pred"]["deg"];
  } catch (const NumericalBlowup& e) {
    json report{{"schema_version", kSchemaVersion},
                {"command", "run"},
                {"scenario", to_json(cfg)},
                {"outcome", "numerical_blowup"},
                {"step", e.step()},
                {"last_good_t", e.last_good().t()},
                {"last_good_headings_rad", e.last_good().headings()},
                {"message", e.what()}};
    write_json(dir / "report.json", report);
    r.code = kBlowup;
    r.summary = {{"outcome", "numerical_blowup"}, {"message", e.what()}};
  }
  return r;
}

int cmd_run(const Flags& f) {
  const auto cfg = resolve(f);
  cfg.validate();
  const fs::path dir = f.out.empty() ? fs::path("out") : fs::path(f.out);
  const auto r = run_scenario(cfg, dir);
  std::cout << r.summary.dump() << "\n";
  if (r.code == kBlowup) std::cerr << "phasebal: " << r.summary["message"].get<std::string>() << "\n";
  return r.code;
}

int cmd_predict(const Flags& f) {
  const auto cfg = resolve(f);
  cfg.validate();
  json report{{"schema_version", kSchemaVersion},
              {"command", "predict"},
              {"scenario", to_json(cfg)},
              {"validation", validation_flags(cfg)},
              {"analysis", analysis_report(cfg)}};
  if (!f.out.empty()) {
    fs::create_directories(f.out);
    write_json(fs::path(f.out) / "report.json", report);
  }
  std::cout << report.dump(2) << "\n";
  return kOk;
}

int cmd_synthesize(const Flags& f) {
  auto cfg = resolve(f);
  if (!cfg.target_deg) throw ConfigParseError("synthesize needs --target (degrees)");
  const double c = cfg.c.value_or(1.0);
  cfg.c = c;
  // Gains are an output here; keep validation happy until they exist.
  if (cfg.gains.size() != cfg.n()) cfg.gains.assign(cfg.n(), 1.0);
  cfg.validate();

  const auto theta0 = cfg.theta0_rad();
  const double target = deg_to_rad(*cfg.target_deg);
  json report{{"schema_version", kSchemaVersion}, {"command", "synthesize"}};
  int code = kOk;
  try {
    const auto res = synthesize_gains(theta0, target, c);
    json s = synthesis_json(res, target);
    const auto check = predict_reference_direction(theta0, res.gains);
    s["round_trip"] = {{"theta_f", angle_json(check.reference_direction)},
                       {"error_rad", check.reference_direction - target}};
    cfg.gains = res.gains.values();
    if (f.simulate) {
      // theta_f does not depend on the gain scale; normalising keeps the
      // fixed-step integrator away from stiff gains.
      auto sim_cfg = cfg;
      const double scale = res.gains.max_abs();
      for (double& g : sim_cfg.gains) g /= scale;
      const fs::path dir = f.out.empty() ? fs::path("out") : fs::path(f.out);
      const auto r = run_scenario(sim_cfg, dir);
      json sim{{"gains", sim_cfg.gains}, {"summary", r.summary}};
      if (r.code == kOk) {
        const double got = deg_to_rad(r.summary["theta_f_sim_deg"].get<double>());
        sim["error_rad"] = got - target;
      }
      s["simulation"] = sim;
      code = r.code;
    }
    report["synthesis"] = s;
  } catch (const OutOfScopeError& e) {
    report["synthesis"] = out_of_scope(e.what());
  }
  report["scenario"] = to_json(cfg);
  if (!f.out.empty()) {
    fs::create_directories(f.out);
    write_json(fs::path(f.out) / (f.simulate ? "synthesis.json" : "report.json"), report);
  }
  std::cout << report.dump(2) << "\n";
  return code;
}

int cmd_sweep(const Flags& f) {
  std::vector<ScenarioConfig> configs;
  if (!f.config.empty()) {
    const json doc = read_json_file(f.config);
    if (!doc.is_object() || !doc.contains("scenarios") || !doc["scenarios"].is_array()) {
      throw ConfigParseError("sweep config needs a \"scenarios\" array");
    }
    for (const auto& s : doc["scenarios"]) configs.push_back(apply_flags(merge_json(s), f));
  }
  for (const auto& name : f.presets) configs.push_back(apply_flags(preset(name), f));
  if (configs.empty()) throw ConfigParseError("sweep: no scenarios (use --config or --presets)");
  for (const auto& c : configs) c.validate();

  const fs::path root = f.out.empty() ? fs::path("out") : fs::path(f.out);
  fs::create_directories(root);
  std::vector<RunResult> results(configs.size());
  std::vector<std::string> dirs(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    dirs[i] = std::to_string(i) + "_" + (configs[i].seed_name.empty() ? "scenario" : configs[i].seed_name);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        results[i] = run_scenario(configs[i], root / dirs[i]);
      } catch (const std::exception& e) {
        results[i] = {kFailure, {{"outcome", "error"}, {"message", e.what()}}};
      }
    }
  };
  const unsigned jobs = std::max(1u, f.jobs ? f.jobs : std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, configs.size()); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  json summary{{"schema_version", kSchemaVersion}, {"command", "sweep"}};
  json items = json::array();
  int code = kOk;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    json item = results[i].summary;
    item["index"] = i;
    item["dir"] = dirs[i];
    item["exit_code"] = results[i].code;
    items.push_back(item);
    code = std::max(code, results[i].code);
  }
  summary["scenarios"] = items;
  write_json(root / "summary.json", summary);
  std::cout << summary.dump(2) << "\n";
  return code;
}

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--preset", f.preset, "Named fixture");
  app->add_option("--config", f.config, "Flat JSON scenario file");
  app->add_option("--out", f.out, "Output directory");
  app->add_option("--omega0", f.omega0, "Constant turn rate (rad/s)");
  app->add_option("--gains", f.gains, "Comma-separated gains")->delimiter(',');
  app->add_option("--sigma", f.sigma, "Relative gain error bound in [0, 1)");
  app->add_option("--rho", f.rho, "Gain ratio K1/K2 for the locus (N = 2)");
  app->add_option("--target", f.target, "Target reference direction (deg)");
  app->add_option("--c", f.c, "Gain scale for synthesis");
  app->add_option("--dt", f.dt, "Integrator step (s)");
  app->add_option("--tmax", f.tmax, "Integration horizon (s)");
  app->add_option("--tol", f.tol, "Convergence threshold");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heading balancing of unicycle swarms with heterogeneous gains"};
  app.require_subcommand(1);
  Flags f;
  auto* run = app.add_subcommand("run", "Simulate and write trace.csv + report.json");
  auto* predict = app.add_subcommand("predict", "Closed-form analysis only");
  auto* synth = app.add_subcommand("synthesize", "Gains for a target reference direction");
  auto* sweep = app.add_subcommand("sweep", "Run many scenarios on a worker pool");
  for (auto* sub : {run, predict, synth, sweep}) add_common(sub, f);
  synth->add_flag("--simulate", f.simulate, "Verify the gains by simulation");
  sweep->add_option("--presets", f.presets, "Comma-separated preset names")->delimiter(',');
  sweep->add_option("--jobs", f.jobs, "Worker threads (default: hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (run->parsed()) return cmd_run(f);
    if (predict->parsed()) return cmd_predict(f);
    if (synth->parsed()) return cmd_synthesize(f);
    return cmd_sweep(f);
  } catch (const ConfigParseError& e) {
    std::cerr << "phasebal: " << e.what() << "\n";
    return kParse;
  } catch (const ConfigValidationError& e) {
    std::cerr << "phasebal: invalid scenario: " << e.what() << "\n";
    return kValidation;
  } catch (const NumericalBlowup& e) {
    std::cerr << "phasebal: " << e.what() << "\n";
    return kBlowup;
  } catch (const std::exception& e) {
    std::cerr << "phasebal: " << e.what() << "\n";
    return kFailure;
  }
}
