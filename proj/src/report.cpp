#include "phasebal/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "phasebal/angles.hpp"
#include "phasebal/errors.hpp"

namespace phasebal {

using nlohmann::json;

std::string format_number(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

void write_trace_csv(std::ostream& os, const SimulationTrace& trace) {
  if (trace.samples.empty()) return;
  const std::size_t n = trace.samples.front().state.size();
  os << 't';
  for (const char* prefix : {"x", "y", "theta"}) {
    for (std::size_t k = 1; k <= n; ++k) os << ',' << prefix << k;
  }
  os << ",p_mag,psi";
  for (std::size_t k = 1; k <= n; ++k) os << ",u" << k;
  os << ",conserved,xc,yc\n";

  std::string line;
  for (const auto& s : trace.samples) {
    line.clear();
    line += format_number(s.state.t());
    for (const auto& p : s.state.positions()) (line += ',') += format_number(p.x);
    for (const auto& p : s.state.positions()) (line += ',') += format_number(p.y);
    for (double th : s.state.headings()) (line += ',') += format_number(th);
    (line += ',') += format_number(s.p_mag);
    line += ',';
    if (s.psi) line += format_number(*s.psi);
    for (double u : s.u) (line += ',') += format_number(u);
    line += ',';
    if (s.conserved) line += format_number(*s.conserved);
    (line += ',') += format_number(s.centroid.x);
    (line += ',') += format_number(s.centroid.y);
    line += '\n';
    os << line;
  }
}

json angle_json(double rad) {
  return {{"rad", rad}, {"deg", rad_to_deg(rad)}, {"wrapped_deg", rad_to_deg(wrap_to_pi(rad))}};
}

json interval_json(const Interval& in) {
  const std::string text = std::string(in.lo_closed ? "[" : "(") +
                           format_number(rad_to_deg(in.lo)) + ", " +
                           format_number(rad_to_deg(in.hi)) + (in.hi_closed ? "]" : ")");
  return {{"lo_rad", in.lo},       {"hi_rad", in.hi},         {"lo_deg", rad_to_deg(in.lo)},
          {"hi_deg", rad_to_deg(in.hi)}, {"lo_closed", in.lo_closed}, {"hi_closed", in.hi_closed},
          {"text_deg", text}};
}

json out_of_scope(const std::string& reason) {
  return {{"status", "outside_proven_scope"}, {"reason", reason}};
}

namespace {

json undefined(const std::string& reason) {
  return {{"status", "undefined"}, {"reason", reason}};
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json assumption1_json(const Assumption1Report& r) {
  json j{{"ok", r.ok}, {"message", r.message}};
  if (r.violating_pair) {
    j["violating_pair"] = {r.violating_pair->first + 1, r.violating_pair->second + 1};
  }
  return j;
}

json condition_json(const ConditionReport& r) { return {{"ok", r.ok}, {"message", r.message}}; }

// Evaluate one analysis item, turning scope and definition failures into
// structured records.
template <class F>
json guarded(F&& f) {
  try {
    return f();
  } catch (const OutOfScopeError& e) {
    return out_of_scope(e.what());
  } catch (const UndefinedPhaseError& e) {
    return undefined(e.what());
  } catch (const std::domain_error& e) {
    return undefined(e.what());
  } catch (const std::invalid_argument& e) {
    return undefined(e.what());
  }
}

std::vector<double> sorted_separations_deg(const std::vector<double>& headings) {
  std::vector<double> w;
  for (double th : headings) w.push_back(wrap_to_two_pi(th));
  std::sort(w.begin(), w.end());
  std::vector<double> gaps;
  for (std::size_t k = 1; k < w.size(); ++k) gaps.push_back(rad_to_deg(w[k] - w[k - 1]));
  gaps.push_back(rad_to_deg(w.front() + kTwoPi - w.back()));
  return gaps;
}

}  // namespace

json validation_flags(const ScenarioConfig& cfg) {
  json j;
  json warnings = json::array();
  const GainVector gains(cfg.gains);
  json t1;
  auto add = [&](const char* name, Theorem1Mode mode) {
    const auto r = validate_theorem1_condition(gains, mode);
    t1[name] = condition_json(r);
    return r.ok;
  };
  const bool pos = add("all_positive", Theorem1Mode::all_positive);
  const bool zeros = add("allow_zeros", Theorem1Mode::allow_zeros);
  bool two = false;
  if (cfg.n() == 2) two = add("two_agent_sum", Theorem1Mode::two_agent_sum);
  j["theorem1"] = t1;
  if (!pos && !zeros && !two) {
    warnings.push_back("gains satisfy none of the sufficient conditions for balancing");
  }

  try {
    const auto a1 = validate_assumption1(partition_subgroups(cfg.theta0_rad()), gains);
    j["assumption1"] = assumption1_json(a1);
    if (!a1.ok) warnings.push_back("gain ordering: " + a1.message);
  } catch (const UndefinedPhaseError& e) {
    j["assumption1"] = undefined(e.what());
  } catch (const std::invalid_argument& e) {
    j["assumption1"] = undefined(e.what());
  }
  j["warnings"] = warnings;
  return j;
}

json analysis_report(const ScenarioConfig& cfg) {
  const auto theta0 = cfg.theta0_rad();
  const GainVector gains(cfg.gains);
  json j;

  j["shifted_headings"] = guarded([&] {
    const auto s = shifted_headings(theta0);
    json a = json::array();
    for (double v : s.theta_tilde) a.push_back(angle_json(v));
    return json{{"status", "ok"}, {"theta_tilde", a}};
  });

  j["reference_direction"] = guarded([&] {
    const auto r = predict_reference_direction(theta0, gains);
    json finals = json::array();
    for (double v : r.predicted_final_headings) finals.push_back(angle_json(v));
    json out{{"status", "ok"},
             {"theta_f", angle_json(r.reference_direction)},
             {"regime", std::string(to_string(r.regime))},
             {"admissible_interval", interval_json(r.interval)},
             {"lambda", r.lambda},
             {"predicted_final_headings", finals}};
    if (r.assumption1) out["assumption1"] = assumption1_json(*r.assumption1);
    return out;
  });

  j["reachable_interval"] = guarded([&] {
    json out = interval_json(reachable_interval(theta0));
    out["status"] = "ok";
    return out;
  });

  if (cfg.sigma) {
    j["perturbation_bounds"] = guarded([&] {
      const auto b = perturbation_bounds(theta0, *cfg.sigma);
      return json{{"status", "ok"},
                  {"sigma", *cfg.sigma},
                  {"mean_direction", angle_json(b.mean_direction)},
                  {"lower_deviation_rad", b.lower_deviation},
                  {"upper_deviation_rad", b.upper_deviation},
                  {"raw", interval_json(b.raw)},
                  {"bounded", interval_json(b.bounded)}};
    });
  }

  if (cfg.n() == 2) {
    const auto r0 = cfg.positions();
    j["convergence_point"] = guarded([&] {
      const auto p = convergence_point(theta0, r0, gains);
      return json{{"status", "ok"},
                  {"x", p.x_c_inf},
                  {"y", p.y_c_inf},
                  {"dx", p.dx},
                  {"dy", p.dy},
                  {"quadrature_error_estimate", p.quadrature_error_estimate}};
    });
    if (cfg.rho) {
      j["locus"] = guarded([&] {
        const Point anchor{0.5 * (r0[0].x + r0[1].x), 0.5 * (r0[0].y + r0[1].y)};
        const auto l = locus_line(theta0, *cfg.rho, anchor);
        json out{{"status", "ok"},
                 {"rho", *cfg.rho},
                 {"anchor", {l.anchor.x, l.anchor.y}},
                 {"h1", l.h1},
                 {"h2", l.h2},
                 {"vertical", l.vertical},
                 {"slope", finite_or_null(l.slope)},
                 {"direction", angle_json(l.direction)}};
        // Line perpendicular to the locus, followed by the balanced agents.
        if (!l.vertical && l.slope != 0.0) out["perpendicular_slope"] = -1.0 / l.slope;
        return out;
      });
    }
  }
  return j;
}

json run_report(const ScenarioConfig& cfg, const SimulationTrace& trace) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "run";
  j["scenario"] = to_json(cfg);
  j["outcome"] = std::string(to_string(trace.outcome));
  j["t_end"] = trace.t_end;
  j["final_residual"] = trace.final_residual;
  j["samples"] = trace.samples.size();

  const auto& last = trace.final_sample();
  const auto& th = last.state.headings();
  // Steady headings are compared in the frame rotating at omega0.
  std::vector<double> steady(th.size());
  for (std::size_t k = 0; k < th.size(); ++k) steady[k] = th[k] - trace.omega0 * last.state.t();

  json wrapped = json::array();
  for (double v : th) wrapped.push_back(rad_to_deg(wrap_to_pi(v)));
  j["final_headings_rad"] = th;
  j["final_headings_deg"] = wrapped;
  j["final_p_mag"] = last.p_mag;
  j["final_centroid"] = {last.centroid.x, last.centroid.y};
  j["consecutive_separations_deg"] = sorted_separations_deg(steady);
  j["theta_f_sim"] = angle_json(steady[0]);
  j["validation"] = validation_flags(cfg);

  if (trace.omega0 != 0.0) {
    json centers = json::array();
    for (std::size_t k = 0; k < th.size(); ++k) {
      const auto c = circle_center(last.state, k, trace.omega0);
      centers.push_back({c.x, c.y});
    }
    j["circle_centers"] = centers;
  }

  if (trace.law == LawKind::balance) {
    json analysis = analysis_report(cfg);
    json deltas;
    const auto& ref = analysis["reference_direction"];
    if (ref.value("status", "") == "ok") {
      const double pred = ref["theta_f"]["rad"].get<double>();
      j["theta_f_pred"] = angle_json(pred);
      deltas["theta_f_rad"] = pred - steady[0];
      json per = json::array();
      const auto& finals = ref["predicted_final_headings"];
      for (std::size_t k = 0; k < steady.size(); ++k) {
        per.push_back(finals[k]["rad"].get<double>() - steady[k]);
      }
      deltas["final_headings_rad"] = per;
    }
    if (analysis.contains("convergence_point") &&
        analysis["convergence_point"].value("status", "") == "ok" && trace.omega0 == 0.0) {
      deltas["convergence_point"] = {
          analysis["convergence_point"]["x"].get<double>() - last.centroid.x,
          analysis["convergence_point"]["y"].get<double>() - last.centroid.y};
    }
    if (!trace.converged()) deltas["note"] = "run did not converge; deltas refer to the final sample";
    analysis["deltas"] = deltas;
    j["analysis"] = analysis;
  }
  return j;
}

json synthesis_json(const SynthesisResult& res, double target) {
  return {{"status", "ok"},
          {"target", angle_json(target)},
          {"gains", res.gains.values()},
          {"route", std::string(to_string(res.route))},
          {"c", res.c},
          {"sigma", res.sigma},
          {"alpha_or_beta", res.alpha_or_beta},
          {"rotation", angle_json(res.rotation)},
          {"assumption1_ok", res.route == SynthesisRoute::convex_interior
                                 ? json(res.assumption1_ok)
                                 : json(nullptr)}};
}

}  // namespace phasebal
