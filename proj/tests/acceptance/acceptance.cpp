// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "phasebal/analysis.hpp"
#include "phasebal/angles.hpp"
#include "phasebal/control.hpp"
#include "phasebal/errors.hpp"
#include "phasebal/model.hpp"
#include "phasebal/scenario.hpp"
#include "phasebal/sim.hpp"

using namespace phasebal;

namespace {

using Vec = std::vector<double>;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

std::string num(double v, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

Vec deg(std::initializer_list<double> d) {
  Vec out;
  for (double v : d) out.push_back(deg_to_rad(v));
  return out;
}

SimulationTrace run(const Vec& theta0, const Vec& gains, IntegratorSettings cfg = {},
                    LawKind law = LawKind::balance, double omega0 = 0.0,
                    std::vector<Point> r0 = {}) {
  if (r0.empty()) r0.resize(theta0.size());
  return simulate({SwarmState(0, r0, theta0), ControlLaw{law, omega0, GainVector(gains)}, cfg});
}

double max_drift(const SimulationTrace& tr) {
  double d = 0.0;
  for (const auto& s : tr.samples) d = std::max(d, std::abs(*s.conserved - *tr.samples.front().conserved));
  return d;
}

double max_rise_p(const SimulationTrace& tr) {
  double rise = 0.0;
  for (std::size_t i = 1; i < tr.samples.size(); ++i) {
    rise = std::max(rise, tr.samples[i].p_mag - tr.samples[i - 1].p_mag);
  }
  return rise;
}

// Shared by criteria 2, 3, 4 and 9.
struct RandomRun {
  gen::Scenario s;
  SimulationTrace trace;
};

const std::vector<RandomRun>& random_two_three() {
  static const std::vector<RandomRun> runs = [] {
    gen::Rng rng(2024);
    std::vector<RandomRun> out;
    for (int i = 0; i < 100; ++i) {
      auto s = gen::ordered_scenario(rng, i < 50 ? 2 : 3);
      auto tr = run(s.theta0, s.gains);
      out.push_back({std::move(s), std::move(tr)});
    }
    return out;
  }();
  return runs;
}

// 1
void example3(Verdict& v) {
  const auto th = deg({0, 120});
  for (auto [k1, k2, want] : {std::tuple{3.0, -1.0, -90.0}, std::tuple{-3.0, 5.0, 90.0}}) {
    const auto tr = run(th, {k1, k2}, {}, LawKind::balance, 0.0, {{-1, -2}, {5, -2}});
    v.require(tr.converged(), "run did not converge");
    const double got = rad_to_deg(detect_steady_headings(tr)[0]);
    const double pred = predict_reference_direction(th, GainVector({k1, k2})).reference_direction;
    const double oracle_pred = oracle::theta_f_from_invariant(th, {k1, k2});
    v.require(std::abs(got - want) <= 0.5, "simulated heading " + num(got, 8));
    v.require(std::abs(pred - deg_to_rad(want)) <= 1e-9, "predicted " + num(rad_to_deg(pred), 12));
    v.require(std::abs(pred - oracle_pred) <= 1e-9, "prediction vs conserved-sum oracle");
    v.detail << "K={" << k1 << "," << k2 << "}: sim " << num(got, 7) << " deg, pred " << num(rad_to_deg(pred), 12)
             << " deg; ";
  }
}

// 2
void separations(Verdict& v) {
  double worst = 0.0;
  for (const auto& r : random_two_three()) {
    v.require(r.trace.converged(), "a run did not converge");
    if (!r.trace.converged()) continue;
    const auto th = detect_steady_headings(r.trace);
    const auto n = th.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double want = 2.0 * kPi * static_cast<double>(j - i) / static_cast<double>(n);
        worst = std::max(worst, std::abs(std::remainder(th[j] - th[i] - want, 2.0 * kPi)));
      }
    }
  }
  v.require(worst <= 1e-3, "separation error " + num(worst));
  v.detail << "100 runs (50 N=2, 50 N=3), max separation error " << num(worst) << " rad";
}

// 3
void reference_direction(Verdict& v) {
  double worst = 0.0, drift = 0.0;
  for (const auto& r : random_two_three()) {
    if (!r.trace.converged()) {
      v.require(false, "a run did not converge");
      continue;
    }
    const double pred = predict_reference_direction(r.s.theta0, GainVector(r.s.gains)).reference_direction;
    worst = std::max(worst, std::abs(detect_steady_headings(r.trace)[0] - pred));
    drift = std::max(drift, max_drift(r.trace));
  }
  v.require(worst <= 1e-3, "heading error " + num(worst));
  v.require(drift < 1e-6, "conserved drift " + num(drift));
  v.detail << "max |sim - theta_f| " << num(worst) << " rad, max conserved drift " << num(drift);
}

// 4
void interval(Verdict& v) {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& r : random_two_three()) {
    if (!r.trace.converged()) continue;
    const auto in = reachable_interval(r.s.theta0);
    const double got = detect_steady_headings(r.trace)[0];
    v.require(in.contains(got), "simulated theta_f outside the interval");
    margin = std::min({margin, got - in.lo, in.hi - got});
  }
  const auto ex2 = reachable_interval(deg({0, 30, 60}));
  v.require(rad_to_deg(ex2.lo) == -180.0 && std::abs(rad_to_deg(ex2.hi)) <= 1e-12 && !ex2.lo_closed && !ex2.hi_closed,
            "Example 2 interval");

  int refused = 0, tried = 0;
  auto refuse = [&](const Vec& th, double target) {
    ++tried;
    try {
      (void)synthesize_gains(th, target, 1.0);
    } catch (const OutOfScopeError&) {
      ++refused;
    }
  };
  for (const auto& th : {deg({0, 30, 60}), deg({0, 120})}) {
    const auto sh = shifted_headings(th);
    refuse(th, sh.theta_m0);
    refuse(th, sh.theta_M0);
  }
  gen::Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto th = gen::cyclic_headings(rng, 3, 0.2);
    const auto sh = shifted_headings(th);
    refuse(th, sh.theta_m0);
    refuse(th, sh.theta_M0);
  }
  v.require(refused == tried, "an endpoint target was accepted");
  v.detail << "100 runs strictly inside (min margin " << num(margin) << " rad); Example 2 interval ("
           << rad_to_deg(ex2.lo) << ", " << rad_to_deg(ex2.hi) << "); " << refused << "/" << tried
           << " endpoint targets refused";
}

// 5
void perturbation(Verdict& v) {
  const auto th = deg({0, 30, 60});
  const double sigma = 1.0 / 3.0;
  const auto b = perturbation_bounds(th, sigma);
  v.require(std::abs(rad_to_deg(b.bounded.lo) + 180.0) < 1e-9 && !b.bounded.lo_closed &&
                std::abs(rad_to_deg(b.bounded.hi) + 45.0) < 1e-9 && b.bounded.hi_closed,
            "computed interval is not (-180, -45]");

  const auto sh = shifted_headings(th);
  const Vec nominal(3, 1.0);
  const auto [attained_lo, attained_hi] = oracle::corner_extremes(sh.theta_tilde, nominal, sigma);

  double lo = 1e300, hi = -1e300;
  bool inside = true;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      for (int k = 0; k <= 20; ++k) {
        auto s = [&](int q) { return -sigma + 2.0 * sigma * q / 20.0; };
        const Vec g{1.0 + s(i), 1.0 + s(j), 1.0 + s(k)};
        const double tf = predict_reference_direction(th, GainVector(g)).reference_direction;
        inside = inside && b.bounded.contains(tf);
        lo = std::min(lo, tf);
        hi = std::max(hi, tf);
      }
    }
  }
  v.require(inside, "a sweep point left the computed interval");
  v.require(b.raw.lo <= attained_lo + 1e-12 && b.raw.hi >= attained_hi - 1e-12, "computed interval misses a corner");
  v.require(std::abs(rad_to_deg(lo - attained_lo)) <= 2.0, "no sweep point near the lower attained bound");
  v.require(std::abs(rad_to_deg(hi - attained_hi)) <= 2.0, "no sweep point near the upper attained bound");
  v.detail << "9261 points in [" << num(rad_to_deg(lo), 6) << ", " << num(rad_to_deg(hi), 6)
           << "] deg; computed (-180, -45]; attained corner extremes " << num(rad_to_deg(attained_lo), 6) << ", "
           << num(rad_to_deg(attained_hi), 6);
}

// 6
void synthesis(Verdict& v) {
  const auto th = deg({0, 120});
  gen::Rng rng(6);
  double worst_analytic = 0.0, worst_sim = 0.0;
  int done = 0;
  IntegratorSettings cfg;
  cfg.t_max = 1000.0;
  for (int i = 0; i < 50; ++i) {
    const double target = deg_to_rad(gen::uniform(rng, -180.0, 180.0));
    const auto s = synthesize_gains(th, target, 0.5);
    const auto& g = s.gains.values();
    v.require(g[0] + g[1] > 0.0, "K1 + K2 <= 0");
    const double pred = predict_reference_direction(th, s.gains).reference_direction;
    worst_analytic = std::max(worst_analytic, std::abs(pred - target));

    const double scale = s.gains.max_abs();
    const auto tr = run(th, {g[0] / scale, g[1] / scale}, cfg);
    v.require(tr.converged(), "synthesized run did not converge");
    if (tr.converged()) worst_sim = std::max(worst_sim, std::abs(detect_steady_headings(tr)[0] - target));
    ++done;
  }
  v.require(worst_analytic <= 1e-9, "analytic round-trip " + num(worst_analytic));
  v.require(worst_sim <= 1e-3, "simulated round-trip " + num(worst_sim));
  v.detail << done << " targets, max analytic error " << num(worst_analytic) << " rad, max simulated error "
           << num(worst_sim) << " rad";
}

// 7
void closed_form(Verdict& v) {
  struct Case {
    Vec th;
    Vec k;
  };
  const std::vector<Case> cases{{deg({0, 120}), {3, -1}},  {deg({0, 120}), {-3, 5}}, {deg({0, 120}), {1, 1}},
                                {deg({10, -100}), {1, 2}}, {deg({-40, 95}), {0.5, 0.8}}};
  double worst = 0.0, limit_err = 0.0;
  IntegratorSettings cfg;
  cfg.dt = 1e-4;
  cfg.t_max = 10.0;
  cfg.record_stride = 5000;
  cfg.balance_tol = 1e-300;
  for (const auto& c : cases) {
    const auto cf = make_two_agent_closed_form(c.th[0], c.th[1], c.k[0], c.k[1]);
    const auto tr = run(c.th, c.k, cfg);
    int checked = 0;
    for (const auto& s : tr.samples) {
      if (s.state.t() == 0.0) continue;
      const auto [a, b] = two_agent_headings(cf, s.state.t());
      worst = std::max({worst, std::abs(a - s.state.headings()[0]), std::abs(b - s.state.headings()[1])});
      ++checked;
    }
    v.require(checked == 20, "expected 20 sample times, got " + std::to_string(checked));
    const auto [a, b] = two_agent_headings(cf, 1e6);
    limit_err = std::max(limit_err, std::abs((b - a) - std::copysign(kPi, cf.phi0)));
  }
  v.require(worst <= 1e-5, "closed form vs RK4 " + num(worst));
  v.require(limit_err <= 1e-9, "limit separation " + num(limit_err));
  v.detail << cases.size() << " gain pairs x 20 times, max |closed form - RK4| " << num(worst)
           << " rad, max limit error " << num(limit_err);
}

// 8
void convergence(Verdict& v) {
  const std::vector<Point> r0{{-1, -2}, {5, -2}};
  const auto th = deg({0, 120});

  double ln_err = 0.0;
  gen::Rng rng(8);
  for (int i = 0; i < 40; ++i) {
    const double a = gen::uniform(rng, -3.0, 3.0);
    const double b = a + gen::uniform(rng, 0.1, kPi - 0.1) * (i % 2 ? 1 : -1);
    const double k = gen::uniform(rng, 0.3, 3.0);
    const auto p = convergence_point(Vec{a, b}, r0, GainVector({k, k}));
    const auto [ox, oy] = oracle::equal_gain_offsets(a, b, k);
    ln_err = std::max({ln_err, std::abs(p.dx - ox), std::abs(p.dy - oy)});
  }
  v.require(ln_err <= 1e-8, "ln closed form vs quadrature " + num(ln_err));

  double sim_err = 0.0;
  IntegratorSettings cfg;
  cfg.balance_tol = 1e-10;
  for (const Vec& k : {Vec{1, 1}, Vec{3, -1}, Vec{-3, 5}, Vec{1, 2}, Vec{0.7, 0.4}}) {
    const auto tr = run(th, k, cfg, LawKind::balance, 0.0, r0);
    v.require(tr.converged(), "long-horizon run did not converge");
    const auto p = convergence_point(th, r0, GainVector(k));
    sim_err = std::max({sim_err, std::abs(tr.final_sample().centroid.x - p.x_c_inf),
                        std::abs(tr.final_sample().centroid.y - p.y_c_inf)});
  }
  v.require(sim_err <= 1e-4, "quadrature vs simulated centroid " + num(sim_err));

  const auto p = convergence_point(th, r0, GainVector({1, 1}));
  v.require(std::abs(p.dx - 0.274653) <= 1.5e-6 && std::abs(p.dy - 0.475712) <= 1.5e-6,
            "Example 4 offsets " + num(p.dx, 9) + ", " + num(p.dy, 9));

  const auto line = locus_line(th, 1.0, {2, -2});
  v.require(std::abs(line.slope - std::sqrt(3.0)) <= 1e-9, "locus slope " + num(line.slope, 12));
  const auto tr = run(th, {1, 1}, cfg, LawKind::balance, 0.0, r0);
  const double m2 = std::tan(tr.final_sample().state.headings()[0]);
  v.require(std::abs(line.slope * m2 + 1.0) <= 1e-6, "m1 m2 = " + num(line.slope * m2, 10));

  double d_eta = 0.0;
  for (double rho : {1.0, 2.0, -3.0}) {
    const double e1 = 1.0, e2 = 2.5;
    const auto a = convergence_point(th, r0, GainVector({e1, e1 / rho}));
    const auto b = convergence_point(th, r0, GainVector({e2, e2 / rho}));
    const double d1 = std::hypot(a.dx, a.dy), d2 = std::hypot(b.dx, b.dy);
    d_eta = std::max(d_eta, std::abs(d1 * e1 - d2 * e2) / (d1 * e1));
  }
  v.require(d_eta <= 1e-8, "d1 eta1 vs d2 eta2 " + num(d_eta));

  v.detail << "ln vs quadrature " << num(ln_err) << ", quadrature vs sim centroid " << num(sim_err)
           << ", Example 4 offsets (" << num(p.dx, 9) << ", " << num(p.dy, 9) << "), slope " << num(line.slope, 10)
           << ", m1 m2 " << num(line.slope * m2, 10) << ", d eta rel " << num(d_eta);
}

// 9
void monotone(Verdict& v) {
  double rise = 0.0;
  int runs = 0;
  for (const auto& r : random_two_three()) {
    rise = std::max(rise, max_rise_p(r.trace));
    ++runs;
  }
  gen::Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto s = gen::ordered_scenario(rng, static_cast<std::size_t>(4 + i % 4));
    IntegratorSettings cfg;
    cfg.record_stride = 1;
    cfg.t_max = 60.0;
    rise = std::max(rise, max_rise_p(run(s.theta0, s.gains, cfg, LawKind::balance, i % 2 ? 0.2 : 0.0)));
    ++runs;
  }
  for (const char* name : {"example1", "example2a", "example2b"}) {
    for (double w : {0.0, 0.2}) {
      auto c = preset(name);
      c.omega0 = w;
      c.integrator.record_stride = 1;
      rise = std::max(rise, max_rise_p(simulate(c.to_scenario())));
      ++runs;
    }
  }
  v.require(rise <= 1e-9, "|p| rose by " + num(rise));
  v.detail << runs << " runs, largest step-to-step rise of |p| " << num(rise);
}

// 10
void rotating(Verdict& v) {
  double worst = 0.0;
  for (const char* name : {"example1", "example2a"}) {
    auto still = preset(name);
    auto spin = still;
    spin.omega0 = 0.2;
    const auto a = simulate(still.to_scenario());
    const auto b = rotating_frame(simulate(spin.to_scenario()), 0.2);
    const std::size_t n = std::min(a.samples.size(), b.samples.size());
    v.require(n > 10, "too few common samples");
    for (std::size_t i = 0; i < n; ++i) {
      v.require(a.samples[i].state.t() == b.samples[i].state.t(), "sample times differ");
      for (std::size_t k = 0; k < still.n(); ++k) {
        worst = std::max(worst, std::abs(a.samples[i].state.headings()[k] - b.samples[i].state.headings()[k]));
      }
    }
  }
  v.require(worst <= 1e-6, "rotating frame mismatch " + num(worst));
  v.detail << "Example 1 and Example 2, max heading difference " << num(worst) << " rad";
}

// 11
void zero_gains(Verdict& v) {
  const auto tr = simulate(preset("example1").to_scenario());
  v.require(tr.converged() && tr.final_sample().p_mag < 1e-6, "Example 1 did not balance");
  const GainVector three({2, 1, 0, 0, 0, 1, 2});
  const GainVector four({2, 0, 0, 0, 0, 1, 2});
  v.require(validate_theorem1_condition(three, Theorem1Mode::allow_zeros).ok, "Example 1 gains flagged");
  auto c = preset("example1");
  c.gains = four.values();
  c.integrator.t_max = 20.0;
  bool accepted = true;
  try {
    (void)simulate(c.to_scenario());
  } catch (const std::exception&) {
    accepted = false;
  }
  v.require(accepted, "simulator rejected four zero gains");
  v.require(!validate_theorem1_condition(four, Theorem1Mode::allow_zeros).ok, "four zero gains not flagged");
  v.detail << "Example 1 |p| " << num(tr.final_sample().p_mag) << " at t=" << num(tr.t_end, 6)
           << "; four zero gains simulated and flagged";
}

// 12
void splay(Verdict& v) {
  auto c = preset("splay10");
  c.integrator.record_stride = 1;
  const auto tr = simulate(c.to_scenario());
  v.require(tr.converged(), "splay10 did not converge");
  Vec wrapped;
  for (double t : tr.final_sample().state.headings()) wrapped.push_back(oracle::wrap_2pi(t));
  std::sort(wrapped.begin(), wrapped.end());
  double worst = 0.0;
  for (std::size_t k = 0; k < wrapped.size(); ++k) {
    const double gap = k + 1 < wrapped.size() ? wrapped[k + 1] - wrapped[k] : wrapped[0] + 2 * kPi - wrapped[k];
    worst = std::max(worst, std::abs(rad_to_deg(gap) - 36.0));
  }
  v.require(worst <= 0.2, "separation off by " + num(worst) + " deg");

  double rise = 0.0;
  for (std::size_t i = 1; i < tr.samples.size(); ++i) {
    rise = std::max(rise, oracle::potential_W(tr.samples[i].state.headings()) -
                              oracle::potential_W(tr.samples[i - 1].state.headings()));
  }
  v.require(rise <= 1e-9, "W rose by " + num(rise));

  gen::Rng rng(12);
  bool identical = true;
  for (int i = 0; i < 10; ++i) {
    const auto s = gen::ordered_scenario(rng, 3);
    const auto a = run(s.theta0, s.gains, {}, LawKind::balance, i % 2 ? 0.2 : 0.0);
    const auto b = run(s.theta0, s.gains, {}, LawKind::splay, i % 2 ? 0.2 : 0.0);
    identical = identical && a.samples.size() == b.samples.size();
    for (std::size_t j = 0; identical && j < a.samples.size(); ++j) {
      const auto& p = a.samples[j].state;
      const auto& q = b.samples[j].state;
      identical = p.headings() == q.headings();
      for (std::size_t k = 0; identical && k < 3; ++k) {
        identical = p.positions()[k].x == q.positions()[k].x && p.positions()[k].y == q.positions()[k].y;
      }
    }
  }
  v.require(identical, "N=3 splay and balance traces differ");
  v.detail << "converged at t=" << num(tr.t_end, 6) << ", max |gap - 36| " << num(worst) << " deg, max W rise "
           << num(rise) << ", N=3 traces bitwise identical over 10 scenarios";
}

// 13
void derivatives(Verdict& v) {
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  gen::Rng rng(13);
  double gu = 0.0, gw = 0.0, h = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<std::size_t>(2 + i % 9);
    const auto th = gen::any_headings(rng, n);
    const auto a = grad_U(th), b = grad_W(th);
    const auto fa = oracle::fd_gradient(oracle::potential_U, th);
    const auto fb = oracle::fd_gradient(oracle::potential_W, th);
    const auto H = hessian_U(th);
    const auto fh = oracle::fd_hessian(oracle::potential_U, th);
    for (std::size_t k = 0; k < n; ++k) {
      gu = std::max(gu, rel(a[k], fa[k]));
      gw = std::max(gw, rel(b[k], fb[k]));
      for (std::size_t j = 0; j < n; ++j) h = std::max(h, rel(H(k, j), fh[k][j]));
    }
  }
  v.require(gu <= 1e-6 && gw <= 1e-6, "gradient mismatch");
  v.require(h <= 1e-5, "Hessian mismatch " + num(h));

  double q_err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto n = static_cast<std::size_t>(3 + i % 6);
    const double a = gen::uniform(rng, -kPi, kPi);
    const auto m = static_cast<std::size_t>(1 + i % ((n - 1) / 2));
    Vec th(n, a);
    for (std::size_t k = 0; k < m; ++k) th[k] = a + kPi;
    const auto H = hessian_U(th);
    Eigen::VectorXd q = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    q(static_cast<Eigen::Index>(n - 2)) = -1.0;
    q(static_cast<Eigen::Index>(n - 1)) = 1.0;
    q_err = std::max(q_err, std::abs(q.dot(H * q) + 2.0 * std::abs(oracle::order_parameter(th, 1))));
  }
  v.require(q_err <= 1e-12, "q'Hq identity " + num(q_err));

  const bool kinds = classify_critical_point(Vec{0, 2 * kPi / 3, 4 * kPi / 3}, 1e-9) == CriticalKind::minimum &&
                     classify_critical_point(Vec{0, 0, 0}, 1e-9) == CriticalKind::maximum &&
                     classify_critical_point(Vec{0, 0, kPi}, 1e-9) == CriticalKind::saddle;
  v.require(kinds, "classification of canonical N=3 configurations");
  v.detail << "max rel error grad_U " << num(gu) << ", grad_W " << num(gw) << ", Hessian " << num(h)
           << "; q'Hq identity " << num(q_err) << "; min/max/saddle classified";
}

// 14
void cyclic_order(Verdict& v) {
  gen::Rng rng(14);
  int kept = 0;
  for (int i = 0; i < 100; ++i) {
    const auto s = gen::ordered_scenario(rng, static_cast<std::size_t>(3 + i % 5));
    v.require(validate_assumption1(partition_subgroups(s.theta0), GainVector(s.gains)).ok, "generator broke ordering");
    const auto tr = run(s.theta0, s.gains);
    v.require(tr.converged(), "a run did not converge");
    const bool ok = oracle::cyclic_order_is_identity(tr.final_sample().state.headings());
    v.require(ok, "cyclic order changed");
    kept += ok ? 1 : 0;
  }
  v.detail << kept << "/100 scenarios (N = 3..7) keep their cyclic order";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria{
      {"example 3 reproduction", example3},
      {"steady separations", separations},
      {"reference direction formula", reference_direction},
      {"reachable interval", interval},
      {"gain-error bounds", perturbation},
      {"gain synthesis round-trip", synthesis},
      {"two-agent closed form", closed_form},
      {"convergence point and locus", convergence},
      {"|p| monotone", monotone},
      {"rotating frame", rotating},
      {"zero gains", zero_gains},
      {"splay formation", splay},
      {"gradient and Hessian", derivatives},
      {"cyclic order", cyclic_order},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += v.pass ? 0 : 1;
    std::printf("criterion %2zu %s  %s: %s (%.1fs)\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first,
                v.detail.str().c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
