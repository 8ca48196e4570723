#include "phasebal/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phasebal {

std::string_view to_string(Method m) { return m == Method::rk4 ? "rk4" : "euler"; }

std::string_view to_string(Outcome o) {
  return o == Outcome::converged ? "converged" : "horizon_reached";
}

void IntegratorSettings::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("integrator: dt must be > 0");
  if (!(t_max >= dt) || !std::isfinite(t_max)) {
    throw std::invalid_argument("integrator: t_max must be >= dt");
  }
  if (!(balance_tol > 0.0)) throw std::invalid_argument("integrator: balance_tol must be > 0");
  if (record_stride == 0) throw std::invalid_argument("integrator: record_stride must be >= 1");
}

NumericalBlowup::NumericalBlowup(std::size_t step, SwarmState last_good)
    : std::runtime_error("non-finite state at integration step " + std::to_string(step) +
                         " (last good t = " + std::to_string(last_good.t()) + ")"),
      step_(step),
      last_good_(std::move(last_good)) {}

namespace {

struct Phase {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> th;
};

void derivative(const Phase& s, const ControlLaw& law, Phase& d) {
  const std::size_t n = s.th.size();
  for (std::size_t k = 0; k < n; ++k) {
    d.x[k] = std::cos(s.th[k]);
    d.y[k] = std::sin(s.th[k]);
  }
  d.th = control_input(std::span<const double>(s.th), law);
}

// out = s + h * d
void axpy(const Phase& s, double h, const Phase& d, Phase& out) {
  for (std::size_t k = 0; k < s.th.size(); ++k) {
    out.x[k] = s.x[k] + h * d.x[k];
    out.y[k] = s.y[k] + h * d.y[k];
    out.th[k] = s.th[k] + h * d.th[k];
  }
}

class Stepper {
 public:
  Stepper(const ControlLaw& law, Method method, std::size_t n)
      : law_(law), method_(method), k1_(make(n)), k2_(make(n)), k3_(make(n)), k4_(make(n)),
        tmp_(make(n)) {}

  void step(Phase& s, double dt) {
    derivative(s, law_, k1_);
    if (method_ == Method::euler) {
      axpy(s, dt, k1_, s);
      return;
    }
    axpy(s, 0.5 * dt, k1_, tmp_);
    derivative(tmp_, law_, k2_);
    axpy(s, 0.5 * dt, k2_, tmp_);
    derivative(tmp_, law_, k3_);
    axpy(s, dt, k3_, tmp_);
    derivative(tmp_, law_, k4_);
    const double w = dt / 6.0;
    for (std::size_t k = 0; k < s.th.size(); ++k) {
      s.x[k] += w * (k1_.x[k] + 2.0 * k2_.x[k] + 2.0 * k3_.x[k] + k4_.x[k]);
      s.y[k] += w * (k1_.y[k] + 2.0 * k2_.y[k] + 2.0 * k3_.y[k] + k4_.y[k]);
      s.th[k] += w * (k1_.th[k] + 2.0 * k2_.th[k] + 2.0 * k3_.th[k] + k4_.th[k]);
    }
  }

 private:
  static Phase make(std::size_t n) {
    return {std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  }

  const ControlLaw& law_;
  Method method_;
  Phase k1_, k2_, k3_, k4_, tmp_;
};

bool finite(const Phase& s) {
  for (std::size_t k = 0; k < s.th.size(); ++k) {
    if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k]) || !std::isfinite(s.th[k])) return false;
  }
  return true;
}

SwarmState to_state(const Phase& s, double t) {
  std::vector<Point> pos(s.th.size());
  for (std::size_t k = 0; k < s.th.size(); ++k) pos[k] = {s.x[k], s.y[k]};
  return SwarmState(t, std::move(pos), s.th);
}

double residual(std::span<const double> th, LawKind law) {
  // with one harmonic the splay law is the balance law and shares its test
  if (law == LawKind::balance || th.size() <= 3) return order_parameter(th, 1).magnitude;
  double m = 0.0;
  for (double g : grad_W(th)) m = std::max(m, std::abs(g));
  return m;
}

TraceSample make_sample(const Phase& s, double t, const ControlLaw& law) {
  const auto p = order_parameter(s.th, 1);
  TraceSample smp{to_state(s, t), p.magnitude, std::nullopt,
                  control_input(std::span<const double>(s.th), law), std::nullopt, {}};
  if (p.psi_defined) smp.psi = p.psi;
  if (law.gains.all_nonzero()) {
    double c = 0.0;
    for (std::size_t k = 0; k < s.th.size(); ++k) c += (s.th[k] - law.omega0 * t) / law.gains[k];
    smp.conserved = c;
  }
  smp.centroid = smp.state.centroid();
  return smp;
}

}  // namespace

SimulationTrace simulate(const Scenario& scenario) {
  scenario.integrator.validate();
  const auto& law = scenario.law;
  const auto& cfg = scenario.integrator;
  const std::size_t n = scenario.initial.size();
  if (law.gains.size() != n) {
    throw std::invalid_argument("simulate: gain vector length does not match agent count");
  }
  if (!std::isfinite(law.omega0)) throw std::invalid_argument("simulate: non-finite omega0");

  SimulationTrace trace;
  trace.law = law.kind;
  trace.omega0 = law.omega0;
  trace.gains = law.gains.values();
  trace.balance_tol = cfg.balance_tol;

  Phase s{std::vector<double>(n), std::vector<double>(n), scenario.initial.headings()};
  for (std::size_t k = 0; k < n; ++k) {
    s.x[k] = scenario.initial.positions()[k].x;
    s.y[k] = scenario.initial.positions()[k].y;
  }
  const double t0 = scenario.initial.t();
  const auto steps = static_cast<std::size_t>(std::ceil(cfg.t_max / cfg.dt - 1e-9));

  trace.samples.push_back(make_sample(s, t0, law));
  double res = residual(s.th, law.kind);
  if (res < cfg.balance_tol) {
    trace.outcome = Outcome::converged;
    trace.t_end = t0;
    trace.final_residual = res;
    return trace;
  }

  Stepper stepper(law, cfg.method, n);
  Phase last = s;
  for (std::size_t i = 1; i <= steps; ++i) {
    last = s;
    stepper.step(s, cfg.dt);
    const double t = t0 + static_cast<double>(i) * cfg.dt;
    if (!finite(s)) {
      throw NumericalBlowup(i, to_state(last, t0 + static_cast<double>(i - 1) * cfg.dt));
    }
    res = residual(s.th, law.kind);
    const bool done = res < cfg.balance_tol;
    if (done || i == steps || i % cfg.record_stride == 0) {
      trace.samples.push_back(make_sample(s, t, law));
    }
    if (done) {
      trace.outcome = Outcome::converged;
      trace.t_end = t;
      trace.final_residual = res;
      return trace;
    }
  }
  trace.outcome = Outcome::horizon_reached;
  trace.t_end = trace.samples.back().state.t();
  trace.final_residual = res;
  return trace;
}

SimulationTrace rotating_frame(const SimulationTrace& trace, double omega0) {
  SimulationTrace out = trace;
  if (omega0 == 0.0) return out;
  for (auto& smp : out.samples) {
    const double t = smp.state.t();
    std::vector<double> th = smp.state.headings();
    for (double& v : th) v -= omega0 * t;
    smp.state = SwarmState(t, smp.state.positions(), std::move(th));
    for (double& v : smp.u) v -= omega0;
    const auto p = order_parameter(smp.state.headings(), 1);
    smp.psi = p.psi_defined ? std::optional<double>(p.psi) : std::nullopt;
  }
  out.omega0 = trace.omega0 - omega0;
  out.rotated = true;
  return out;
}

std::vector<double> detect_steady_headings(const SimulationTrace& trace) {
  if (!trace.converged() || trace.samples.empty()) {
    throw std::logic_error("detect_steady_headings: trace did not converge");
  }
  const auto& last = trace.final_sample();
  double gmax = 0.0;
  for (double g : trace.gains) gmax = std::max(gmax, std::abs(g));
  // |u_k - omega0| <= |K_k| * residual < max|K| * tol
  const double limit = gmax * trace.balance_tol * (1.0 + 1e-9) + 1e-12;
  for (std::size_t k = 0; k < last.u.size(); ++k) {
    if (std::abs(last.u[k] - trace.omega0) > limit) {
      throw std::logic_error("detect_steady_headings: agent " + std::to_string(k + 1) +
                             " still turning at the final sample");
    }
  }
  return last.state.headings();
}

}  // namespace phasebal
