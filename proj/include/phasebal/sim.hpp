#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "phasebal/control.hpp"
#include "phasebal/model.hpp"

namespace phasebal {

enum class Method { rk4, euler };

std::string_view to_string(Method m);

struct IntegratorSettings {
  double dt = 1e-3;
  double t_max = 200.0;
  Method method = Method::rk4;
  /// Threshold on |p_theta| (balance, splay with N <= 3) or on
  /// max_k |dW/dtheta_k| (splay with N >= 4).
  double balance_tol = 1e-6;
  std::size_t record_stride = 10;

  /// Throws std::invalid_argument when the settings are unusable.
  void validate() const;
};

struct Scenario {
  SwarmState initial;
  ControlLaw law;
  IntegratorSettings integrator;
};

struct TraceSample {
  SwarmState state;
  double p_mag = 0.0;
  std::optional<double> psi;
  std::vector<double> u;
  /// sum_k (theta_k - omega0 t) / K_k; absent when any gain is zero.
  std::optional<double> conserved;
  Point centroid;
};

enum class Outcome { converged, horizon_reached };

std::string_view to_string(Outcome o);

struct SimulationTrace {
  std::vector<TraceSample> samples;
  Outcome outcome = Outcome::horizon_reached;
  double t_end = 0.0;
  /// Residual of the convergence quantity at the final sample.
  double final_residual = 0.0;

  // Run context, kept so post-processing does not need the scenario.
  LawKind law = LawKind::balance;
  double omega0 = 0.0;
  std::vector<double> gains;
  double balance_tol = 0.0;
  /// Set by rotating_frame: positions then belong to the inertial run and
  /// no longer match the headings.
  bool rotated = false;

  bool converged() const { return outcome == Outcome::converged; }
  const TraceSample& final_sample() const { return samples.back(); }
};

/// Raised when the integrator produces a non-finite value.
class NumericalBlowup : public std::runtime_error {
 public:
  NumericalBlowup(std::size_t step, SwarmState last_good);
  std::size_t step() const { return step_; }
  const SwarmState& last_good() const { return last_good_; }

 private:
  std::size_t step_;
  SwarmState last_good_;
};

/// Fixed-step integration of r_k' = e^{i theta_k}, theta_k' = u_k.
/// Stops at the first step where the convergence quantity drops below
/// balance_tol, or at t_max. Fully deterministic.
SimulationTrace simulate(const Scenario& scenario);

/// Headings replaced by theta_k(t) - omega0 t.
SimulationTrace rotating_frame(const SimulationTrace& trace, double omega0);

/// Final headings of a converged run. Throws std::logic_error when the run
/// did not converge or the final turn rates are not at rest.
std::vector<double> detect_steady_headings(const SimulationTrace& trace);

}  // namespace phasebal
