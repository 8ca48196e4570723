#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phasebal/control.hpp"
#include "phasebal/model.hpp"

namespace phasebal {

/// Interval on the real line with independently open or closed ends.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(double x) const {
    return (lo_closed ? x >= lo : x > lo) && (hi_closed ? x <= hi : x < hi);
  }
  bool empty() const {
    return lo > hi || (lo == hi && !(lo_closed && hi_closed));
  }
};

/// theta~_k0 = theta_k0 - 2(k-1)pi/N together with its extremes.
struct ShiftedInitialHeadings {
  std::vector<double> theta_tilde;
  double theta_m0 = 0.0;
  double theta_M0 = 0.0;
};

enum class Regime { positive_gains, two_agent_signed };

std::string_view to_string(Regime r);

struct ReachabilityReport {
  double reference_direction = 0.0;  // theta_f, unwrapped
  Interval interval;
  Regime regime = Regime::positive_gains;
  std::vector<double> lambda;
  std::vector<double> predicted_final_headings;
  /// Outcome of the gain-ordering check (positive regime, N = 3). Empty
  /// when the initial order parameter vanishes or the regime is signed.
  std::optional<Assumption1Report> assumption1;
};

/// How synthesize_gains built its answer.
enum class SynthesisRoute { convex_interior, alpha_below, beta_above };

std::string_view to_string(SynthesisRoute r);

struct SynthesisResult {
  GainVector gains;
  SynthesisRoute route = SynthesisRoute::convex_interior;
  double c = 0.0;
  /// Convex weights (interior) or the alpha/beta parameter (signed).
  std::vector<double> sigma;
  double alpha_or_beta = 0.0;
  double rotation = 0.0;  // theta_R subtracted before the two-agent construction
  bool assumption1_ok = true;
};

struct PerturbationBounds {
  double mean_direction = 0.0;  // homogeneous-gain theta_f
  double lower_deviation = 0.0;
  double upper_deviation = 0.0;
  Interval raw;
  Interval bounded;  // raw intersected with the reachable interval
};

/// Parameters of the closed-form two-agent solution.
struct TwoAgentClosedForm {
  double theta10 = 0.0;
  double theta20 = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double kappa = 0.0;   // (K1 + K2)/2
  double delta0 = 0.0;  // theta20 - theta10
  double phi0 = 0.0;    // tan(delta0/2)
  double c2 = 0.0;      // theta10/K1 + theta20/K2
  double lambda1 = 0.0; // K2/(K1 + K2)
  double lambda2 = 0.0; // K1/(K1 + K2)
};

struct ConvergencePoint {
  double x_c_inf = 0.0;
  double y_c_inf = 0.0;
  double dx = 0.0;  // offset from the initial centroid
  double dy = 0.0;
  double quadrature_error_estimate = 0.0;
};

struct LocusLine {
  Point anchor;       // initial centroid
  double h1 = 0.0;
  double h2 = 0.0;
  bool vertical = false;
  double slope = 0.0;  // h2/h1, meaningless when vertical
  double direction = 0.0;  // atan2(h2, h1)
};

/// Quadrature settings for the convergence-point integrals.
inline constexpr double kQuadratureTol = 1e-10;
inline constexpr int kQuadratureMaxDepth = 40;

ShiftedInitialHeadings shifted_headings(std::span<const double> theta0);

/// Steady reference direction theta_f = sum(theta~_k/K_k) / sum(1/K_k).
/// Throws std::invalid_argument for zero gains and OutOfScopeError for
/// N outside {2, 3}, signed gains with N = 3, or K1 + K2 <= 0.
ReachabilityReport predict_reference_direction(std::span<const double> theta0,
                                               const GainVector& gains);

/// Open interval (theta~_m0, theta~_M0). Throws std::domain_error when it is
/// empty.
Interval reachable_interval(std::span<const double> theta0);

/// Gains that steer agent 1 to `target`. Interior targets get positive gains
/// K_k = c/sigma_k; for N = 2, targets outside the interval use the signed
/// constructions K = ((1+alpha)/c, -alpha/c) or (-beta/c, (1+beta)/c).
/// Throws OutOfScopeError when the target is not reachable.
SynthesisResult synthesize_gains(std::span<const double> theta0, double target, double c);

PerturbationBounds perturbation_bounds(std::span<const double> theta0, double sigma);

TwoAgentClosedForm make_two_agent_closed_form(double theta10, double theta20, double k1,
                                              double k2);

std::pair<double, double> two_agent_headings(const TwoAgentClosedForm& cf, double t);

ConvergencePoint convergence_point(std::span<const double> theta0, std::span<const Point> r0,
                                   const GainVector& gains);

/// Straight line through `anchor` traced by the convergence point as
/// K1 = eta, K2 = eta/rho varies with fixed rho.
LocusLine locus_line(std::span<const double> theta0, double rho, Point anchor = {});

/// True when K1 = eta, K2 = eta/rho gives K1 + K2 > 0.
bool locus_gains_admissible(double eta, double rho);

}  // namespace phasebal
