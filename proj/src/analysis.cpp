#include "phasebal/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "phasebal/angles.hpp"
#include "phasebal/errors.hpp"
#include "phasebal/quadrature.hpp"

namespace phasebal {

namespace {

// Closeness below which two shifted headings, or a target and an interval
// end, are treated as equal.
constexpr double kAngleEps = 1e-12;

void require_two_or_three(std::size_t n, const char* what) {
  if (n != 2 && n != 3) {
    throw OutOfScopeError(std::string(what) + ": closed-form results cover N = 2 and N = 3 only (got N = " +
                          std::to_string(n) + ")");
  }
}

void require_two(std::size_t n, const char* what) {
  if (n != 2) {
    throw OutOfScopeError(std::string(what) + ": defined for N = 2 only");
  }
}

double weighted_direction(const std::vector<double>& tilde, const GainVector& gains,
                          std::vector<double>& lambda) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < tilde.size(); ++k) {
    num += tilde[k] / gains[k];
    den += 1.0 / gains[k];
  }
  lambda.resize(tilde.size());
  for (std::size_t k = 0; k < tilde.size(); ++k) lambda[k] = (1.0 / gains[k]) / den;
  return num / den;
}

std::optional<Assumption1Report> try_assumption1(std::span<const double> theta0,
                                                 const GainVector& gains) {
  try {
    return validate_assumption1(partition_subgroups(theta0), gains);
  } catch (const UndefinedPhaseError&) {
    return std::nullopt;
  } catch (const std::invalid_argument&) {
    // initial headings not in cyclic order inside (-pi, pi)
    return std::nullopt;
  }
}

// Upper limit of the transformed convergence integrals: the odd multiple of
// pi/2 that xi = delta/2 approaches from delta0/2.
double xi_limit(double delta0) {
  const double n = std::floor(delta0 / kTwoPi);
  return n * kPi + 0.5 * kPi;
}

void require_nontrivial_delta(double delta0, const char* what) {
  const double r = std::remainder(delta0, kTwoPi);
  if (std::abs(r) <= kAngleEps) {
    throw std::invalid_argument(std::string(what) +
                                ": phi0 = 0 (agents start synchronized), no finite convergence point");
  }
}

}  // namespace

std::string_view to_string(Regime r) {
  return r == Regime::positive_gains ? "positive-gains" : "two-agent-signed";
}

std::string_view to_string(SynthesisRoute r) {
  switch (r) {
    case SynthesisRoute::convex_interior: return "convex-interior";
    case SynthesisRoute::alpha_below: return "signed-alpha";
    case SynthesisRoute::beta_above: return "signed-beta";
  }
  return "unknown";
}

ShiftedInitialHeadings shifted_headings(std::span<const double> theta0) {
  if (theta0.empty()) throw std::invalid_argument("shifted_headings: no headings");
  ShiftedInitialHeadings s;
  const double n = static_cast<double>(theta0.size());
  s.theta_tilde.resize(theta0.size());
  for (std::size_t k = 0; k < theta0.size(); ++k) {
    s.theta_tilde[k] = theta0[k] - kTwoPi * static_cast<double>(k) / n;
  }
  s.theta_m0 = *std::min_element(s.theta_tilde.begin(), s.theta_tilde.end());
  s.theta_M0 = *std::max_element(s.theta_tilde.begin(), s.theta_tilde.end());
  return s;
}

Interval reachable_interval(std::span<const double> theta0) {
  require_two_or_three(theta0.size(), "reachable_interval");
  const auto s = shifted_headings(theta0);
  if (s.theta_M0 - s.theta_m0 <= kAngleEps) {
    throw std::domain_error("reachable_interval: all shifted headings coincide, interval is empty");
  }
  return {s.theta_m0, s.theta_M0, false, false};
}

ReachabilityReport predict_reference_direction(std::span<const double> theta0,
                                               const GainVector& gains) {
  const std::size_t n = theta0.size();
  require_two_or_three(n, "predict_reference_direction");
  if (gains.size() != n) {
    throw std::invalid_argument("predict_reference_direction: gain count does not match N");
  }
  if (!gains.all_nonzero()) {
    throw std::invalid_argument("predict_reference_direction: zero gain, theta_f is undefined");
  }
  const auto s = shifted_headings(theta0);
  const bool all_positive =
      std::all_of(gains.values().begin(), gains.values().end(), [](double g) { return g > 0.0; });

  ReachabilityReport r;
  if (all_positive) {
    r.regime = Regime::positive_gains;
    r.interval = {s.theta_m0, s.theta_M0, false, false};
    r.assumption1 = try_assumption1(theta0, gains);
  } else if (n == 2) {
    if (!(gains[0] + gains[1] > 0.0)) {
      throw OutOfScopeError("predict_reference_direction: signed two-agent gains need K1 + K2 > 0");
    }
    r.regime = Regime::two_agent_signed;
    const double rot = theta0[0];
    r.interval = {rot - kPi, rot + kPi, true, true};
  } else {
    throw OutOfScopeError(
        "predict_reference_direction: no proven prediction for N = 3 with non-positive gains");
  }
  r.reference_direction = weighted_direction(s.theta_tilde, gains, r.lambda);
  r.predicted_final_headings.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    r.predicted_final_headings[k] =
        r.reference_direction + kTwoPi * static_cast<double>(k) / static_cast<double>(n);
  }
  return r;
}

namespace {

SynthesisResult synthesize_interior(std::span<const double> theta0,
                                    const ShiftedInitialHeadings& s, double target, double c) {
  const std::size_t n = theta0.size();
  const auto& th = s.theta_tilde;
  const auto lo_it = std::min_element(th.begin(), th.end());
  const auto hi_it = std::max_element(th.begin(), th.end());
  const auto lo = static_cast<std::size_t>(lo_it - th.begin());
  const auto hi = static_cast<std::size_t>(hi_it - th.begin());
  const double span = s.theta_M0 - s.theta_m0;

  auto two_point = [&](double share, double goal, std::vector<double>& sigma) {
    // split `share` of the weight between the extreme agents to hit `goal`
    const double up = share * (goal - s.theta_m0) / span;
    sigma[hi] += up;
    sigma[lo] += share - up;
  };

  auto gains_for = [&](const std::vector<double>& sigma) {
    std::vector<double> k(n);
    for (std::size_t i = 0; i < n; ++i) k[i] = c / sigma[i];
    return k;
  };

  if (n == 2) {
    std::vector<double> sigma(2, 0.0);
    two_point(1.0, target, sigma);
    return {GainVector(gains_for(sigma)), SynthesisRoute::convex_interior, c, sigma, 0.0, 0.0,
            true};
  }

  // N = 3: the middle agent keeps a fixed weight w; the extreme agents
  // carry the rest. Try w = 1/3 first, then nearby values, until the gains
  // respect the subgroup ordering.
  std::size_t mid = 0;
  while (mid == lo || mid == hi) ++mid;
  std::vector<double> candidates;
  for (int j = 1; j < 100; ++j) candidates.push_back(j / 100.0);
  std::stable_sort(candidates.begin(), candidates.end(), [](double a, double b) {
    return std::abs(a - 1.0 / 3.0) < std::abs(b - 1.0 / 3.0);
  });
  candidates.insert(candidates.begin(), 1.0 / 3.0);
  for (int j = 7; j <= 40; ++j) candidates.push_back(std::ldexp(1.0, -j));

  std::optional<SynthesisResult> fallback;
  for (double w : candidates) {
    const double goal = (target - w * th[mid]) / (1.0 - w);
    if (!(goal > s.theta_m0 + kAngleEps && goal < s.theta_M0 - kAngleEps)) continue;
    std::vector<double> sigma(3, 0.0);
    sigma[mid] = w;
    two_point(1.0 - w, goal, sigma);
    if (std::any_of(sigma.begin(), sigma.end(), [](double v) { return !(v > 0.0); })) continue;
    GainVector g(gains_for(sigma));
    const auto a1 = try_assumption1(theta0, g);
    const bool ok = !a1.has_value() || a1->ok;
    SynthesisResult res{g, SynthesisRoute::convex_interior, c, sigma, 0.0, 0.0, ok};
    if (ok) return res;
    if (!fallback) fallback = res;
  }
  if (fallback) return *fallback;
  throw OutOfScopeError("synthesize_gains: target too close to the interval end to realise");
}

}  // namespace

SynthesisResult synthesize_gains(std::span<const double> theta0, double target, double c) {
  const std::size_t n = theta0.size();
  require_two_or_three(n, "synthesize_gains");
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("synthesize_gains: c must be > 0");
  if (!std::isfinite(target)) throw std::invalid_argument("synthesize_gains: non-finite target");
  const auto s = shifted_headings(theta0);
  if (s.theta_M0 - s.theta_m0 <= kAngleEps) {
    throw std::invalid_argument("synthesize_gains: shifted headings coincide (degenerate)");
  }
  if (std::abs(target - s.theta_m0) <= kAngleEps || std::abs(target - s.theta_M0) <= kAngleEps) {
    throw OutOfScopeError(
        "synthesize_gains: interval end points are not reachable as reference directions");
  }

  SynthesisResult res{GainVector({1.0}), SynthesisRoute::convex_interior, c, {}, 0.0, 0.0, true};
  if (target > s.theta_m0 && target < s.theta_M0) {
    res = synthesize_interior(theta0, s, target, c);
  } else {
    if (n != 2) {
      throw OutOfScopeError(
          "synthesize_gains: targets outside the positive-gain interval are only proven for N = 2");
    }
    // Rotate so agent 1 starts on the real axis; targets are admissible in
    // [-pi, pi] of that frame.
    const double rot = theta0[0];
    const std::array<double, 2> rotated{theta0[0] - rot, theta0[1] - rot};
    const double goal = target - rot;
    if (goal < -kPi - kAngleEps || goal > kPi + kAngleEps) {
      throw OutOfScopeError("synthesize_gains: target outside [-pi, pi] about agent 1's initial heading");
    }
    const auto rs = shifted_headings(rotated);
    const double t1 = rs.theta_tilde[0];
    const double t2 = rs.theta_tilde[1];
    // theta_f - t2 = lambda1 (t1 - t2); K1 = lambda2/c, K2 = lambda1/c
    const double lambda1 = (goal - t2) / (t1 - t2);
    const double lambda2 = 1.0 - lambda1;
    res.rotation = rot;
    res.c = c;
    if (lambda1 < 0.0) {
      res.route = SynthesisRoute::alpha_below;
      res.alpha_or_beta = -lambda1;
    } else {
      res.route = SynthesisRoute::beta_above;
      res.alpha_or_beta = -lambda2;
    }
    res.gains = GainVector({lambda2 / c, lambda1 / c});
    res.sigma = {lambda1, lambda2};
    res.assumption1_ok = false;
  }

  const auto check = predict_reference_direction(theta0, res.gains);
  if (std::abs(check.reference_direction - target) > 1e-9) {
    throw std::logic_error("synthesize_gains: round trip missed the target");
  }
  return res;
}

PerturbationBounds perturbation_bounds(std::span<const double> theta0, double sigma) {
  require_two_or_three(theta0.size(), "perturbation_bounds");
  if (!(sigma >= 0.0 && sigma < 1.0)) {
    throw std::invalid_argument("perturbation_bounds: sigma must lie in [0, 1)");
  }
  const auto s = shifted_headings(theta0);
  if (s.theta_M0 > 0.0) {
    throw OutOfScopeError(
        "perturbation_bounds: bounds are proven only when every shifted heading is non-positive");
  }
  PerturbationBounds b;
  double mean = 0.0;
  for (double v : s.theta_tilde) mean += v;
  mean /= static_cast<double>(s.theta_tilde.size());
  b.mean_direction = mean;
  b.lower_deviation = -(2.0 * sigma / (1.0 - sigma)) * mean;
  b.upper_deviation = -(2.0 * sigma / (1.0 + sigma)) * mean;
  b.raw = {mean - b.lower_deviation, mean + b.upper_deviation, true, true};

  const Interval open{s.theta_m0, s.theta_M0, false, false};
  Interval& out = b.bounded;
  if (b.raw.lo > open.lo + kAngleEps) {
    out.lo = b.raw.lo;
    out.lo_closed = true;
  } else {
    out.lo = open.lo;
    out.lo_closed = false;
  }
  if (b.raw.hi < open.hi - kAngleEps) {
    out.hi = b.raw.hi;
    out.hi_closed = true;
  } else {
    out.hi = open.hi;
    out.hi_closed = false;
  }
  return b;
}

TwoAgentClosedForm make_two_agent_closed_form(double theta10, double theta20, double k1,
                                              double k2) {
  if (k1 == 0.0 || k2 == 0.0) throw std::invalid_argument("two-agent closed form: zero gain");
  TwoAgentClosedForm cf;
  cf.theta10 = theta10;
  cf.theta20 = theta20;
  cf.k1 = k1;
  cf.k2 = k2;
  cf.kappa = 0.5 * (k1 + k2);
  if (!(cf.kappa > 0.0)) throw std::invalid_argument("two-agent closed form: kappa <= 0");
  cf.delta0 = theta20 - theta10;
  cf.phi0 = std::tan(0.5 * cf.delta0);
  cf.c2 = theta10 / k1 + theta20 / k2;
  cf.lambda1 = k2 / (k1 + k2);
  cf.lambda2 = k1 / (k1 + k2);
  return cf;
}

std::pair<double, double> two_agent_headings(const TwoAgentClosedForm& cf, double t) {
  if (!(cf.kappa > 0.0)) throw std::invalid_argument("two_agent_headings: kappa <= 0");
  // Growth of the separation, delta(t) - delta0, from
  // tan(delta/2) = phi0 e^{kappa t}, written so that t = 0 gives exactly 0.
  double growth = 0.0;
  if (std::abs(std::cos(0.5 * cf.delta0)) > kAngleEps) {
    const double phi0 = cf.phi0;
    const double e = std::exp(cf.kappa * t);
    if (std::isfinite(e) && std::isfinite(phi0 * phi0 * e)) {
      growth = 2.0 * std::atan(phi0 * std::expm1(cf.kappa * t) / (1.0 + phi0 * phi0 * e));
    } else {
      growth = 2.0 * (std::copysign(0.5 * kPi, phi0) - std::atan(phi0));
    }
  }
  return {cf.theta10 - cf.lambda2 * growth, cf.theta20 + cf.lambda1 * growth};
}

ConvergencePoint convergence_point(std::span<const double> theta0, std::span<const Point> r0,
                                   const GainVector& gains) {
  require_two(theta0.size(), "convergence_point");
  if (r0.size() != 2 || gains.size() != 2) {
    throw std::invalid_argument("convergence_point: need two positions and two gains");
  }
  const auto cf = make_two_agent_closed_form(theta0[0], theta0[1], gains[0], gains[1]);
  require_nontrivial_delta(cf.delta0, "convergence_point");

  const double base = cf.lambda1 * cf.theta10 + cf.lambda2 * cf.theta20;
  const double slope = cf.lambda1 - cf.lambda2;
  const double from = 0.5 * cf.delta0;
  const double to = xi_limit(cf.delta0);
  // The offsets are I/kappa; tighten for small kappa so they stay within
  // the absolute tolerance.
  const double tol = kQuadratureTol * std::min(1.0, cf.kappa);
  const auto ix = adaptive_simpson(
      [&](double xi) { return std::cos(base + slope * xi) / std::sin(xi); }, from, to,
      tol, kQuadratureMaxDepth);
  const auto iy = adaptive_simpson(
      [&](double xi) { return std::sin(base + slope * xi) / std::sin(xi); }, from, to,
      tol, kQuadratureMaxDepth);

  ConvergencePoint p;
  p.dx = ix.value / cf.kappa;
  p.dy = iy.value / cf.kappa;
  p.x_c_inf = 0.5 * (r0[0].x + r0[1].x) + p.dx;
  p.y_c_inf = 0.5 * (r0[0].y + r0[1].y) + p.dy;
  p.quadrature_error_estimate = (ix.error_estimate + iy.error_estimate) / cf.kappa;
  return p;
}

bool locus_gains_admissible(double eta, double rho) {
  return eta * rho * (rho + 1.0) > 0.0;
}

LocusLine locus_line(std::span<const double> theta0, double rho, Point anchor) {
  require_two(theta0.size(), "locus_line");
  if (rho == -1.0) throw std::invalid_argument("locus_line: rho = -1 gives K1 + K2 = 0 for every eta");
  if (rho == 0.0 || !std::isfinite(rho)) throw std::invalid_argument("locus_line: rho must be finite and nonzero");
  const double delta0 = theta0[1] - theta0[0];
  require_nontrivial_delta(delta0, "locus_line");

  const double base = (theta0[0] + rho * theta0[1]) / (1.0 + rho);
  const double slope = (1.0 - rho) / (1.0 + rho);
  const double from = 0.5 * delta0;
  const double to = xi_limit(delta0);
  const auto h1 = adaptive_simpson(
      [&](double xi) { return std::cos(base + slope * xi) / std::sin(xi); }, from, to,
      kQuadratureTol, kQuadratureMaxDepth);
  const auto h2 = adaptive_simpson(
      [&](double xi) { return std::sin(base + slope * xi) / std::sin(xi); }, from, to,
      kQuadratureTol, kQuadratureMaxDepth);

  LocusLine line;
  line.anchor = anchor;
  line.h1 = h1.value;
  line.h2 = h2.value;
  line.direction = std::atan2(line.h2, line.h1);
  line.vertical = std::abs(line.h1) <= 1e-12 * std::max(1.0, std::abs(line.h2));
  line.slope = line.vertical ? std::numeric_limits<double>::infinity() : line.h2 / line.h1;
  return line;
}

}  // namespace phasebal
