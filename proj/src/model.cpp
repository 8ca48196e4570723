#include "phasebal/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace phasebal {

namespace {

void require_agents(std::span<const double> headings, std::size_t min_n, const char* what) {
  if (headings.size() < min_n) {
    throw std::invalid_argument(std::string(what) + ": need at least " +
                                std::to_string(min_n) + " headings, got " +
                                std::to_string(headings.size()));
  }
}

// Raw harmonic sum (1/(mN)) sum exp(i m theta_k) without phase extraction.
void harmonic_sum(std::span<const double> headings, int m, double& re, double& im) {
  re = 0.0;
  im = 0.0;
  for (double th : headings) {
    re += std::cos(m * th);
    im += std::sin(m * th);
  }
  const double scale = 1.0 / (static_cast<double>(m) * static_cast<double>(headings.size()));
  re *= scale;
  im *= scale;
}

}  // namespace

SwarmState::SwarmState(double t, std::vector<Point> positions, std::vector<double> headings)
    : t_(t), positions_(std::move(positions)), headings_(std::move(headings)) {
  if (headings_.size() < 2) {
    throw std::invalid_argument("SwarmState: need N >= 2 agents");
  }
  if (positions_.size() != headings_.size()) {
    throw std::invalid_argument("SwarmState: positions and headings differ in length");
  }
  if (!std::isfinite(t_)) {
    throw std::invalid_argument("SwarmState: non-finite time");
  }
  for (std::size_t k = 0; k < headings_.size(); ++k) {
    if (!std::isfinite(headings_[k]) || !std::isfinite(positions_[k].x) ||
        !std::isfinite(positions_[k].y)) {
      throw std::invalid_argument("SwarmState: non-finite entry for agent " +
                                  std::to_string(k + 1));
    }
  }
}

Point SwarmState::centroid() const {
  Point c;
  for (const auto& p : positions_) {
    c.x += p.x;
    c.y += p.y;
  }
  const double n = static_cast<double>(positions_.size());
  c.x /= n;
  c.y /= n;
  return c;
}

std::string_view to_string(GainCondition c) {
  switch (c) {
    case GainCondition::unchecked: return "unchecked";
    case GainCondition::all_positive: return "all-positive";
    case GainCondition::allow_zeros: return "allow-zeros";
    case GainCondition::two_agent_sum: return "two-agent-sum";
  }
  return "unknown";
}

GainVector::GainVector(std::vector<double> gains, GainCondition validated)
    : gains_(std::move(gains)), validated_(validated) {
  if (gains_.empty()) throw std::invalid_argument("GainVector: empty");
  for (double g : gains_) {
    if (!std::isfinite(g)) throw std::invalid_argument("GainVector: non-finite gain");
  }
}

bool GainVector::all_nonzero() const {
  return std::none_of(gains_.begin(), gains_.end(), [](double g) { return g == 0.0; });
}

double GainVector::max_abs() const {
  double m = 0.0;
  for (double g : gains_) m = std::max(m, std::abs(g));
  return m;
}

std::string_view to_string(CriticalKind k) {
  switch (k) {
    case CriticalKind::minimum: return "minimum";
    case CriticalKind::maximum: return "maximum";
    case CriticalKind::saddle: return "saddle";
    case CriticalKind::not_critical: return "not-critical";
  }
  return "unknown";
}

OrderParameter order_parameter(std::span<const double> headings, int m) {
  require_agents(headings, 1, "order_parameter");
  if (m < 1) throw std::invalid_argument("order_parameter: harmonic must be >= 1");
  OrderParameter p;
  p.harmonic = m;
  harmonic_sum(headings, m, p.re, p.im);
  p.magnitude = std::hypot(p.re, p.im);
  p.psi_defined = p.magnitude >= kPsiThreshold;
  p.psi = p.psi_defined ? std::atan2(p.im, p.re) : 0.0;
  return p;
}

PotentialValue potential_U(std::span<const double> headings) {
  require_agents(headings, 2, "potential_U");
  const auto p = order_parameter(headings, 1);
  const double n = static_cast<double>(headings.size());
  return {0.5 * n * (p.re * p.re + p.im * p.im), PotentialKind::balancing_u};
}

PotentialValue potential_W(std::span<const double> headings) {
  require_agents(headings, 2, "potential_W");
  const int harmonics = static_cast<int>(headings.size() / 2);
  const double n = static_cast<double>(headings.size());
  double w = 0.0;
  for (int m = 1; m <= harmonics; ++m) {
    double re = 0.0;
    double im = 0.0;
    harmonic_sum(headings, m, re, im);
    w += re * re + im * im;
  }
  return {0.5 * n * w, PotentialKind::splay_w};
}

std::vector<double> grad_U(std::span<const double> headings) {
  require_agents(headings, 2, "grad_U");
  double re = 0.0;
  double im = 0.0;
  harmonic_sum(headings, 1, re, im);
  // <p, i e^{i theta_k}> = Re(conj(p) i e^{i theta_k}) = im cos - re sin
  std::vector<double> g(headings.size());
  for (std::size_t k = 0; k < headings.size(); ++k) {
    g[k] = im * std::cos(headings[k]) - re * std::sin(headings[k]);
  }
  return g;
}

std::vector<double> grad_W(std::span<const double> headings) {
  require_agents(headings, 2, "grad_W");
  const int harmonics = static_cast<int>(headings.size() / 2);
  std::vector<double> g(headings.size(), 0.0);
  for (int m = 1; m <= harmonics; ++m) {
    double re = 0.0;
    double im = 0.0;
    harmonic_sum(headings, m, re, im);
    for (std::size_t k = 0; k < headings.size(); ++k) {
      g[k] += im * std::cos(m * headings[k]) - re * std::sin(m * headings[k]);
    }
  }
  return g;
}

Eigen::MatrixXd hessian_U(std::span<const double> headings) {
  require_agents(headings, 2, "hessian_U");
  const auto n = static_cast<Eigen::Index>(headings.size());
  const double inv_n = 1.0 / static_cast<double>(n);
  double re = 0.0;
  double im = 0.0;
  harmonic_sum(headings, 1, re, im);
  Eigen::MatrixXd h(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (j == k) {
        // 1/N - <p, e^{i theta_k}>
        h(k, k) = inv_n - (re * std::cos(headings[k]) + im * std::sin(headings[k]));
      } else {
        h(j, k) = inv_n * std::cos(headings[j] - headings[k]);
      }
    }
  }
  return h;
}

CriticalKind classify_critical_point(std::span<const double> headings, double tol) {
  const auto g = grad_U(headings);
  double gmax = 0.0;
  for (double v : g) gmax = std::max(gmax, std::abs(v));
  if (gmax > tol) return CriticalKind::not_critical;

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hessian_U(headings),
                                                              Eigen::EigenvaluesOnly);
  const double eig_tol = 1e-8 * static_cast<double>(headings.size());
  int positive = 0;
  int negative = 0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda > eig_tol) ++positive;
    if (lambda < -eig_tol) ++negative;
  }
  if (negative == 0) return CriticalKind::minimum;
  if (positive == 0) return CriticalKind::maximum;
  return CriticalKind::saddle;
}

}  // namespace phasebal
