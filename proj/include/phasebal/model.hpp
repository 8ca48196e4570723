#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace phasebal {

/// Below this magnitude the phase of an order parameter is reported as
/// undefined.
inline constexpr double kPsiThreshold = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Positions and unwrapped headings of N >= 2 planar agents at time t.
/// Headings live on the real line; nothing in the library wraps them.
class SwarmState {
 public:
  SwarmState(double t, std::vector<Point> positions, std::vector<double> headings);

  double t() const { return t_; }
  std::size_t size() const { return headings_.size(); }
  const std::vector<Point>& positions() const { return positions_; }
  const std::vector<double>& headings() const { return headings_; }

  /// Position centroid R = (1/N) sum r_k.
  Point centroid() const;

 private:
  double t_;
  std::vector<Point> positions_;
  std::vector<double> headings_;
};

/// Which sufficient condition on the gains has been checked.
enum class GainCondition { unchecked, all_positive, allow_zeros, two_agent_sum };

std::string_view to_string(GainCondition c);

class GainVector {
 public:
  explicit GainVector(std::vector<double> gains,
                      GainCondition validated = GainCondition::unchecked);

  std::size_t size() const { return gains_.size(); }
  double operator[](std::size_t k) const { return gains_[k]; }
  const std::vector<double>& values() const { return gains_; }
  GainCondition validated_against() const { return validated_; }
  bool all_nonzero() const;
  double max_abs() const;

 private:
  std::vector<double> gains_;
  GainCondition validated_;
};

/// m-th harmonic phase order parameter (1/(mN)) sum exp(i m theta_k).
struct OrderParameter {
  double re = 0.0;
  double im = 0.0;
  double magnitude = 0.0;
  double psi = 0.0;  // 0 when !psi_defined
  int harmonic = 1;
  bool psi_defined = false;
};

enum class PotentialKind { balancing_u, splay_w };

struct PotentialValue {
  double value = 0.0;
  PotentialKind kind = PotentialKind::balancing_u;
};

enum class CriticalKind { minimum, maximum, saddle, not_critical };

std::string_view to_string(CriticalKind k);

OrderParameter order_parameter(std::span<const double> headings, int m = 1);

/// U = (N/2)|p|^2.
PotentialValue potential_U(std::span<const double> headings);

/// W = (N/2) sum_{m=1}^{floor(N/2)} |p_m|^2.
PotentialValue potential_W(std::span<const double> headings);

/// dU/dtheta_k = (1/N) sum_j sin(theta_j - theta_k).
std::vector<double> grad_U(std::span<const double> headings);

/// dW/dtheta_k = sum_m (1/(mN)) sum_j sin(m(theta_j - theta_k)).
std::vector<double> grad_W(std::span<const double> headings);

Eigen::MatrixXd hessian_U(std::span<const double> headings);

/// Eigenvalues with |lambda| <= 1e-8 N are ignored, so the structural
/// rotational zero mode never decides the outcome.
CriticalKind classify_critical_point(std::span<const double> headings, double tol);

}  // namespace phasebal
