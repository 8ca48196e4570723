#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phasebal/model.hpp"

namespace phasebal {

enum class LawKind { balance, splay };

std::string_view to_string(LawKind k);

/// Steering law u_k = omega0 - K_k dV/dtheta_k with V = U (balance) or
/// V = W (splay). The splay harmonic count floor(N/2) is derived from N.
struct ControlLaw {
  LawKind kind = LawKind::balance;
  double omega0 = 0.0;
  GainVector gains;
};

/// Agents split by which side of the initial order-parameter axis they
/// start on. Indices are 0-based and each subgroup is ordered by
/// increasing initial heading.
struct SubgroupPartition {
  double reference_psi = 0.0;
  std::vector<std::size_t> subgroup1;  // 0 < psi0 - theta_k0 < pi
  std::vector<std::size_t> subgroup2;  // -pi < psi0 - theta_k0 < 0
  std::vector<std::size_t> on_axis;
  /// wrap(psi0 - theta_k0) for every agent.
  std::vector<double> offsets;
};

inline constexpr double kOnAxisTolerance = 1e-9;

struct Assumption1Report {
  bool ok = true;
  /// First offending pair (0-based, lower index first).
  std::optional<std::pair<std::size_t, std::size_t>> violating_pair;
  std::string message;
};

enum class Theorem1Mode { all_positive, allow_zeros, two_agent_sum };

struct ConditionReport {
  bool ok = true;
  std::string message;
};

std::vector<double> control_input(std::span<const double> headings, const ControlLaw& law);
std::vector<double> control_input(const SwarmState& state, const ControlLaw& law);

/// Throws UndefinedPhaseError when |p_theta0| is below kPsiThreshold, and
/// std::invalid_argument unless headings are strictly increasing in (-pi, pi).
SubgroupPartition partition_subgroups(std::span<const double> initial_headings);

Assumption1Report validate_assumption1(const SubgroupPartition& partition,
                                       const GainVector& gains);

ConditionReport validate_theorem1_condition(const GainVector& gains, Theorem1Mode mode);

/// Copy of `gains` flagged with the condition it satisfies, or unchecked.
GainVector certify(const GainVector& gains, Theorem1Mode mode);

/// Center of the circle traced at constant turn rate omega0:
/// c_k = r_k + i omega0^{-1} e^{i theta_k}.
Point circle_center(const SwarmState& state, std::size_t k, double omega0);

}  // namespace phasebal
