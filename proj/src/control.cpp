#include "phasebal/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "phasebal/angles.hpp"
#include "phasebal/errors.hpp"

namespace phasebal {

std::string_view to_string(LawKind k) {
  return k == LawKind::balance ? "balance" : "splay";
}

std::vector<double> control_input(std::span<const double> headings, const ControlLaw& law) {
  if (law.gains.size() != headings.size()) {
    throw std::invalid_argument("control_input: " + std::to_string(law.gains.size()) +
                                " gains for " + std::to_string(headings.size()) + " agents");
  }
  auto u = law.kind == LawKind::balance ? grad_U(headings) : grad_W(headings);
  for (std::size_t k = 0; k < u.size(); ++k) {
    u[k] = law.omega0 - law.gains[k] * u[k];
  }
  return u;
}

std::vector<double> control_input(const SwarmState& state, const ControlLaw& law) {
  return control_input(std::span<const double>(state.headings()), law);
}

SubgroupPartition partition_subgroups(std::span<const double> initial_headings) {
  if (initial_headings.size() < 2) {
    throw std::invalid_argument("partition_subgroups: need at least 2 agents");
  }
  for (std::size_t k = 0; k < initial_headings.size(); ++k) {
    const double th = initial_headings[k];
    if (!(th > -kPi && th < kPi)) {
      throw std::invalid_argument("partition_subgroups: initial headings must lie in (-pi, pi)");
    }
    if (k > 0 && !(th > initial_headings[k - 1])) {
      throw std::invalid_argument("partition_subgroups: initial headings must be strictly increasing");
    }
  }
  const auto p0 = order_parameter(initial_headings, 1);
  if (!p0.psi_defined) {
    throw UndefinedPhaseError("partition_subgroups: initial order parameter vanishes, psi0 undefined");
  }
  SubgroupPartition part;
  part.reference_psi = p0.psi;
  for (std::size_t k = 0; k < initial_headings.size(); ++k) {
    const double offset = wrap_to_pi(p0.psi - initial_headings[k]);
    part.offsets.push_back(offset);
    if (std::abs(offset) <= kOnAxisTolerance) {
      part.on_axis.push_back(k);
    } else if (offset > 0.0) {
      part.subgroup1.push_back(k);
    } else {
      part.subgroup2.push_back(k);
    }
  }
  return part;
}

namespace {

// Gains must be non-negative and non-decreasing when walking away from the
// reference axis. `group` is ordered nearest-to-axis first.
Assumption1Report check_outward(const std::vector<std::size_t>& group, const GainVector& gains,
                                const char* label) {
  Assumption1Report r;
  for (std::size_t i = 0; i < group.size(); ++i) {
    const std::size_t k = group[i];
    if (gains[k] < 0.0) {
      r.ok = false;
      r.message = std::string(label) + ": agent " + std::to_string(k + 1) + " has negative gain";
      return r;
    }
    if (i > 0 && gains[k] < gains[group[i - 1]]) {
      r.ok = false;
      r.violating_pair = std::minmax(group[i - 1], k);
      r.message = std::string(label) + ": gain of agent " + std::to_string(k + 1) +
                  " is smaller than that of agent " + std::to_string(group[i - 1] + 1) +
                  ", which is closer to the reference axis";
      return r;
    }
  }
  return r;
}

}  // namespace

Assumption1Report validate_assumption1(const SubgroupPartition& partition,
                                       const GainVector& gains) {
  const std::size_t n = partition.subgroup1.size() + partition.subgroup2.size() +
                        partition.on_axis.size();
  if (gains.size() != n || partition.offsets.size() != n) {
    throw std::invalid_argument("validate_assumption1: gain count does not match partition");
  }
  auto outward = [&](std::vector<std::size_t> group) {
    std::stable_sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(partition.offsets[a]) < std::abs(partition.offsets[b]);
    });
    return group;
  };
  auto r = check_outward(outward(partition.subgroup1), gains, "subgroup 1");
  if (!r.ok) return r;
  r = check_outward(outward(partition.subgroup2), gains, "subgroup 2");
  if (!r.ok) return r;
  r.message = "ok";
  return r;
}

ConditionReport validate_theorem1_condition(const GainVector& gains, Theorem1Mode mode) {
  ConditionReport r;
  const auto& k = gains.values();
  switch (mode) {
    case Theorem1Mode::all_positive:
      if (std::any_of(k.begin(), k.end(), [](double g) { return !(g > 0.0); })) {
        r.ok = false;
        r.message = "all-positive: some gain is not strictly positive";
      }
      break;
    case Theorem1Mode::allow_zeros: {
      const auto zeros = std::count(k.begin(), k.end(), 0.0);
      const auto limit = static_cast<long>(k.size() / 2);
      if (std::any_of(k.begin(), k.end(), [](double g) { return g < 0.0; })) {
        r.ok = false;
        r.message = "allow-zeros: negative gain present";
      } else if (zeros > limit) {
        r.ok = false;
        r.message = "allow-zeros: " + std::to_string(zeros) + " zero gains exceed floor(N/2) = " +
                    std::to_string(limit);
      }
      break;
    }
    case Theorem1Mode::two_agent_sum:
      if (k.size() != 2) {
        throw std::invalid_argument("two-agent-sum condition requires N = 2");
      }
      if (!(k[0] + k[1] > 0.0)) {
        r.ok = false;
        r.message = "two-agent-sum: K1 + K2 must be positive";
      }
      break;
  }
  if (r.ok) r.message = "ok";
  return r;
}

GainVector certify(const GainVector& gains, Theorem1Mode mode) {
  if (!validate_theorem1_condition(gains, mode).ok) {
    return GainVector(gains.values(), GainCondition::unchecked);
  }
  GainCondition c = GainCondition::all_positive;
  if (mode == Theorem1Mode::allow_zeros) c = GainCondition::allow_zeros;
  if (mode == Theorem1Mode::two_agent_sum) c = GainCondition::two_agent_sum;
  return GainVector(gains.values(), c);
}

Point circle_center(const SwarmState& state, std::size_t k, double omega0) {
  if (omega0 == 0.0) {
    throw std::invalid_argument("circle_center: omega0 = 0 has no finite orbit center");
  }
  if (k >= state.size()) throw std::out_of_range("circle_center: agent index");
  const auto& r = state.positions()[k];
  const double th = state.headings()[k];
  return {r.x - std::sin(th) / omega0, r.y + std::cos(th) / omega0};
}

}  // namespace phasebal
