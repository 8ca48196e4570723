#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "phasebal/angles.hpp"
#include "phasebal/control.hpp"
#include "phasebal/errors.hpp"

using namespace phasebal;
using doctest::Approx;

namespace {

std::vector<double> deg(std::initializer_list<double> d) {
  std::vector<double> out;
  for (double v : d) out.push_back(deg_to_rad(v));
  return out;
}

ControlLaw balance(std::vector<double> k, double omega0 = 0.0) {
  return {LawKind::balance, omega0, GainVector(std::move(k))};
}

}  // namespace

TEST_SUITE("control") {

TEST_CASE("control input examples") {
  auto u = control_input(std::vector<double>{0.0, kPi}, balance({3.0, -7.0}, 0.2));
  CHECK(u[0] == Approx(0.2));
  CHECK(u[1] == Approx(0.2));
  u = control_input(std::vector<double>{0.0, kPi / 2}, balance({1.0, 1.0}));
  CHECK(u[0] == Approx(-0.5));
  CHECK(u[1] == Approx(0.5));
  u = control_input(std::vector<double>{0.0, kPi / 2}, balance({2.0, 1.0}));
  CHECK(u[0] == Approx(-1.0));
  CHECK(u[1] == Approx(0.5));
  CHECK_THROWS_AS(control_input(std::vector<double>{0.0, 1.0, 2.0}, balance({1.0, 1.0})),
                  std::invalid_argument);
}

TEST_CASE("control input properties") {
  gen::Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(2 + trial % 8);
    const auto th = gen::any_headings(rng, n);
    std::vector<double> k(n);
    for (auto& v : k) v = gen::uniform(rng, 0.1, 4.0) * (gen::uniform(rng, 0, 1) < 0.3 ? -1 : 1);
    const double w0 = gen::uniform(rng, -1, 1);
    const auto law = balance(k, w0);
    const auto u = control_input(th, law);
    const auto g = grad_U(th);
    double weighted = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(u[i] - (w0 - k[i] * g[i])) < 1e-12);
      weighted += (u[i] - w0) / k[i];
    }
    CHECK(std::abs(weighted) < 1e-12);

    auto k2 = k;
    for (auto& v : k2) v *= 2.0;
    const auto u2 = control_input(th, balance(k2, w0));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs((u2[i] - w0) - 2.0 * (u[i] - w0)) < 1e-12);

    if (n <= 3) {
      const ControlLaw splay{LawKind::splay, w0, GainVector(k)};
      CHECK(control_input(th, splay) == u);
    }
  }
}

TEST_CASE("subgroup partition examples") {
  auto p = partition_subgroups(deg({-90, -60, -30, 0, 30, 60, 90}));
  CHECK(p.reference_psi == Approx(0.0));
  CHECK(p.subgroup1 == std::vector<std::size_t>{0, 1, 2});
  CHECK(p.subgroup2 == std::vector<std::size_t>{4, 5, 6});
  CHECK(p.on_axis == std::vector<std::size_t>{3});

  p = partition_subgroups(deg({0, 120}));
  CHECK(p.reference_psi == Approx(deg_to_rad(60)));
  CHECK(p.subgroup1 == std::vector<std::size_t>{0});
  CHECK(p.subgroup2 == std::vector<std::size_t>{1});

  p = partition_subgroups(deg({-45, 45}));
  CHECK(p.reference_psi == Approx(0.0));
  CHECK(p.subgroup1 == std::vector<std::size_t>{0});
  CHECK(p.subgroup2 == std::vector<std::size_t>{1});
}

TEST_CASE("subgroup partition errors") {
  CHECK_THROWS_AS(partition_subgroups(deg({0, 180})), std::invalid_argument);  // 180 not < pi
  CHECK_THROWS_AS(partition_subgroups(deg({0, 120, 240 - 360})), std::invalid_argument);
  CHECK_THROWS_AS(partition_subgroups(deg({-120, 0, 120})), UndefinedPhaseError);
  CHECK_THROWS_AS(partition_subgroups(deg({10, 10})), std::invalid_argument);
}

TEST_CASE("gain ordering check examples") {
  const auto p7 = partition_subgroups(deg({-90, -60, -30, 0, 30, 60, 90}));
  auto r = validate_assumption1(p7, GainVector({2, 1, 0, 0, 0, 1, 2}));
  CHECK(r.ok);
  r = validate_assumption1(p7, GainVector({1, 2, 0, 0, 0, 1, 2}));
  CHECK_FALSE(r.ok);
  REQUIRE(r.violating_pair);
  CHECK(r.violating_pair->first == 0);
  CHECK(r.violating_pair->second == 1);

  const auto p3 = partition_subgroups(deg({0, 30, 60}));
  CHECK(p3.subgroup1 == std::vector<std::size_t>{0});
  CHECK(p3.on_axis == std::vector<std::size_t>{1});
  CHECK(p3.subgroup2 == std::vector<std::size_t>{2});
  CHECK(validate_assumption1(p3, GainVector({2, 3, 6})).ok);
  CHECK(validate_assumption1(p3, GainVector({6, 3, 1})).ok);
  // on-axis agents are unconstrained
  CHECK(validate_assumption1(p7, GainVector({2, 1, 0, 50, 0, 1, 2})).ok);
  CHECK_FALSE(validate_assumption1(p7, GainVector({2, 1, -0.1, 0, 0, 1, 2})).ok);
  CHECK_THROWS_AS(validate_assumption1(p3, GainVector({1, 2})), std::invalid_argument);
}

TEST_CASE("generated gains pass the ordering check") {
  gen::Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = gen::ordered_scenario(rng, static_cast<std::size_t>(2 + trial % 6));
    CHECK(validate_assumption1(partition_subgroups(s.theta0), GainVector(s.gains)).ok);
  }
}

TEST_CASE("sufficient gain conditions") {
  CHECK(validate_theorem1_condition(GainVector({2, 1, 0, 0, 0, 1, 2}), Theorem1Mode::allow_zeros).ok);
  CHECK_FALSE(validate_theorem1_condition(GainVector({2, 1, 0, 0, 0, 1, 2}), Theorem1Mode::all_positive).ok);
  CHECK_FALSE(validate_theorem1_condition(GainVector({2, 0, 0, 0, 0, 1, 2}), Theorem1Mode::allow_zeros).ok);
  CHECK(validate_theorem1_condition(GainVector({3, -1}), Theorem1Mode::two_agent_sum).ok);
  CHECK_FALSE(validate_theorem1_condition(GainVector({-3, 1}), Theorem1Mode::two_agent_sum).ok);
  CHECK_THROWS_AS(validate_theorem1_condition(GainVector({1, 1, 1}), Theorem1Mode::two_agent_sum),
                  std::invalid_argument);

  CHECK(certify(GainVector({1, 2}), Theorem1Mode::all_positive).validated_against() ==
        GainCondition::all_positive);
  CHECK(certify(GainVector({3, -1}), Theorem1Mode::two_agent_sum).validated_against() ==
        GainCondition::two_agent_sum);
  CHECK(certify(GainVector({-3, 1}), Theorem1Mode::two_agent_sum).validated_against() ==
        GainCondition::unchecked);
}

TEST_CASE("circle centers") {
  auto c = circle_center(SwarmState(0, {{0, 0}, {1, 1}}, {0.0, 0.0}), 0, 1.0);
  CHECK(c.x == Approx(0.0));
  CHECK(c.y == Approx(1.0));
  c = circle_center(SwarmState(0, {{0, 0}, {1, 1}}, {kPi / 2, 0.0}), 0, 1.0);
  CHECK(c.x == Approx(-1.0));
  CHECK(c.y == Approx(0.0).epsilon(1e-15));
  c = circle_center(SwarmState(0, {{2, -2}, {1, 1}}, {kPi / 3, 0.0}), 0, 0.2);
  CHECK(c.x == Approx(-2.3301270189));
  CHECK(c.y == Approx(0.5));
  CHECK_THROWS_AS(circle_center(SwarmState(0, {{0, 0}, {1, 1}}, {0.0, 0.0}), 0, 0.0),
                  std::invalid_argument);
}

}  // TEST_SUITE
