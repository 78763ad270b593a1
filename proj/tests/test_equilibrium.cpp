#include <doctest.h>

#include <cmath>

#include "kcross/equilibrium.hpp"
#include "kcross/errors.hpp"
#include "support/scenarios.hpp"

using namespace kcross;
using kcross::testing::rel_err;
using kcross::testing::ScenarioGen;
using kcross::testing::sup_norm;

namespace {

void check_state(const EconState& got, double i, double c, double tol = 1e-12) {
  CHECK(std::abs(got.x() - i) <= tol);
  CHECK(std::abs(got.y() - c) <= tol);
}

}  // namespace

TEST_CASE("equilibria: constant policy") {
  const auto eqs = equilibria(ModelParams(2, 4), GovPolicy::constant(1.0));
  REQUIRE(eqs.size() == 1);
  check_state(eqs[0].state, 2.0, 1.0);
  CHECK(eqs[0].economically_sensible);
  CHECK(eqs[0].source == EquilibriumSource::closed_form);

  const auto newton = newton_refine(ModelParams(2, 4), GovPolicy::constant(1.0), EconState(1.5, 0.5));
  check_state(newton.state, 2.0, 1.0, 1e-10);
}

TEST_CASE("equilibria: linear policy on both sides of k_c") {
  const ModelParams p(2, 4);
  auto below = equilibria(p, GovPolicy::linear(1.0, 0.25));
  REQUIRE(below.size() == 1);
  check_state(below[0].state, 4.0, 2.0);
  CHECK(below[0].economically_sensible);

  auto above = equilibria(p, GovPolicy::linear(1.0, 0.75));
  REQUIRE(above.size() == 1);
  check_state(above[0].state, -4.0, -2.0);
  CHECK_FALSE(above[0].economically_sensible);

  CHECK_THROWS_AS(equilibria(p, GovPolicy::linear(1.0, 0.5)), DegeneratePolicyError);
}

TEST_CASE("equilibria: quadratic policy counts two, one, zero") {
  const ModelParams p(2, 4);
  const double k = 1.0 / 16.0;

  const auto two = equilibria(p, GovPolicy::quadratic(0.75, k));
  REQUIRE(two.size() == 2);
  check_state(two[0].state, 2.0, 1.0);
  check_state(two[1].state, 6.0, 3.0);

  const auto one = equilibria(p, GovPolicy::quadratic(1.0, k));
  REQUIRE(one.size() == 1);
  check_state(one[0].state, 4.0, 2.0);

  CHECK(equilibria(p, GovPolicy::quadratic(1.25, k)).empty());
}

TEST_CASE("critical values") {
  CHECK(critical_k(ModelParams(2, 4)) == 0.5);
  CHECK(critical_k(ModelParams(1.1, 4)) == doctest::Approx(1.0 / 11.0).epsilon(1e-14));
  CHECK(critical_k(ModelParams(1.0 + 1e-9, 4)) < 1e-8);

  CHECK(critical_g0(ModelParams(2, 4), 1.0 / 16.0) == 1.0);
  CHECK(critical_g0(ModelParams(2, 4), 1.0) == 1.0 / 16.0);
  CHECK(critical_g0(ModelParams(5, 4), 1.0) == doctest::Approx(0.16).epsilon(1e-15));
  CHECK_THROWS_AS(critical_g0(ModelParams(2, 4), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(critical_g0(ModelParams(2, 4), -1.0), std::invalid_argument);

  const Thresholds lin = thresholds(ModelParams(2, 4), GovPolicy::linear(1, 0.3));
  CHECK(lin.k_c == 0.5);
  CHECK_FALSE(lin.g0_crit);
  const Thresholds quad = thresholds(ModelParams(2, 4), GovPolicy::quadratic(1, 1.0 / 16));
  CHECK(quad.g0_crit == 1.0);
  CHECK_FALSE(quad.k_c);
}

TEST_CASE("newton_refine: basin of the larger quadratic root") {
  const auto pt = newton_refine(ModelParams(2, 4), GovPolicy::quadratic(0.75, 1.0 / 16.0),
                                EconState(5.5, 3.2));
  check_state(pt.state, 6.0, 3.0, 1e-10);
  CHECK(pt.source == EquilibriumSource::newton_refined);
}

TEST_CASE("newton_refine: fails where no root exists") {
  const ModelParams p(2, 4);
  const auto pol = GovPolicy::quadratic(1.25, 1.0 / 16.0);
  for (const EconState& guess : {EconState(1, 0.5), EconState(3, 1), EconState(10, 2),
                                 EconState(-5, 4), EconState(4.5, 2)}) {
    try {
      newton_refine(p, pol, guess, 1e-12, 200);
      FAIL("expected NewtonError");
    } catch (const NewtonError& e) {
      CHECK(e.reason() == NewtonError::Reason::not_converged);
    }
  }
  // The fold line I = 4 has a singular Jacobian.
  try {
    newton_refine(p, pol, EconState(4, 3));
    FAIL("expected NewtonError");
  } catch (const NewtonError& e) {
    CHECK(e.reason() == NewtonError::Reason::singular_jacobian);
  }
  CHECK_THROWS_AS(newton_refine(p, pol, EconState(1, 1), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(newton_refine(p, pol, EconState(1, 1), 1e-12, 0), std::invalid_argument);
}

TEST_CASE("closed-form equilibria are fixed points of the Newton map") {
  ScenarioGen gen(201);
  for (int n = 0; n < 1000; ++n) {
    const auto [p, pol] = gen.scenario();
    for (const auto& eq : equilibria(p, pol)) {
      const Jacobian2 j = jacobian(p, pol, eq.state);
      const Eigen::Vector2d step = j.partialPivLu().solve(vector_field(p, pol, eq.state));
      CHECK(sup_norm(step) <= 1e-10 * std::max(1e-300, sup_norm(eq.state)));
      // Reported residual bound.
      CHECK(sup_norm(vector_field(p, pol, eq.state)) <=
            1e-9 * std::max(1.0, sup_norm(eq.state)));
      // I-nullcline membership.
      CHECK(rel_err(eq.state.y(), eq.state.x() / p.alpha()) <= 1e-12);
    }
  }
}

TEST_CASE("constant-policy equilibria scale linearly with g") {
  ScenarioGen gen(202);
  for (int n = 0; n < 200; ++n) {
    const ModelParams p = gen.params();
    const double g = gen.uniform(0.1, 5), s = gen.uniform(0.1, 10);
    const EconState base = equilibria(p, GovPolicy::constant(g))[0].state;
    const EconState scaled = equilibria(p, GovPolicy::constant(s * g))[0].state;
    CHECK(rel_err(scaled.x(), s * base.x()) <= 1e-12);
    CHECK(rel_err(scaled.y(), s * base.y()) <= 1e-12);
  }
}

TEST_CASE("quadratic roots satisfy Vieta's relations") {
  ScenarioGen gen(203);
  for (int n = 0; n < 500; ++n) {
    const ModelParams p = gen.params();
    const double k = gen.uniform(0.001, 2.0);
    // Includes g0 far below the threshold, where cancellation would bite.
    const double g0 = critical_g0(p, k) * std::pow(10.0, gen.uniform(-8, -0.05));
    const auto eqs = equilibria(p, GovPolicy::quadratic(g0, k));
    REQUIRE(eqs.size() == 2);
    const double i1 = eqs[0].state.x(), i2 = eqs[1].state.x();
    CHECK(i1 < i2);
    CHECK(rel_err(i1 * i2, g0 / k) <= 1e-9);
    CHECK(rel_err(i1 + i2, (1.0 - 1.0 / p.alpha()) / k) <= 1e-9);
  }
}

TEST_CASE("quadratic tangency is detected inside the tolerance band") {
  const ModelParams p(3.0, 2.0);
  const double k = 0.7;
  const double crit = critical_g0(p, k);
  CHECK(equilibria(p, GovPolicy::quadratic(crit, k)).size() == 1);
  CHECK(equilibria(p, GovPolicy::quadratic(crit * (1 - 1e-6), k)).size() == 2);
  CHECK(equilibria(p, GovPolicy::quadratic(crit * (1 + 1e-6), k)).empty());
}
