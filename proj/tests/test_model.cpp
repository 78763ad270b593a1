#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "kcross/model.hpp"
#include "support/scenarios.hpp"

using namespace kcross;
using kcross::testing::ScenarioGen;

TEST_CASE("ModelParams rejects out-of-range values") {
  CHECK_NOTHROW(ModelParams(1.0000001, 1.0));
  CHECK_THROWS_AS(ModelParams(1.0, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(0.5, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(2.0, 0.999), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(std::numeric_limits<double>::infinity(), 4.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(2.0, std::nan("")), std::invalid_argument);
}

TEST_CASE("GovPolicy validates its coefficients") {
  CHECK_THROWS_AS(GovPolicy::constant(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(GovPolicy::linear(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GovPolicy::quadratic(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GovPolicy::quadratic(1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(GovPolicy::constant(1.0).with_k(0.5), std::invalid_argument);

  const auto lin = GovPolicy::linear(1.0, 0.25);
  CHECK(lin.kind() == PolicyKind::linear);
  CHECK(lin.intercept() == 1.0);
  CHECK(*lin.k() == 0.25);
  CHECK(lin.with_intercept(2.0) == GovPolicy::linear(2.0, 0.25));
  CHECK(lin.with_k(0.5) == GovPolicy::linear(1.0, 0.5));
  CHECK_FALSE(GovPolicy::constant(3.0).k().has_value());
}

TEST_CASE("spending evaluates each rule") {
  CHECK(spending(GovPolicy::constant(1.0), 7.3) == 1.0);
  CHECK(spending(GovPolicy::linear(1.0, 0.25), 4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(spending(GovPolicy::quadratic(0.75, 1.0 / 16.0), 6.0) ==
        doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("vector_field examples") {
  const ModelParams p(2.0, 4.0);
  const auto g1 = GovPolicy::constant(1.0);

  const Derivative at_eq = vector_field(p, g1, EconState(2.0, 1.0));
  CHECK(at_eq.x() == 0.0);
  CHECK(at_eq.y() == 0.0);

  const Derivative at_origin = vector_field(p, g1, EconState(0.0, 0.0));
  CHECK(at_origin.x() == 0.0);
  CHECK(at_origin.y() == -4.0);

  const Derivative quad = vector_field(p, GovPolicy::quadratic(0.75, 1.0 / 16.0), EconState(6, 3));
  CHECK(std::abs(quad.x()) < 1e-15);
  CHECK(std::abs(quad.y()) < 1e-14);
}

TEST_CASE("jacobian examples") {
  const ModelParams p(2.0, 4.0);
  Jacobian2 want;

  want << 1, -2, 4, -4;
  CHECK(jacobian(p, GovPolicy::constant(1.0), EconState(9, -3)) == want);

  want << 1, -2, 1, -4;
  CHECK((jacobian(p, GovPolicy::linear(1.0, 0.75), EconState(0, 0)) - want).norm() < 1e-15);
  CHECK((jacobian(p, GovPolicy::quadratic(0.75, 1.0 / 16.0), EconState(6, 3)) - want).norm() <
        1e-15);

  const Jacobian2 j = jacobian(p, GovPolicy::constant(1.0), EconState(2, 1));
  CHECK(trace(j) == -3.0);
  CHECK(det(j) == 4.0);
}

TEST_CASE("jacobian matches central finite differences") {
  ScenarioGen gen(101);
  constexpr double h = 1e-6;
  for (int n = 0; n < 500; ++n) {
    const ModelParams p = gen.params();
    const GovPolicy pol = gen.any_policy();
    const EconState s(gen.uniform(-10, 10), gen.uniform(-10, 10));
    const Jacobian2 j = jacobian(p, pol, s);
    for (int col = 0; col < 2; ++col) {
      EconState plus = s, minus = s;
      plus(col) += h;
      minus(col) -= h;
      const Eigen::Vector2d fd =
          (vector_field(p, pol, plus) - vector_field(p, pol, minus)) / (2.0 * h);
      for (int row = 0; row < 2; ++row) CHECK(std::abs(fd(row) - j(row, col)) <= 1e-6);
    }
  }
}

TEST_CASE("constant and linear jacobians are state independent") {
  ScenarioGen gen(102);
  for (int n = 0; n < 200; ++n) {
    const ModelParams p = gen.params();
    for (const auto& pol : {GovPolicy::constant(gen.uniform(0, 5)),
                            GovPolicy::linear(gen.uniform(0, 5), gen.uniform(0.01, 2))}) {
      const EconState a(gen.uniform(-50, 50), gen.uniform(-50, 50));
      const EconState b(gen.uniform(-50, 50), gen.uniform(-50, 50));
      CHECK(jacobian(p, pol, a) == jacobian(p, pol, b));
    }
  }
}

TEST_CASE("dC/dt is affine in constant spending with slope -beta") {
  ScenarioGen gen(103);
  for (int n = 0; n < 200; ++n) {
    const ModelParams p = gen.params();
    const double a = gen.uniform(0, 5), b = gen.uniform(0, 5);
    const EconState s(gen.uniform(-10, 10), gen.uniform(-10, 10));
    const Derivative sum = vector_field(p, GovPolicy::constant(a + b), s);
    const Derivative part = vector_field(p, GovPolicy::constant(a), s) +
                            Derivative(0.0, -p.beta() * b);
    CHECK(sum.x() == part.x());
    CHECK(std::abs(sum.y() - part.y()) <= 1e-12 * std::max(1.0, std::abs(sum.y())));
  }
}

TEST_CASE("constant-policy determinant is beta (alpha - 1) > 0") {
  ScenarioGen gen(104);
  for (int n = 0; n < 200; ++n) {
    const ModelParams p = gen.params();
    const double d = det(jacobian(p, GovPolicy::constant(1.0), EconState(0, 0)));
    CHECK(d > 0.0);
    CHECK(d == doctest::Approx(p.beta() * (p.alpha() - 1.0)).epsilon(1e-12));
  }
}
