#include "kcross/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kcross {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

ModelParams::ModelParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  require(std::isfinite(alpha) && alpha > 1.0,
          "alpha must be finite and > 1, got " + std::to_string(alpha));
  require(std::isfinite(beta) && beta >= 1.0,
          "beta must be finite and >= 1, got " + std::to_string(beta));
}

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::constant: return "constant";
    case PolicyKind::linear: return "linear";
    case PolicyKind::quadratic: return "quadratic";
  }
  return "unknown";
}

GovPolicy GovPolicy::constant(double g) {
  require(std::isfinite(g) && g >= 0.0, "spending g must be finite and >= 0");
  return GovPolicy(ConstantSpending{g});
}

GovPolicy GovPolicy::linear(double g0, double k) {
  require(std::isfinite(g0) && g0 >= 0.0, "spending g0 must be finite and >= 0");
  require(std::isfinite(k) && k > 0.0, "k must be finite and > 0");
  return GovPolicy(LinearSpending{g0, k});
}

GovPolicy GovPolicy::quadratic(double g0, double k) {
  require(std::isfinite(g0) && g0 >= 0.0, "spending g0 must be finite and >= 0");
  require(std::isfinite(k) && k > 0.0, "k must be finite and > 0");
  return GovPolicy(QuadraticSpending{g0, k});
}

PolicyKind GovPolicy::kind() const noexcept {
  return std::visit(overloaded{
                        [](const ConstantSpending&) { return PolicyKind::constant; },
                        [](const LinearSpending&) { return PolicyKind::linear; },
                        [](const QuadraticSpending&) { return PolicyKind::quadratic; },
                    },
                    rule_);
}

double GovPolicy::intercept() const noexcept {
  return std::visit(overloaded{
                        [](const ConstantSpending& p) { return p.g; },
                        [](const auto& p) { return p.g0; },
                    },
                    rule_);
}

std::optional<double> GovPolicy::k() const noexcept {
  return std::visit(overloaded{
                        [](const ConstantSpending&) -> std::optional<double> {
                          return std::nullopt;
                        },
                        [](const auto& p) -> std::optional<double> { return p.k; },
                    },
                    rule_);
}

GovPolicy GovPolicy::with_intercept(double value) const {
  switch (kind()) {
    case PolicyKind::constant: return constant(value);
    case PolicyKind::linear: return linear(value, *k());
    case PolicyKind::quadratic: return quadratic(value, *k());
  }
  return *this;
}

GovPolicy GovPolicy::with_k(double k) const {
  switch (kind()) {
    case PolicyKind::constant:
      throw std::invalid_argument("constant spending rule has no k");
    case PolicyKind::linear: return linear(intercept(), k);
    case PolicyKind::quadratic: return quadratic(intercept(), k);
  }
  return *this;
}

double spending(const GovPolicy& policy, double i) {
  return std::visit(overloaded{
                        [](const ConstantSpending& p) { return p.g; },
                        [i](const LinearSpending& p) { return p.g0 + p.k * i; },
                        [i](const QuadraticSpending& p) { return p.g0 + p.k * i * i; },
                    },
                    policy.rule());
}

double spending_slope(const GovPolicy& policy, double i) {
  return std::visit(overloaded{
                        [](const ConstantSpending&) { return 0.0; },
                        [](const LinearSpending& p) { return p.k; },
                        [i](const QuadraticSpending& p) { return 2.0 * p.k * i; },
                    },
                    policy.rule());
}

Derivative vector_field(const ModelParams& params, const GovPolicy& policy,
                        const EconState& s) {
  const double i = income(s);
  const double c = consumption(s);
  return {i - params.alpha() * c,
          params.beta() * (i - c - spending(policy, i))};
}

Jacobian2 jacobian(const ModelParams& params, const GovPolicy& policy,
                   const EconState& s) {
  const double beta = params.beta();
  Jacobian2 j;
  j << 1.0, -params.alpha(),
       beta * (1.0 - spending_slope(policy, income(s))), -beta;
  return j;
}

}  // namespace kcross
