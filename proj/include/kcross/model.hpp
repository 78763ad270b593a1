#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include <Eigen/Dense>

namespace kcross {

/// Point in the income/consumption plane, stored as (I, C).
using EconState = Eigen::Vector2d;
/// Time derivative (dI/dt, dC/dt).
using Derivative = Eigen::Vector2d;
/// Row-major 2x2 matrix of partial derivatives of the flow.
using Jacobian2 = Eigen::Matrix2d;

inline double income(const EconState& s) { return s.x(); }
inline double consumption(const EconState& s) { return s.y(); }

inline bool is_finite(const Eigen::Ref<const Eigen::Vector2d>& v) {
  return v.allFinite();
}

/// Structural parameters: alpha is the consumption multiplier (alpha > 1),
/// beta the adjustment speed (beta >= 1). Both must be finite.
class ModelParams {
 public:
  ModelParams(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  ModelParams with_alpha(double alpha) const { return {alpha, beta_}; }
  ModelParams with_beta(double beta) const { return {alpha_, beta}; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double alpha_;
  double beta_;
};

struct ConstantSpending {
  double g;
  friend bool operator==(const ConstantSpending&, const ConstantSpending&) = default;
};

/// G(I) = g0 + k I
struct LinearSpending {
  double g0;
  double k;
  friend bool operator==(const LinearSpending&, const LinearSpending&) = default;
};

/// G(I) = g0 + k I^2
struct QuadraticSpending {
  double g0;
  double k;
  friend bool operator==(const QuadraticSpending&, const QuadraticSpending&) = default;
};

enum class PolicyKind { constant, linear, quadratic };

std::string_view to_string(PolicyKind kind);

/// Government spending rule. Immutable once built; the factories validate
/// g, g0 >= 0 and k > 0.
class GovPolicy {
 public:
  using Rule = std::variant<ConstantSpending, LinearSpending, QuadraticSpending>;

  static GovPolicy constant(double g);
  static GovPolicy linear(double g0, double k);
  static GovPolicy quadratic(double g0, double k);

  const Rule& rule() const noexcept { return rule_; }
  PolicyKind kind() const noexcept;

  /// Intercept: g for the constant rule, g0 otherwise.
  double intercept() const noexcept;
  /// Slope coefficient k, absent for the constant rule.
  std::optional<double> k() const noexcept;

  /// Copy with the intercept (g or g0) replaced.
  GovPolicy with_intercept(double value) const;
  /// Copy with k replaced. Throws for the constant rule.
  GovPolicy with_k(double k) const;

  friend bool operator==(const GovPolicy&, const GovPolicy&) = default;

 private:
  explicit GovPolicy(Rule rule) : rule_(rule) {}
  Rule rule_;
};

/// Government spending G(I).
double spending(const GovPolicy& policy, double i);
/// dG/dI.
double spending_slope(const GovPolicy& policy, double i);

/// dI/dt = I - alpha C,  dC/dt = beta (I - C - G(I)).
Derivative vector_field(const ModelParams& params, const GovPolicy& policy,
                        const EconState& s);

/// Exact Jacobian of vector_field. State-independent except for the
/// quadratic rule.
Jacobian2 jacobian(const ModelParams& params, const GovPolicy& policy,
                   const EconState& s);

inline double trace(const Jacobian2& j) { return j(0, 0) + j(1, 1); }
inline double det(const Jacobian2& j) {
  return j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);
}

}  // namespace kcross
