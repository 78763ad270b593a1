#pragma once

#include <optional>
#include <vector>

#include "kcross/model.hpp"

namespace kcross {

enum class EquilibriumSource { closed_form, newton_refined };

struct EquilibriumPoint {
  EconState state;
  /// Both coordinates non-negative.
  bool economically_sensible;
  EquilibriumSource source;
};

EquilibriumPoint make_equilibrium_point(const EconState& state,
                                        EquilibriumSource source);

struct Thresholds {
  std::optional<double> k_c;      // linear rule only
  std::optional<double> g0_crit;  // quadratic rule only
};

Thresholds thresholds(const ModelParams& params, const GovPolicy& policy);

/// Closed-form equilibria, sorted by ascending income.
///
/// Constant and linear rules give one point. The quadratic rule gives two,
/// one or zero points depending on the sign of
/// D = (alpha - 1)^2 - 4 k alpha^2 g0, decided with quadratic_tolerance().
/// Throws DegeneratePolicyError for a linear rule with alpha (1 - k) = 1.
std::vector<EquilibriumPoint> equilibria(const ModelParams& params,
                                         const GovPolicy& policy);

/// D = (alpha - 1)^2 - 4 k alpha^2 g0 for a quadratic rule.
double quadratic_discriminant(const ModelParams& params, double g0, double k);
/// Band |D| <= tol inside which the quadratic rule has a single (tangent)
/// equilibrium.
double quadratic_tolerance(const ModelParams& params);

/// k_c = 1 - 1/alpha.
double critical_k(const ModelParams& params);
/// g0_crit = (alpha - 1)^2 / (4 alpha^2 k); throws for k <= 0.
double critical_g0(const ModelParams& params, double k);

/// Damped Newton iteration on vector_field with the exact Jacobian. The
/// step is halved (up to 20 times) until the residual sup-norm decreases.
/// Throws NewtonError when the residual does not reach tol within max_iter
/// iterations or the Jacobian becomes singular (|det| < 1e-14).
EquilibriumPoint newton_refine(const ModelParams& params, const GovPolicy& policy,
                               const EconState& guess, double tol = 1e-12,
                               int max_iter = 100);

}  // namespace kcross
