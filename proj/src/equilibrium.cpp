#include "kcross/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kcross/errors.hpp"

namespace kcross {

namespace {

constexpr double kLinearDegenerateTol = 1e-12;
constexpr double kSingularDet = 1e-14;
constexpr int kMaxHalvings = 20;

double sup_norm(const Eigen::Vector2d& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

EquilibriumPoint make_equilibrium_point(const EconState& state,
                                        EquilibriumSource source) {
  return {state, state.x() >= 0.0 && state.y() >= 0.0, source};
}

double critical_k(const ModelParams& params) { return 1.0 - 1.0 / params.alpha(); }

double critical_g0(const ModelParams& params, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("critical_g0 requires k > 0");
  const double a = params.alpha();
  return (a - 1.0) * (a - 1.0) / (4.0 * a * a * k);
}

Thresholds thresholds(const ModelParams& params, const GovPolicy& policy) {
  switch (policy.kind()) {
    case PolicyKind::constant: return {};
    case PolicyKind::linear: return {critical_k(params), std::nullopt};
    case PolicyKind::quadratic: return {std::nullopt, critical_g0(params, *policy.k())};
  }
  return {};
}

double quadratic_discriminant(const ModelParams& params, double g0, double k) {
  const double a = params.alpha();
  return (a - 1.0) * (a - 1.0) - 4.0 * k * a * a * g0;
}

double quadratic_tolerance(const ModelParams& params) {
  const double am1 = params.alpha() - 1.0;
  return 1e-10 * std::max(1.0, am1 * am1);
}

std::vector<EquilibriumPoint> equilibria(const ModelParams& params,
                                         const GovPolicy& policy) {
  const double a = params.alpha();
  auto on_nullcline = [a](double i) {
    return make_equilibrium_point(EconState(i, i / a), EquilibriumSource::closed_form);
  };

  switch (policy.kind()) {
    case PolicyKind::constant: {
      const double g = policy.intercept();
      return {make_equilibrium_point(EconState(a * g / (a - 1.0), g / (a - 1.0)),
                                     EquilibriumSource::closed_form)};
    }
    case PolicyKind::linear: {
      const double g0 = policy.intercept();
      const double denom = a * (1.0 - *policy.k()) - 1.0;
      if (std::abs(denom) <= kLinearDegenerateTol) {
        std::ostringstream msg;
        msg << "degenerate linear policy: k = " << *policy.k()
            << " equals k_c; the equilibrium is at infinity";
        throw DegeneratePolicyError(msg.str());
      }
      return {make_equilibrium_point(EconState(a * g0 / denom, g0 / denom),
                                     EquilibriumSource::closed_form)};
    }
    case PolicyKind::quadratic: {
      // k I^2 - (1 - 1/a) I + g0 = 0 on the nullcline C = I / a.
      const double g0 = policy.intercept();
      const double k = *policy.k();
      const double b = 1.0 - 1.0 / a;
      const double d = quadratic_discriminant(params, g0, k);
      const double tol = quadratic_tolerance(params);
      if (d < -tol) return {};
      if (d <= tol) return {on_nullcline(b / (2.0 * k))};
      // D / a^2 is the discriminant of the monic-in-b form. Larger root
      // first, smaller one through the product of roots g0 / k.
      const double q = 0.5 * (b + std::sqrt(d) / a);
      return {on_nullcline(g0 / q), on_nullcline(q / k)};
    }
  }
  return {};
}

EquilibriumPoint newton_refine(const ModelParams& params, const GovPolicy& policy,
                               const EconState& guess, double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("newton_refine requires tol > 0");
  if (max_iter < 1) throw std::invalid_argument("newton_refine requires max_iter >= 1");
  if (!is_finite(guess)) throw std::invalid_argument("newton_refine requires a finite guess");

  EconState x = guess;
  double residual = sup_norm(vector_field(params, policy, x));
  for (int iter = 0; iter < max_iter; ++iter) {
    if (residual <= tol)
      return make_equilibrium_point(x, EquilibriumSource::newton_refined);

    const Jacobian2 j = jacobian(params, policy, x);
    if (std::abs(det(j)) < kSingularDet) {
      std::ostringstream msg;
      msg << "singular Jacobian at (" << x.x() << ", " << x.y() << ")";
      throw NewtonError(NewtonError::Reason::singular_jacobian, msg.str());
    }
    const Eigen::Vector2d step = j.inverse() * vector_field(params, policy, x);

    double scale = 1.0;
    bool improved = false;
    for (int h = 0; h <= kMaxHalvings; ++h, scale *= 0.5) {
      const EconState trial = x - scale * step;
      const double r = sup_norm(vector_field(params, policy, trial));
      if (std::isfinite(r) && r < residual) {
        x = trial;
        residual = r;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (residual <= tol) return make_equilibrium_point(x, EquilibriumSource::newton_refined);

  std::ostringstream msg;
  msg << "Newton iteration did not converge: residual " << residual
      << " > tol " << tol;
  throw NewtonError(NewtonError::Reason::not_converged, msg.str());
}

}  // namespace kcross
