#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "kcross/equilibrium.hpp"
#include "kcross/errors.hpp"
#include "kcross/model.hpp"
#include "kcross/window.hpp"

namespace kcross {

enum class StepMode { fixed, adaptive };

struct IntegrationOptions {
  /// Fixed step, or the initial step in adaptive mode.
  double dt = 1e-2;
  double t_max = 50.0;
  StepMode mode = StepMode::fixed;
  /// Adaptive acceptance threshold on the step-doubling error estimate.
  double rel_tol = 1e-8;
  /// Capture when within capture_radius * max(1, |eq|_inf) of an equilibrium.
  double capture_radius = 1e-8;
  /// Escape when |state|_inf exceeds this.
  double escape_radius = 1e6;
  /// Leaving this box also counts as an escape.
  std::optional<Window> bounds;
  /// Integrate the negated field (t still counts elapsed time upward).
  bool reverse_time = false;

  /// Throws std::invalid_argument on non-positive steps or tolerances, or
  /// dt > t_max.
  void validate() const;
};

enum class Termination { time_exhausted, captured, escaped, step_underflow };

std::string_view to_string(Termination t);

struct Sample {
  double t;
  EconState state;
};

struct Trajectory {
  /// First sample is the initial condition at t = 0; t strictly increasing.
  std::vector<Sample> samples;
  Termination termination = Termination::time_exhausted;
  /// Index into the equilibria passed to integrate(), when captured.
  std::optional<std::size_t> captured_index;

  const EconState& final_state() const { return samples.back().state; }
  double final_time() const { return samples.back().t; }
};

/// One classical RK4 step of an arbitrary planar field.
template <class Field>
EconState rk4_step(Field&& field, const EconState& s, double dt) {
  const Eigen::Vector2d k1 = field(s);
  const Eigen::Vector2d k2 = field(EconState(s + 0.5 * dt * k1));
  const Eigen::Vector2d k3 = field(EconState(s + 0.5 * dt * k2));
  const Eigen::Vector2d k4 = field(EconState(s + dt * k3));
  const EconState next = s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!k1.allFinite() || !k2.allFinite() || !k3.allFinite() || !k4.allFinite() ||
      !next.allFinite())
    throw StepFailure("RK4 step produced a non-finite value");
  return next;
}

/// One RK4 step of vector_field. Throws StepFailure on non-finite values.
EconState rk4_step(const ModelParams& params, const GovPolicy& policy,
                   const EconState& s, double dt);

/// Integrates from init until t_max, capture by one of the supplied
/// equilibria, escape, or (adaptive mode) step underflow below
/// 1e-14 * t_max. Every accepted step is recorded.
Trajectory integrate(const ModelParams& params, const GovPolicy& policy,
                     const EconState& init, const IntegrationOptions& opts,
                     std::span<const EquilibriumPoint> equilibria = {});

}  // namespace kcross
