#include "kcross/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kcross {

namespace {

double sup_norm(const Eigen::Vector2d& v) { return v.cwiseAbs().maxCoeff(); }

constexpr int kGrowAfter = 5;
constexpr double kGrowFactor = 1.5;

class Stepper {
 public:
  Stepper(const ModelParams& params, const GovPolicy& policy,
          const IntegrationOptions& opts, std::span<const EquilibriumPoint> eqs)
      : params_(params), policy_(policy), opts_(opts), eqs_(eqs),
        sign_(opts.reverse_time ? -1.0 : 1.0) {}

  EconState step(const EconState& s, double dt) const {
    return rk4_step(
        [this](const EconState& x) -> Eigen::Vector2d {
          return sign_ * vector_field(params_, policy_, x);
        },
        s, dt);
  }

  // Records the sample and reports whether integration should stop.
  bool record(Trajectory& traj, double t, const EconState& s) const {
    traj.samples.push_back({t, s});
    for (std::size_t e = 0; e < eqs_.size(); ++e) {
      const EconState& q = eqs_[e].state;
      if (sup_norm(s - q) <= opts_.capture_radius * std::max(1.0, sup_norm(q))) {
        traj.termination = Termination::captured;
        traj.captured_index = e;
        return true;
      }
    }
    if (sup_norm(s) > opts_.escape_radius ||
        (opts_.bounds && !opts_.bounds->contains(s))) {
      traj.termination = Termination::escaped;
      return true;
    }
    return false;
  }

 private:
  const ModelParams& params_;
  const GovPolicy& policy_;
  const IntegrationOptions& opts_;
  std::span<const EquilibriumPoint> eqs_;
  double sign_;
};

void integrate_fixed(const Stepper& stepper, const IntegrationOptions& opts,
                     Trajectory& traj) {
  const double ratio = opts.t_max / opts.dt;
  // Absorb rounding in t_max / dt so an exact multiple has no sliver step.
  auto full = static_cast<long long>(std::floor(ratio * (1.0 + 1e-12)));
  EconState s = traj.samples.front().state;
  for (long long n = 1; n <= full; ++n) {
    const double t = n == full && std::abs(full * opts.dt - opts.t_max) <= 1e-12 * opts.t_max
                         ? opts.t_max
                         : static_cast<double>(n) * opts.dt;
    const double prev = traj.samples.back().t;
    s = stepper.step(s, t - prev);
    if (stepper.record(traj, t, s)) return;
  }
  const double prev = traj.samples.back().t;
  if (opts.t_max - prev > 1e-12 * opts.t_max) {
    s = stepper.step(s, opts.t_max - prev);
    if (stepper.record(traj, opts.t_max, s)) return;
  }
  traj.termination = Termination::time_exhausted;
}

void integrate_adaptive(const Stepper& stepper, const IntegrationOptions& opts,
                        Trajectory& traj) {
  const double min_dt = 1e-14 * opts.t_max;
  EconState s = traj.samples.front().state;
  double t = 0.0;
  double h = opts.dt;
  int streak = 0;
  while (opts.t_max - t > 1e-12 * opts.t_max) {
    h = std::min(h, opts.t_max - t);
    if (h < min_dt) {
      traj.termination = Termination::step_underflow;
      return;
    }
    const EconState coarse = stepper.step(s, h);
    const EconState fine = stepper.step(stepper.step(s, 0.5 * h), 0.5 * h);
    const double err = sup_norm(fine - coarse) / 15.0;
    if (err <= opts.rel_tol * std::max(1.0, sup_norm(s))) {
      const bool last = opts.t_max - (t + h) <= 1e-12 * opts.t_max;
      t = last ? opts.t_max : t + h;
      s = fine;
      if (stepper.record(traj, t, s)) return;
      if (++streak >= kGrowAfter) {
        h *= kGrowFactor;
        streak = 0;
      }
    } else {
      h *= 0.5;
      streak = 0;
    }
  }
  traj.termination = Termination::time_exhausted;
}

}  // namespace

void IntegrationOptions::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(dt)) throw std::invalid_argument("dt must be > 0");
  if (!positive(t_max)) throw std::invalid_argument("t_max must be > 0");
  if (dt > t_max) throw std::invalid_argument("dt must not exceed t_max");
  if (!positive(rel_tol)) throw std::invalid_argument("rel_tol must be > 0");
  if (!positive(capture_radius)) throw std::invalid_argument("capture_radius must be > 0");
  if (!positive(escape_radius)) throw std::invalid_argument("escape_radius must be > 0");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::time_exhausted: return "time_exhausted";
    case Termination::captured: return "captured";
    case Termination::escaped: return "escaped";
    case Termination::step_underflow: return "step_underflow";
  }
  return "unknown";
}

EconState rk4_step(const ModelParams& params, const GovPolicy& policy,
                   const EconState& s, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step requires dt > 0");
  return rk4_step([&](const EconState& x) { return vector_field(params, policy, x); },
                  s, dt);
}

Trajectory integrate(const ModelParams& params, const GovPolicy& policy,
                     const EconState& init, const IntegrationOptions& opts,
                     std::span<const EquilibriumPoint> equilibria) {
  opts.validate();
  if (!is_finite(init)) throw std::invalid_argument("initial state must be finite");

  Trajectory traj;
  traj.samples.push_back({0.0, init});
  const Stepper stepper(params, policy, opts, equilibria);
  if (opts.mode == StepMode::fixed) integrate_fixed(stepper, opts, traj);
  else integrate_adaptive(stepper, opts, traj);
  return traj;
}

}  // namespace kcross
