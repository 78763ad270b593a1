#include "kcross/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kcross {

namespace {

double lerp(double lo, double hi, int idx, int n) {
  if (idx == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(idx) / static_cast<double>(n - 1);
}

std::vector<EquilibriumPoint> points_of(const std::vector<EquilibriumReport>& reports) {
  std::vector<EquilibriumPoint> pts;
  pts.reserve(reports.size());
  for (const auto& r : reports) pts.push_back(r.point);
  return pts;
}

Eigen::Vector2d real_direction(const Eigen::Vector2cd& v) {
  Eigen::Vector2d d = v.real();
  d.normalize();
  return d;
}

}  // namespace

std::string_view to_string(ManifoldKind kind) {
  return kind == ManifoldKind::stable ? "stable" : "unstable";
}

std::vector<Polyline> nullclines(const ModelParams& params, const GovPolicy& policy,
                                 const Window& window, int n) {
  if (n < 2) throw std::invalid_argument("nullclines requires n >= 2");
  Polyline i_null{"i_nullcline", {}};
  Polyline c_null{"c_nullcline", {}};
  auto keep = [&window](Polyline& line, double i, double c) {
    if (c >= window.c_min && c <= window.c_max) line.points.emplace_back(i, c);
  };
  for (int idx = 0; idx < n; ++idx) {
    const double i = lerp(window.i_min, window.i_max, idx, n);
    keep(i_null, i, i / params.alpha());
    keep(c_null, i, i - spending(policy, i));
  }
  return {std::move(i_null), std::move(c_null)};
}

std::vector<GridSample> vector_grid(const ModelParams& params, const GovPolicy& policy,
                                    const Window& window, int nx, int ny) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("vector_grid requires nx, ny >= 2");
  std::vector<GridSample> grid;
  grid.reserve(static_cast<std::size_t>(nx) * ny);
  for (int iy = 0; iy < ny; ++iy) {
    const double c = lerp(window.c_min, window.c_max, iy, ny);
    for (int ix = 0; ix < nx; ++ix) {
      const EconState s(lerp(window.i_min, window.i_max, ix, nx), c);
      const Derivative d = vector_field(params, policy, s);
      const double mag = d.norm();
      if (mag > 0.0) grid.push_back({s, d / mag, mag, true});
      else grid.push_back({s, Eigen::Vector2d::Zero(), 0.0, false});
    }
  }
  return grid;
}

double default_separatrix_delta(const EquilibriumReport& report) {
  return 1e-6 * std::max(1.0, report.point.state.cwiseAbs().maxCoeff());
}

std::vector<Separatrix> separatrices(const ModelParams& params, const GovPolicy& policy,
                                     const EquilibriumReport& report, double delta,
                                     double t_max, const std::optional<Window>& bounds,
                                     double dt) {
  if (report.classification != Classification::saddle)
    throw std::invalid_argument("separatrices requires a saddle equilibrium");
  if (!(delta > 0.0)) throw std::invalid_argument("separatrix delta must be > 0");

  const auto& eig = report.eigen;
  const bool first_unstable = eig.lambda1.real() > 0.0;
  const Eigen::Vector2d unstable = real_direction(first_unstable ? eig.v1 : eig.v2);
  const Eigen::Vector2d stable = real_direction(first_unstable ? eig.v2 : eig.v1);

  IntegrationOptions opts;
  opts.dt = std::min(dt, t_max);
  opts.t_max = t_max;
  opts.bounds = bounds;

  std::vector<Separatrix> out;
  const EconState& eq = report.point.state;
  for (ManifoldKind kind : {ManifoldKind::unstable, ManifoldKind::stable}) {
    const Eigen::Vector2d& dir = kind == ManifoldKind::unstable ? unstable : stable;
    opts.reverse_time = kind == ManifoldKind::stable;
    for (int side : {1, -1}) {
      const EconState seed = eq + side * delta * dir;
      out.push_back({kind, side, 0, integrate(params, policy, seed, opts)});
    }
  }
  return out;
}

Window default_window(const ModelParams& params, const GovPolicy& policy) {
  std::vector<EconState> pts;
  try {
    for (const auto& p : equilibria(params, policy)) pts.push_back(p.state);
  } catch (const DegeneratePolicyError&) {
  }
  if (pts.empty()) {
    double vertex = 1.0;
    if (policy.kind() == PolicyKind::quadratic)
      vertex = critical_k(params) / (2.0 * *policy.k());
    pts.emplace_back(vertex, vertex / params.alpha());
  }
  double i_lo = 0.0, i_hi = 0.0, c_lo = 0.0, c_hi = 0.0;
  for (const auto& p : pts) {
    i_lo = std::min(i_lo, 2.0 * p.x());
    i_hi = std::max(i_hi, 2.0 * p.x());
    c_lo = std::min(c_lo, 2.0 * p.y());
    c_hi = std::max(c_hi, 2.0 * p.y());
  }
  if (i_hi - i_lo <= 0.0) i_hi = i_lo + 1.0;
  if (c_hi - c_lo <= 0.0) c_hi = c_lo + 1.0;
  return {i_lo, i_hi, c_lo, c_hi};
}

std::vector<EconState> default_seeds(const Window& window) {
  std::vector<EconState> seeds;
  for (double fy : {1.0 / 6.0, 0.5, 5.0 / 6.0})
    for (double fx : {1.0 / 6.0, 0.5, 5.0 / 6.0})
      seeds.emplace_back(window.i_min + fx * window.width(),
                         window.c_min + fy * window.height());
  return seeds;
}

Portrait build_portrait(const ModelParams& params, const GovPolicy& policy,
                        const Window& window, const std::vector<EconState>& seeds,
                        const IntegrationOptions& opts, const PortraitLayout& layout) {
  Portrait portrait{window, {}, {}, {}, {}, analyze(params, policy)};
  portrait.nullclines = nullclines(params, policy, window, layout.nullcline_points);
  portrait.grid = vector_grid(params, policy, window, layout.grid_nx, layout.grid_ny);

  const auto eqs = points_of(portrait.reports);
  for (const auto& seed : seeds)
    portrait.trajectories.push_back(integrate(params, policy, seed, opts, eqs));

  // Separatrices stop at a box three times the window so they cross it fully.
  const Window reach(window.i_min - window.width(), window.i_max + window.width(),
                     window.c_min - window.height(), window.c_max + window.height());
  for (std::size_t r = 0; r < portrait.reports.size(); ++r) {
    const auto& report = portrait.reports[r];
    if (report.classification != Classification::saddle) continue;
    for (auto& branch : separatrices(params, policy, report,
                                     default_separatrix_delta(report),
                                     layout.separatrix_t_max, reach,
                                     layout.separatrix_dt)) {
      branch.report_index = r;
      portrait.separatrices.push_back(std::move(branch));
    }
  }
  return portrait;
}

Trajectory downsample(const Trajectory& traj, std::size_t max_points) {
  const std::size_t n = traj.samples.size();
  if (max_points < 2 || n <= max_points) return traj;
  Trajectory out{{}, traj.termination, traj.captured_index};
  if (max_points == 2) {
    out.samples = {traj.samples.front(), traj.samples.back()};
    return out;
  }
  const std::size_t stride = (n - 1 + max_points - 3) / (max_points - 2);
  for (std::size_t idx = 0; idx < n; idx += stride) out.samples.push_back(traj.samples[idx]);
  if (out.samples.back().t != traj.samples.back().t) out.samples.push_back(traj.samples.back());
  return out;
}

}  // namespace kcross
