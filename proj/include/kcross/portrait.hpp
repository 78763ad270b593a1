#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kcross/integrator.hpp"
#include "kcross/spectral.hpp"
#include "kcross/window.hpp"

namespace kcross {

struct Polyline {
  std::string label;
  std::vector<EconState> points;
};

struct GridSample {
  EconState state;
  /// Unit vector along the flow; zero when direction_defined is false.
  Eigen::Vector2d direction;
  double magnitude;
  bool direction_defined;
};

enum class ManifoldKind { stable, unstable };

std::string_view to_string(ManifoldKind kind);

/// One branch of a saddle's invariant manifolds. Stable branches are
/// integrated in reversed time, so their samples run away from the saddle.
struct Separatrix {
  ManifoldKind kind;
  /// +1 or -1: side of the eigenvector the branch was seeded on.
  int side;
  /// Index of the saddle in the portrait's reports.
  std::size_t report_index;
  Trajectory trajectory;
};

struct Portrait {
  Window window;
  std::vector<GridSample> grid;
  std::vector<Polyline> nullclines;
  std::vector<Trajectory> trajectories;
  std::vector<Separatrix> separatrices;
  std::vector<EquilibriumReport> reports;
};

/// Sampling density for build_portrait.
struct PortraitLayout {
  int nullcline_points = 201;
  int grid_nx = 21;
  int grid_ny = 21;
  /// Separatrix integration horizon and step.
  double separatrix_t_max = 50.0;
  double separatrix_dt = 1e-3;
};

/// The two nullclines sampled at n incomes across the window:
/// "i_nullcline" (C = I / alpha) and "c_nullcline" (C = I - G(I)).
/// Samples whose C lies outside the window are dropped, so a clipped
/// polyline may hold fewer than n points. Throws for n < 2.
std::vector<Polyline> nullclines(const ModelParams& params, const GovPolicy& policy,
                                 const Window& window, int n);

/// nx * ny lattice samples of the flow, row by row in C then I.
/// Throws for nx or ny < 2.
std::vector<GridSample> vector_grid(const ModelParams& params, const GovPolicy& policy,
                                    const Window& window, int nx, int ny);

/// 1e-6 * max(1, |eq|_inf)
double default_separatrix_delta(const EquilibriumReport& report);

/// Four branches seeded at eq +- delta * v for the unstable (forward time)
/// and stable (reversed time) eigenvectors, in the order unstable +,
/// unstable -, stable +, stable -. Each stops at t_max or on leaving
/// `bounds` (when given). Throws std::invalid_argument for non-saddles.
std::vector<Separatrix> separatrices(const ModelParams& params, const GovPolicy& policy,
                                     const EquilibriumReport& report, double delta,
                                     double t_max,
                                     const std::optional<Window>& bounds = std::nullopt,
                                     double dt = 1e-3);

/// Default figure window: each axis spans [min(0, 2 lo), max(0, 2 hi)] over
/// the equilibria, falling back to the quadratic nullcline vertex when there
/// are none.
Window default_window(const ModelParams& params, const GovPolicy& policy);

/// Deterministic 3x3 lattice of seeds at 1/6, 1/2, 5/6 of the window.
std::vector<EconState> default_seeds(const Window& window);

/// Runs analyze, nullclines, vector_grid, integrate per seed (capturing on
/// the analyzed equilibria) and separatrices per saddle. Trajectories keep
/// the seed order.
Portrait build_portrait(const ModelParams& params, const GovPolicy& policy,
                        const Window& window, const std::vector<EconState>& seeds,
                        const IntegrationOptions& opts,
                        const PortraitLayout& layout = {});

/// Keeps every stride-th sample (plus the last) so at most max_points remain.
Trajectory downsample(const Trajectory& traj, std::size_t max_points);

}  // namespace kcross
