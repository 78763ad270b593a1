#pragma once

#include <string>

#include <json.hpp>

#include "kcross/bifurcation.hpp"
#include "kcross/portrait.hpp"

namespace kcross {

using Json = nlohmann::json;

Json to_json(const ModelParams& params, const GovPolicy& policy);
Json to_json(const EquilibriumReport& report);
Json to_json(const Trajectory& traj);
Json to_json(const Window& window);

Json analysis_json(const ModelParams& params, const GovPolicy& policy,
                   const std::vector<EquilibriumReport>& reports);
/// Trajectories and separatrices are downsampled to at most
/// max_trajectory_points samples each.
Json portrait_json(const ModelParams& params, const GovPolicy& policy,
                   const Portrait& portrait, std::size_t max_trajectory_points = 1000);
Json trajectory_json(const ModelParams& params, const GovPolicy& policy,
                     const Trajectory& traj);
Json sweep_json(const SweepResult& result);

/// Canonical text: sorted keys, two-space indent, shortest round-trip
/// floats, trailing newline.
std::string dump(const Json& doc);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Header `t,i,c`.
std::string trajectory_csv(const Trajectory& traj);
/// Header `param_value,n_equilibria,eq_index,i,c,classification,sensible`.
/// One row per equilibrium; values without equilibria get a single row
/// with empty eq_index/i/c/sensible and classification `none` (or
/// `degenerate_policy`).
std::string sweep_csv(const SweepResult& result);
/// Header `i,c,dir_i,dir_c,magnitude`. Undefined directions are written
/// as 0,0.
std::string grid_csv(const std::vector<GridSample>& grid);

}  // namespace kcross
