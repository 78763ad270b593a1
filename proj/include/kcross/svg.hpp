#pragma once

#include <cstddef>
#include <string>

#include "kcross/bifurcation.hpp"
#include "kcross/portrait.hpp"

namespace kcross {

struct SvgStyle {
  std::string title;
  /// Trajectories are downsampled to this many points before drawing.
  std::size_t max_path_points = 600;
};

/// Standalone 800x600 SVG of a phase portrait: equal-length grid arrows,
/// dashed nullclines, solid trajectories, thick separatrices and one marker
/// per equilibrium (shape and fill by classification). Byte-identical for
/// identical input.
std::string render_svg(const Portrait& portrait, const SvgStyle& style = {});

/// Bifurcation diagram: equilibrium income against the swept parameter,
/// drawn as a lower and an upper branch that meet where the two
/// equilibria merge, with dashed verticals at refined transitions.
std::string render_svg(const SweepResult& result, const SvgStyle& style = {});

}  // namespace kcross
