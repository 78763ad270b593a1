#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kcross/spectral.hpp"

namespace kcross {

enum class SweepParam { alpha, beta, g, g0, k };

std::string_view to_string(SweepParam p);

struct SweepSpec {
  SweepParam param;
  double from;
  double to;
  int steps;
  ModelParams base_params;
  GovPolicy base_policy;
  /// Bracket width at which sweep() stops refining transitions.
  double refine_tol = 1e-9;

  /// Throws std::invalid_argument for from >= to, steps < 2, or a parameter
  /// that does not apply to the policy (g is constant-only, g0 and k are
  /// linear/quadratic-only).
  void validate() const;
  /// Parameters and policy with the swept value substituted.
  std::pair<ModelParams, GovPolicy> at(double value) const;
};

struct SweepRecord {
  EconState state;
  Classification classification;
  bool economically_sensible;
};

struct SweepPoint {
  double value;
  /// Linear rule with k = k_c; no equilibria are listed.
  bool degenerate;
  std::vector<SweepRecord> equilibria;
};

enum class TransitionKind { count, classification, degenerate };

std::string_view to_string(TransitionKind kind);

struct Transition {
  double lo;
  double hi;
  TransitionKind kind;
  std::string description;
  double location;
  /// Classification changes are located only to within the spectral
  /// tolerance band, not to the full refinement tolerance.
  bool band_limited;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepPoint> points;
  std::vector<Transition> transitions;
};

/// Uniform grid over [from, to]; at each value runs analyze() and records
/// each equilibrium. Adjacent grid values whose (count, classification
/// multiset, degeneracy) differ are bracketed and refined by bisection.
SweepResult sweep(const SweepSpec& spec);

/// Bisects [lo, hi] on the transition indicator until the bracket is no
/// wider than tol and returns its midpoint. When the equilibrium count or
/// degeneracy differs between the ends only those are tracked; otherwise
/// the classification multiset is. Throws std::invalid_argument when the
/// indicator agrees at both ends.
double refine_transition(const SweepSpec& spec, double lo, double hi, double tol);

}  // namespace kcross
