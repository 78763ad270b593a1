#include "kcross/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kcross/errors.hpp"

namespace kcross {

namespace {

struct Indicator {
  bool degenerate = false;
  std::vector<Classification> classes;  // sorted

  friend bool operator==(const Indicator&, const Indicator&) = default;
};

SweepPoint evaluate(const SweepSpec& spec, double value) {
  const auto [params, policy] = spec.at(value);
  SweepPoint point{value, false, {}};
  try {
    for (const auto& r : analyze(params, policy))
      point.equilibria.push_back(
          {r.point.state, r.classification, r.point.economically_sensible});
  } catch (const DegeneratePolicyError&) {
    point.degenerate = true;
  }
  return point;
}

Indicator indicator_of(const SweepPoint& p) {
  Indicator ind{p.degenerate, {}};
  for (const auto& e : p.equilibria) ind.classes.push_back(e.classification);
  std::sort(ind.classes.begin(), ind.classes.end());
  return ind;
}

Indicator indicator_at(const SweepSpec& spec, double value) {
  return indicator_of(evaluate(spec, value));
}

std::string describe(const Indicator& ind) {
  if (ind.degenerate) return "degenerate_policy";
  if (ind.classes.empty()) return "none";
  std::string out;
  for (std::size_t n = 0; n < ind.classes.size(); ++n) {
    if (n) out += "+";
    out += to_string(ind.classes[n]);
  }
  return out;
}

}  // namespace

std::string_view to_string(SweepParam p) {
  switch (p) {
    case SweepParam::alpha: return "alpha";
    case SweepParam::beta: return "beta";
    case SweepParam::g: return "g";
    case SweepParam::g0: return "g0";
    case SweepParam::k: return "k";
  }
  return "unknown";
}

std::string_view to_string(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::count: return "count";
    case TransitionKind::classification: return "classification";
    case TransitionKind::degenerate: return "degenerate";
  }
  return "unknown";
}

void SweepSpec::validate() const {
  if (!(std::isfinite(from) && std::isfinite(to) && from < to))
    throw std::invalid_argument("sweep requires finite from < to");
  if (steps < 2) throw std::invalid_argument("sweep requires steps >= 2");
  if (!(refine_tol > 0.0)) throw std::invalid_argument("sweep requires refine_tol > 0");
  const bool constant = base_policy.kind() == PolicyKind::constant;
  if (param == SweepParam::g && !constant)
    throw std::invalid_argument("parameter g applies only to the constant policy");
  if ((param == SweepParam::g0 || param == SweepParam::k) && constant)
    throw std::invalid_argument("parameters g0 and k apply only to linear/quadratic policies");
}

std::pair<ModelParams, GovPolicy> SweepSpec::at(double value) const {
  switch (param) {
    case SweepParam::alpha: return {base_params.with_alpha(value), base_policy};
    case SweepParam::beta: return {base_params.with_beta(value), base_policy};
    case SweepParam::g:
    case SweepParam::g0: return {base_params, base_policy.with_intercept(value)};
    case SweepParam::k: return {base_params, base_policy.with_k(value)};
  }
  return {base_params, base_policy};
}

double refine_transition(const SweepSpec& spec, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("refine_transition requires tol > 0");
  if (!(lo < hi)) throw std::invalid_argument("refine_transition requires lo < hi");
  const Indicator left = indicator_at(spec, lo);
  const Indicator right = indicator_at(spec, hi);
  if (left == right)
    throw std::invalid_argument("transition indicator is equal at both bracket ends");

  // A change in count or degeneracy is tracked on those alone, so stability
  // changes of the surviving equilibria inside the bracket are ignored.
  const bool by_count =
      left.degenerate != right.degenerate || left.classes.size() != right.classes.size();
  auto same_as_left = [&](const Indicator& ind) {
    if (by_count)
      return ind.degenerate == left.degenerate && ind.classes.size() == left.classes.size();
    return ind == left;
  };

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (same_as_left(indicator_at(spec, mid))) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

SweepResult sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result{spec, {}, {}};
  result.points.reserve(spec.steps);
  for (int n = 0; n < spec.steps; ++n) {
    const double value = n == spec.steps - 1
                             ? spec.to
                             : spec.from + (spec.to - spec.from) * n / (spec.steps - 1);
    result.points.push_back(evaluate(spec, value));
  }

  for (std::size_t n = 0; n + 1 < result.points.size(); ++n) {
    const SweepPoint& a = result.points[n];
    const SweepPoint& b = result.points[n + 1];
    const Indicator ia = indicator_of(a);
    const Indicator ib = indicator_of(b);
    if (ia == ib) continue;

    Transition t{a.value, b.value, TransitionKind::classification, "", 0.0, false};
    std::ostringstream desc;
    if (ia.degenerate || ib.degenerate) {
      t.kind = TransitionKind::degenerate;
      desc << "degenerate policy: " << describe(ia) << " -> " << describe(ib);
    } else if (ia.classes.size() != ib.classes.size()) {
      t.kind = TransitionKind::count;
      desc << "equilibrium count " << ia.classes.size() << " -> " << ib.classes.size();
    } else {
      t.band_limited = true;
      desc << "classification " << describe(ia) << " -> " << describe(ib);
    }
    t.description = desc.str();
    t.location = refine_transition(spec, a.value, b.value, spec.refine_tol);
    result.transitions.push_back(std::move(t));
  }
  return result;
}

}  // namespace kcross
