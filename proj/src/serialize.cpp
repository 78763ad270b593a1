#include "kcross/serialize.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace kcross {

namespace {

Json pair(double a, double b) { return Json::array({a, b}); }
Json vec(const Eigen::Vector2d& v) { return pair(v.x(), v.y()); }
Json complex(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }
Json complex_vec(const Eigen::Vector2cd& v) {
  return Json::array({complex(v(0)), complex(v(1))});
}

Json samples_json(const Trajectory& traj) {
  Json out = Json::array();
  for (const auto& s : traj.samples)
    out.push_back(Json::array({s.t, s.state.x(), s.state.y()}));
  return out;
}

}  // namespace

Json to_json(const ModelParams& params, const GovPolicy& policy) {
  Json pol{{"kind", std::string(to_string(policy.kind()))}};
  if (policy.kind() == PolicyKind::constant) {
    pol["g"] = policy.intercept();
  } else {
    pol["g0"] = policy.intercept();
    pol["k"] = *policy.k();
  }
  return Json{{"alpha", params.alpha()}, {"beta", params.beta()}, {"policy", pol}};
}

Json to_json(const EquilibriumReport& r) {
  const Jacobian2& j = r.jac;
  return Json{
      {"state", vec(r.point.state)},
      {"economically_sensible", r.point.economically_sensible},
      {"source", r.point.source == EquilibriumSource::closed_form ? "closed_form"
                                                                   : "newton_refined"},
      {"jacobian", Json::array({pair(j(0, 0), j(0, 1)), pair(j(1, 0), j(1, 1))})},
      {"trace", trace(j)},
      {"determinant", det(j)},
      {"discriminant", r.eigen.discriminant},
      {"eigenvalues", Json::array({complex(r.eigen.lambda1), complex(r.eigen.lambda2)})},
      {"eigenvectors", Json::array({complex_vec(r.eigen.v1), complex_vec(r.eigen.v2)})},
      {"defective", r.eigen.defective},
      {"classification", std::string(to_string(r.classification))},
  };
}

Json to_json(const Trajectory& traj) {
  Json out{{"termination", std::string(to_string(traj.termination))},
           {"samples", samples_json(traj)}};
  out["captured_index"] = traj.captured_index ? Json(*traj.captured_index) : Json(nullptr);
  return out;
}

Json to_json(const Window& w) {
  return Json{{"i_min", w.i_min}, {"i_max", w.i_max}, {"c_min", w.c_min}, {"c_max", w.c_max}};
}

Json analysis_json(const ModelParams& params, const GovPolicy& policy,
                   const std::vector<EquilibriumReport>& reports) {
  Json eqs = Json::array();
  for (const auto& r : reports) eqs.push_back(to_json(r));
  const Thresholds th = thresholds(params, policy);
  Json thr = Json::object();
  if (th.k_c) thr["k_c"] = *th.k_c;
  if (th.g0_crit) thr["g0_crit"] = *th.g0_crit;
  return Json{{"command", "analyze"},
              {"model", to_json(params, policy)},
              {"thresholds", thr},
              {"equilibria", eqs}};
}

Json portrait_json(const ModelParams& params, const GovPolicy& policy,
                   const Portrait& p, std::size_t max_points) {
  Json eqs = Json::array();
  for (const auto& r : p.reports) eqs.push_back(to_json(r));
  Json lines = Json::array();
  for (const auto& line : p.nullclines) {
    Json pts = Json::array();
    for (const auto& q : line.points) pts.push_back(vec(q));
    lines.push_back(Json{{"label", line.label}, {"points", pts}});
  }
  Json grid = Json::array();
  for (const auto& g : p.grid) {
    grid.push_back(Json{{"state", vec(g.state)},
                        {"direction", g.direction_defined ? vec(g.direction) : Json(nullptr)},
                        {"magnitude", g.magnitude}});
  }
  Json trajs = Json::array();
  for (const auto& t : p.trajectories) trajs.push_back(to_json(downsample(t, max_points)));
  Json seps = Json::array();
  for (const auto& s : p.separatrices) {
    seps.push_back(Json{{"kind", std::string(to_string(s.kind))},
                        {"side", s.side},
                        {"equilibrium_index", s.report_index},
                        {"trajectory", to_json(downsample(s.trajectory, max_points))}});
  }
  return Json{{"command", "portrait"},
              {"model", to_json(params, policy)},
              {"window", to_json(p.window)},
              {"equilibria", eqs},
              {"nullclines", lines},
              {"grid", grid},
              {"trajectories", trajs},
              {"separatrices", seps}};
}

Json trajectory_json(const ModelParams& params, const GovPolicy& policy,
                     const Trajectory& traj) {
  Json out = to_json(traj);
  out["command"] = "integrate";
  out["model"] = to_json(params, policy);
  return out;
}

Json sweep_json(const SweepResult& result) {
  const SweepSpec& spec = result.spec;
  Json points = Json::array();
  for (const auto& p : result.points) {
    Json eqs = Json::array();
    for (const auto& e : p.equilibria)
      eqs.push_back(Json{{"state", vec(e.state)},
                         {"classification", std::string(to_string(e.classification))},
                         {"economically_sensible", e.economically_sensible}});
    points.push_back(Json{{"value", p.value}, {"degenerate", p.degenerate}, {"equilibria", eqs}});
  }
  Json transitions = Json::array();
  for (const auto& t : result.transitions)
    transitions.push_back(Json{{"bracket", pair(t.lo, t.hi)},
                               {"kind", std::string(to_string(t.kind))},
                               {"description", t.description},
                               {"location", t.location},
                               {"band_limited", t.band_limited}});
  return Json{{"command", "sweep"},
              {"model", to_json(spec.base_params, spec.base_policy)},
              {"param", std::string(to_string(spec.param))},
              {"from", spec.from},
              {"to", spec.to},
              {"steps", spec.steps},
              {"points", points},
              {"transitions", transitions}};
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "t,i,c\n";
  for (const auto& s : traj.samples)
    out << format_double(s.t) << ',' << format_double(s.state.x()) << ','
        << format_double(s.state.y()) << '\n';
  return out.str();
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "param_value,n_equilibria,eq_index,i,c,classification,sensible\n";
  for (const auto& p : result.points) {
    const std::string value = format_double(p.value);
    if (p.equilibria.empty()) {
      out << value << ",0,,,," << (p.degenerate ? "degenerate_policy" : "none") << ",\n";
      continue;
    }
    for (std::size_t n = 0; n < p.equilibria.size(); ++n) {
      const auto& e = p.equilibria[n];
      out << value << ',' << p.equilibria.size() << ',' << n << ','
          << format_double(e.state.x()) << ',' << format_double(e.state.y()) << ','
          << to_string(e.classification) << ','
          << (e.economically_sensible ? "true" : "false") << '\n';
    }
  }
  return out.str();
}

std::string grid_csv(const std::vector<GridSample>& grid) {
  std::ostringstream out;
  out << "i,c,dir_i,dir_c,magnitude\n";
  for (const auto& g : grid)
    out << format_double(g.state.x()) << ',' << format_double(g.state.y()) << ','
        << format_double(g.direction.x()) << ',' << format_double(g.direction.y()) << ','
        << format_double(g.magnitude) << '\n';
  return out.str();
}

}  // namespace kcross
