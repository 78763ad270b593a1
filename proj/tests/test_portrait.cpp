#include <doctest.h>

#include <cmath>

#include "kcross/portrait.hpp"
#include "support/scenarios.hpp"

using namespace kcross;
using kcross::testing::sup_norm;

namespace {

const ModelParams kParams(2, 4);
const GovPolicy kTwoEq = GovPolicy::quadratic(0.75, 1.0 / 16.0);

}  // namespace

TEST_CASE("nullclines sample and clip") {
  const auto lines = nullclines(kParams, GovPolicy::constant(1.0), Window(0, 8, 0, 4), 3);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].label == "i_nullcline");
  REQUIRE(lines[0].points.size() == 3);
  CHECK(lines[0].points[0] == EconState(0, 0));
  CHECK(lines[0].points[1] == EconState(4, 2));
  CHECK(lines[0].points[2] == EconState(8, 4));
  CHECK(lines[1].label == "c_nullcline");
  REQUIRE(lines[1].points.size() == 1);
  CHECK(lines[1].points[0] == EconState(4, 3));

  CHECK_THROWS_AS(nullclines(kParams, GovPolicy::constant(1.0), Window(0, 8, 0, 4), 1),
                  std::invalid_argument);
}

TEST_CASE("quadratic nullclines intersect at the equilibria") {
  // n = 13 over [0, 12] puts samples on I = 2 and I = 6.
  const auto lines = nullclines(kParams, kTwoEq, Window(0, 12, -10, 10), 13);
  std::vector<double> hits;
  for (const auto& a : lines[0].points)
    for (const auto& b : lines[1].points)
      if (a.x() == b.x() && std::abs(a.y() - b.y()) <= 1e-9) hits.push_back(a.x());
  const auto eqs = equilibria(kParams, kTwoEq);
  REQUIRE(hits.size() == 2);
  CHECK(std::abs(hits[0] - eqs[0].state.x()) <= 1e-9);
  CHECK(std::abs(hits[1] - eqs[1].state.x()) <= 1e-9);
}

TEST_CASE("vector_grid samples") {
  const auto grid = vector_grid(kParams, GovPolicy::constant(1.0), Window(0, 4, 0, 4), 5, 5);
  REQUIRE(grid.size() == 25);
  bool saw_eq = false, saw_origin = false;
  for (const auto& g : grid) {
    CHECK(g.state.allFinite());
    CHECK(std::isfinite(g.magnitude));
    if (g.state == EconState(2, 1)) {
      saw_eq = true;
      CHECK(g.magnitude == 0.0);
      CHECK_FALSE(g.direction_defined);
    }
    if (g.state == EconState(0, 0)) {
      saw_origin = true;
      CHECK(g.magnitude == 4.0);
      CHECK(g.direction == Eigen::Vector2d(0, -1));
    }
    if (g.magnitude > 0) CHECK(std::abs(g.direction.norm() - 1.0) <= 1e-12);
  }
  CHECK(saw_eq);
  CHECK(saw_origin);
  CHECK_THROWS_AS(vector_grid(kParams, GovPolicy::constant(1.0), Window(0, 4, 0, 4), 1, 5),
                  std::invalid_argument);
}

TEST_CASE("separatrices of the linear saddle leave along the eigenvectors") {
  const auto pol = GovPolicy::linear(1.0, 0.75);
  const auto reports = analyze(kParams, pol);
  REQUIRE(reports.size() == 1);
  const auto& saddle = reports[0];
  const double delta = default_separatrix_delta(saddle);
  CHECK(delta == doctest::Approx(4e-6));

  const auto branches = separatrices(kParams, pol, saddle, delta, 40.0, Window(-20, 12, -10, 6));
  REQUIRE(branches.size() == 4);
  const Eigen::Vector2d unstable = Eigen::Vector2d((5 + std::sqrt(17.0)) / 2, 1).normalized();
  const Eigen::Vector2d stable = Eigen::Vector2d((5 - std::sqrt(17.0)) / 2, 1).normalized();
  CHECK(unstable.x() / unstable.y() == doctest::Approx(4.5616).epsilon(1e-4));
  CHECK(stable.x() / stable.y() == doctest::Approx(0.4384).epsilon(1e-4));

  const EconState eq(-4, -2);
  const Eigen::Vector2d dirs[] = {unstable, -unstable, stable, -stable};
  for (int b = 0; b < 4; ++b) {
    const auto& tr = branches[b].trajectory;
    CHECK(branches[b].kind == (b < 2 ? ManifoldKind::unstable : ManifoldKind::stable));
    CHECK(branches[b].side == (b % 2 == 0 ? 1 : -1));
    const Eigen::Vector2d seed_dir = (tr.samples.front().state - eq) / delta;
    CHECK((seed_dir - dirs[b]).norm() <= 1e-8);
    // Linear flow: each branch stays on its eigenline.
    const Eigen::Vector2d off = tr.final_state() - eq;
    CHECK(std::abs(off.x() * dirs[b].y() - off.y() * dirs[b].x()) <= 1e-6 * off.norm());
    CHECK(off.dot(dirs[b]) > 0.0);
    CHECK(tr.termination == Termination::escaped);
  }
}

TEST_CASE("stable branch replayed forward returns to the saddle") {
  const auto reports = analyze(kParams, kTwoEq);
  const auto& saddle = reports[1];
  REQUIRE(saddle.classification == Classification::saddle);
  const double delta = default_separatrix_delta(saddle);
  const auto branches = separatrices(kParams, kTwoEq, saddle, delta, 3.0);
  for (int b = 2; b < 4; ++b) {
    const auto& back = branches[b].trajectory;
    IntegrationOptions opts;
    opts.dt = 1e-3;
    opts.t_max = back.final_time();
    const Trajectory replay = integrate(kParams, kTwoEq, back.final_state(), opts);
    CHECK((replay.final_state() - saddle.point.state).norm() < 10 * delta);
  }
}

TEST_CASE("separatrices rejects non-saddles") {
  const auto reports = analyze(kParams, GovPolicy::constant(1.0));
  CHECK_THROWS_AS(separatrices(kParams, GovPolicy::constant(1.0), reports[0], 1e-6, 1.0),
                  std::invalid_argument);
}

TEST_CASE("build_portrait: stable spiral") {
  const ModelParams p(5, 4);
  const Window w(0, 2.5, 0, 0.5);
  IntegrationOptions opts;
  const std::vector<EconState> seeds{{1.0, 0.05}, {1.5, 0.45}, {0.2, 0.2}};
  const Portrait portrait = build_portrait(p, GovPolicy::constant(1.0), w, seeds, opts);
  REQUIRE(portrait.reports.size() == 1);
  CHECK(portrait.reports[0].classification == Classification::stable_spiral);
  CHECK(portrait.separatrices.empty());
  REQUIRE(portrait.trajectories.size() == 3);
  for (std::size_t n = 0; n < seeds.size(); ++n) {
    CHECK(portrait.trajectories[n].samples.front().state == seeds[n]);
    CHECK(portrait.trajectories[n].termination == Termination::captured);
  }
  CHECK(portrait.grid.size() == 21 * 21);
  for (const auto& g : portrait.grid) CHECK(w.contains(g.state));
}

TEST_CASE("build_portrait: two equilibria with separatrices") {
  const Window w = default_window(kParams, kTwoEq);
  CHECK(w == Window(0, 12, 0, 6));
  const Portrait portrait = build_portrait(kParams, kTwoEq, w, default_seeds(w), {});
  REQUIRE(portrait.reports.size() == 2);
  CHECK(portrait.reports[0].classification == Classification::stable_node);
  CHECK(portrait.reports[1].classification == Classification::saddle);
  CHECK(portrait.separatrices.size() == 4);
  for (const auto& s : portrait.separatrices) CHECK(s.report_index == 1);
}

TEST_CASE("build_portrait: no equilibria, every seed escapes") {
  const auto pol = GovPolicy::quadratic(1.25, 1.0 / 16.0);
  const Window w = default_window(kParams, pol);
  IntegrationOptions opts;
  opts.t_max = 200;
  const Portrait portrait = build_portrait(kParams, pol, w, default_seeds(w), opts);
  CHECK(portrait.reports.empty());
  CHECK(portrait.separatrices.empty());
  REQUIRE(portrait.trajectories.size() == 9);
  for (const auto& t : portrait.trajectories) CHECK(t.termination == Termination::escaped);
}

TEST_CASE("equilibria inside the window lie on both nullclines") {
  const auto check = [](const ModelParams& p, const GovPolicy& pol) {
    const Window w = default_window(p, pol);
    for (const auto& r : analyze(p, pol)) {
      if (!w.contains(r.point.state)) continue;
      const double i = r.point.state.x(), c = r.point.state.y();
      CHECK(std::abs(c - i / p.alpha()) <= 1e-6);
      CHECK(std::abs(c - (i - spending(pol, i))) <= 1e-6);
    }
  };
  check(kParams, kTwoEq);
  check(kParams, GovPolicy::constant(1.0));
  check(kParams, GovPolicy::linear(1, 0.25));
  check(kParams, GovPolicy::linear(1, 0.75));
  check(ModelParams(3, 2), GovPolicy::quadratic(0.01, 0.3));
}

TEST_CASE("seeds straddling the stable manifold part ways") {
  const auto reports = analyze(kParams, kTwoEq);
  const auto& saddle = reports[1];
  const Eigen::Vector2d unstable = saddle.eigen.v1.real().normalized();
  REQUIRE(saddle.eigen.lambda1.real() > 0);
  std::vector<EquilibriumPoint> eqs{reports[0].point, reports[1].point};
  IntegrationOptions opts;
  opts.t_max = 100;
  int captured = 0, escaped = 0;
  for (int side : {1, -1}) {
    const Trajectory t =
        integrate(kParams, kTwoEq, saddle.point.state + side * 1e-3 * unstable, opts, eqs);
    captured += t.termination == Termination::captured && t.captured_index == 0u;
    escaped += t.termination == Termination::escaped;
  }
  CHECK(captured == 1);
  CHECK(escaped == 1);
}

TEST_CASE("downsample keeps the endpoints and the budget") {
  Trajectory t;
  for (int n = 0; n < 1001; ++n) t.samples.push_back({n * 0.1, EconState(n, 0)});
  for (std::size_t budget : {2u, 3u, 10u, 333u, 1000u}) {
    const Trajectory d = downsample(t, budget);
    CHECK(d.samples.size() <= budget);
    CHECK(d.samples.front().t == 0.0);
    CHECK(d.samples.back().t == t.samples.back().t);
  }
  CHECK(downsample(t, 5000).samples.size() == 1001);
}
