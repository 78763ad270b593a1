#include "kcross/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "kcross/errors.hpp"
#include "kcross/portrait.hpp"
#include "kcross/serialize.hpp"
#include "kcross/svg.hpp"

namespace kcross::cli {

namespace {

class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text, char sep, const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + item + "' is not a number");
    }
    if (used != item.size()) throw UsageError(flag + ": '" + item + "' is not a number");
    values.push_back(v);
  }
  return values;
}

std::vector<EconState> parse_seeds(const std::string& text) {
  std::vector<EconState> seeds;
  std::stringstream ss(text);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    if (pair.empty()) continue;
    const auto v = parse_numbers(pair, ',', "--seeds");
    if (v.size() != 2) throw UsageError("--seeds expects 'i,c' pairs separated by ';'");
    seeds.emplace_back(v[0], v[1]);
  }
  if (seeds.empty()) throw UsageError("--seeds is empty");
  return seeds;
}

struct RawArgs {
  std::string command;
  std::string model;
  double alpha = 0.0;
  double beta = 0.0;
  double g = 0.0, g0 = 0.0, k = 0.0;
  std::string format = "json";
  std::string out;
  std::string window, seeds, grid;
  double dt = 1e-2, t_max = 50.0, rel_tol = 1e-8, escape_radius = 1e6, capture_radius = 1e-8;
  bool adaptive = false;
  double i0 = 0.0, c0 = 0.0;
  std::string param;
  double from = 0.0, to = 0.0, refine_tol = 1e-9;
  int steps = 0;
};

const std::map<std::string, Command> kCommands{{"analyze", Command::analyze},
                                               {"portrait", Command::portrait},
                                               {"integrate", Command::integrate},
                                               {"sweep", Command::sweep}};

const std::map<std::string, SweepParam> kParams{{"alpha", SweepParam::alpha},
                                                {"beta", SweepParam::beta},
                                                {"g", SweepParam::g},
                                                {"g0", SweepParam::g0},
                                                {"k", SweepParam::k}};

// Flags valid for every command; anything else must be listed per command.
const std::vector<std::string> kCommon{"--model", "--alpha", "--beta", "--g",
                                       "--g0",    "--k",     "--format", "--out"};
const std::map<Command, std::vector<std::string>> kPerCommand{
    {Command::analyze, {}},
    {Command::portrait,
     {"--window", "--seeds", "--grid", "--dt", "--t-max", "--adaptive", "--rel-tol",
      "--escape-radius", "--capture-radius"}},
    {Command::integrate,
     {"--i0", "--c0", "--dt", "--t-max", "--adaptive", "--rel-tol", "--escape-radius",
      "--capture-radius"}},
    {Command::sweep, {"--param", "--from", "--to", "--steps", "--refine-tol"}},
};

std::string describe_policy(const GovPolicy& p) {
  std::ostringstream s;
  s << to_string(p.kind());
  if (p.kind() == PolicyKind::constant) s << " g=" << p.intercept();
  else s << " g0=" << p.intercept() << " k=" << *p.k();
  return s.str();
}

bool write_artifact(const RunSpec& spec, const std::string& text, std::ostream& out,
                    std::ostream& err) {
  if (!spec.out) {
    out << text;
    return true;
  }
  std::ofstream file(*spec.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << *spec.out << "' for writing\n";
    return false;
  }
  file << text;
  file.close();
  if (!file) {
    err << "error: failed writing '" << *spec.out << "'\n";
    return false;
  }
  return true;
}

}  // namespace

RunSpec parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Keynesian cross dynamics: equilibria, stability, portraits, sweeps", "kcross"};
  RawArgs raw;
  app.add_option("command", raw.command, "analyze | portrait | integrate | sweep")
      ->required()
      ->check(CLI::IsMember({"analyze", "portrait", "integrate", "sweep"}));
  app.add_option("--model", raw.model, "constant | linear | quadratic")
      ->required()
      ->check(CLI::IsMember({"constant", "linear", "quadratic"}));
  app.add_option("--alpha", raw.alpha, "consumption multiplier (> 1)")->required();
  app.add_option("--beta", raw.beta, "adjustment speed (>= 1)")->required();
  app.add_option("--g", raw.g, "constant spending");
  app.add_option("--g0", raw.g0, "spending intercept");
  app.add_option("--k", raw.k, "spending slope (> 0)");
  app.add_option("--format", raw.format, "json | csv | svg")
      ->check(CLI::IsMember({"json", "csv", "svg"}));
  app.add_option("--out", raw.out, "output path (default: standard output)");
  app.add_option("--window", raw.window, "imin,imax,cmin,cmax");
  app.add_option("--seeds", raw.seeds, "i,c;i,c;...");
  app.add_option("--grid", raw.grid, "NX,NY");
  app.add_option("--dt", raw.dt, "fixed or initial step");
  app.add_option("--t-max", raw.t_max, "integration horizon");
  app.add_flag("--adaptive", raw.adaptive, "step-doubling adaptive RK4");
  app.add_option("--rel-tol", raw.rel_tol, "adaptive error tolerance");
  app.add_option("--escape-radius", raw.escape_radius, "escape threshold on |state|_inf");
  app.add_option("--capture-radius", raw.capture_radius, "relative capture radius");
  app.add_option("--i0", raw.i0, "initial income");
  app.add_option("--c0", raw.c0, "initial consumption");
  app.add_option("--param", raw.param, "swept parameter: alpha | beta | g | g0 | k")
      ->check(CLI::IsMember({"alpha", "beta", "g", "g0", "k"}));
  app.add_option("--from", raw.from, "sweep start");
  app.add_option("--to", raw.to, "sweep end");
  app.add_option("--steps", raw.steps, "sweep grid size (>= 2)");
  app.add_option("--refine-tol", raw.refine_tol, "transition bisection tolerance");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const Command command = kCommands.at(raw.command);
  const auto& allowed = kPerCommand.at(command);
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->count() == 0 || opt->get_name() == "command" || opt->get_name() == "--help")
      continue;
    const std::string name = opt->get_name();
    if (std::find(kCommon.begin(), kCommon.end(), name) == kCommon.end() &&
        std::find(allowed.begin(), allowed.end(), name) == allowed.end())
      throw UsageError(name + " is not valid for '" + raw.command + "'");
  }
  auto given = [&app](const std::string& name) { return app.count(name) > 0; };
  auto need = [&](const std::string& name) {
    if (!given(name)) throw UsageError(name + " is required for '" + raw.command + "'");
  };

  std::optional<GovPolicy> policy;
  try {
    if (raw.model == "constant") {
      need("--g");
      if (given("--g0") || given("--k"))
        throw UsageError("--g0/--k do not apply to the constant model");
      policy = GovPolicy::constant(raw.g);
    } else {
      need("--g0");
      need("--k");
      if (given("--g")) throw UsageError("--g applies only to the constant model");
      policy = raw.model == "linear" ? GovPolicy::linear(raw.g0, raw.k)
                                     : GovPolicy::quadratic(raw.g0, raw.k);
    }
    RunSpec spec(command, ModelParams(raw.alpha, raw.beta), *policy);

    if (raw.format == "json") spec.format = Format::json;
    else if (raw.format == "csv") spec.format = Format::csv;
    else spec.format = Format::svg;
    if (spec.format == Format::svg && command != Command::portrait && command != Command::sweep)
      throw UsageError("--format svg is available only for portrait and sweep");
    if (spec.format == Format::csv && command == Command::analyze)
      throw UsageError("--format csv is not available for analyze");
    if (given("--out")) spec.out = raw.out;

    if (given("--window")) {
      const auto v = parse_numbers(raw.window, ',', "--window");
      if (v.size() != 4) throw UsageError("--window expects imin,imax,cmin,cmax");
      spec.window = Window(v[0], v[1], v[2], v[3]);
    }
    if (given("--seeds")) spec.seeds = parse_seeds(raw.seeds);
    if (given("--grid")) {
      const auto v = parse_numbers(raw.grid, ',', "--grid");
      if (v.size() != 2 || v[0] < 2 || v[1] < 2 || v[0] != std::floor(v[0]) ||
          v[1] != std::floor(v[1]))
        throw UsageError("--grid expects NX,NY integers >= 2");
      spec.grid_nx = static_cast<int>(v[0]);
      spec.grid_ny = static_cast<int>(v[1]);
    }

    spec.integration.dt = raw.dt;
    spec.integration.t_max = raw.t_max;
    spec.integration.mode = raw.adaptive ? StepMode::adaptive : StepMode::fixed;
    spec.integration.rel_tol = raw.rel_tol;
    spec.integration.escape_radius = raw.escape_radius;
    spec.integration.capture_radius = raw.capture_radius;
    spec.integration.validate();

    if (command == Command::integrate) {
      need("--i0");
      need("--c0");
      spec.seeds = {EconState(raw.i0, raw.c0)};
    }
    if (command == Command::sweep) {
      need("--param");
      need("--from");
      need("--to");
      need("--steps");
      SweepSpec sw{kParams.at(raw.param), raw.from, raw.to, raw.steps,
                   spec.params,           spec.policy, raw.refine_tol};
      sw.validate();
      spec.sweep = sw;
    }
    return spec;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  std::string text;
  std::string summary;
  try {
    switch (spec.command) {
      case Command::analyze: {
        const auto reports = analyze(spec.params, spec.policy);
        text = dump(analysis_json(spec.params, spec.policy, reports));
        std::ostringstream s;
        s << "analyze " << describe_policy(spec.policy) << ": " << reports.size()
          << " equilibria";
        for (const auto& r : reports) s << ' ' << to_string(r.classification);
        summary = s.str();
        break;
      }
      case Command::portrait: {
        const Window window = spec.window ? *spec.window : default_window(spec.params, spec.policy);
        const auto seeds = spec.seeds.empty() ? default_seeds(window) : spec.seeds;
        PortraitLayout layout;
        layout.grid_nx = spec.grid_nx;
        layout.grid_ny = spec.grid_ny;
        const Portrait p =
            build_portrait(spec.params, spec.policy, window, seeds, spec.integration, layout);
        if (spec.format == Format::json) text = dump(portrait_json(spec.params, spec.policy, p));
        else if (spec.format == Format::csv) text = grid_csv(p.grid);
        else text = render_svg(p, {"Phase portrait: " + describe_policy(spec.policy)});
        std::ostringstream s;
        s << "portrait " << describe_policy(spec.policy) << ": " << p.reports.size()
          << " equilibria, " << p.trajectories.size() << " trajectories, "
          << p.separatrices.size() << " separatrices";
        summary = s.str();
        break;
      }
      case Command::integrate: {
        std::vector<EquilibriumPoint> eqs;
        try {
          eqs = equilibria(spec.params, spec.policy);
        } catch (const DegeneratePolicyError&) {
        }
        const Trajectory t =
            integrate(spec.params, spec.policy, spec.seeds.front(), spec.integration, eqs);
        text = spec.format == Format::json ? dump(trajectory_json(spec.params, spec.policy, t))
                                           : trajectory_csv(t);
        std::ostringstream s;
        s << "integrate " << describe_policy(spec.policy) << ": " << to_string(t.termination)
          << " at t=" << t.final_time() << " after " << t.samples.size() << " samples";
        summary = s.str();
        break;
      }
      case Command::sweep: {
        const SweepResult r = kcross::sweep(*spec.sweep);
        if (spec.format == Format::json) text = dump(sweep_json(r));
        else if (spec.format == Format::csv) text = sweep_csv(r);
        else
          text = render_svg(r, {"Sweep of " + std::string(to_string(spec.sweep->param)) + ": " +
                                describe_policy(spec.policy)});
        std::ostringstream s;
        s << "sweep " << to_string(spec.sweep->param) << ": " << r.points.size()
          << " values, " << r.transitions.size() << " transitions";
        summary = s.str();
        break;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  if (!write_artifact(spec, text, out, err)) return 1;
  if (spec.out) out << summary << " -> " << *spec.out << '\n';
  return 0;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_args(args), out, err);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  }
}

}  // namespace kcross::cli
