#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kcross/bifurcation.hpp"
#include "kcross/integrator.hpp"
#include "kcross/window.hpp"

namespace kcross::cli {

enum class Command { analyze, portrait, integrate, sweep };
enum class Format { json, csv, svg };

/// Bad flags, missing flags, out-of-range parameters. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunSpec {
  RunSpec(Command cmd, ModelParams model, GovPolicy rule)
      : command(cmd), params(model), policy(rule) {}

  Command command;
  ModelParams params;
  GovPolicy policy;
  Format format = Format::json;
  /// Artifact destination; standard output when absent.
  std::optional<std::string> out;

  // portrait / integrate
  std::optional<Window> window;
  std::vector<EconState> seeds;
  int grid_nx = 21;
  int grid_ny = 21;
  IntegrationOptions integration;

  // sweep
  std::optional<SweepSpec> sweep;
};

/// Parses arguments (without the program name). Throws UsageError.
RunSpec parse_args(const std::vector<std::string>& args);

/// Executes a parsed spec. Writes the artifact to spec.out (or `out` when
/// no path is given) and, when writing a file, a one-line summary to `out`.
/// Returns 0 on success and 1 on analysis or I/O failure.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// parse_args + run with exit code 2 for usage errors.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kcross::cli
