#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "sqlife/analysis.hpp"
#include "sqlife/render.hpp"
#include "sqlife/rules.hpp"

namespace sqlife::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInputError = 2, kCheckFailed = 3 };

struct CommonOptions {
  std::string pattern_path;
  std::optional<Boundary> boundary;
  StepConfig step;
};

struct RunConfig {
  CommonOptions common;
  int generations = 10;
  std::string output_dir = "frames";
  RenderMode format = RenderMode::kAsciiArrows;
  int pixel_size = 8;
};

struct AnalyzeConfig {
  CommonOptions common;
  ClassifyOptions classify;
};

struct SweepConfig {
  CommonOptions common;
  int cell_x = 0;
  int cell_y = 0;
  double phase_start = 0.0;
  double phase_end = 3.141592653589793;
  int steps = 64;
  ClassifyOptions classify;
};

struct OracleCheckConfig {
  CommonOptions common;
  int generations = 100;
};

/// First generation/cell where the projected engine state and the classical
/// oracle disagree; empty when they agree throughout.
struct Divergence {
  int generation;
  int x;
  int y;
  bool engine_alive;
};

/// Throws std::invalid_argument if any cell is not exactly alive or dead.
std::optional<Divergence> oracle_check(const Grid& g, int generations, const StepConfig& cfg = {});

std::string fate_report_json(const FateReport& r);
std::string sweep_csv(const SweepResult& r);

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_analyze(const AnalyzeConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle_check(const OracleCheckConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sqlife::cli
