#include "sqlife/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "sqlife/oracle.hpp"

namespace sqlife::cli {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Grid load_grid(const CommonOptions& opts) {
  auto doc = load_pattern(opts.pattern_path);
  if (opts.boundary) doc.grid = doc.grid.with_boundary(*opts.boundary);
  return doc.grid;
}

PatternDocument load_document(const CommonOptions& opts) {
  auto doc = load_pattern(opts.pattern_path);
  if (opts.boundary) doc.grid = doc.grid.with_boundary(*opts.boundary);
  return doc;
}

// Maps exceptions thrown while executing a command onto exit codes.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    err << "error: parse failure: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string frame_name(int gen, RenderMode mode) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "gen_%05d.", gen);
  return std::string(buf) + std::string(frame_extension(mode));
}

}  // namespace

std::optional<Divergence> oracle_check(const Grid& g, int generations, const StepConfig& cfg) {
  if (generations < 0) throw std::invalid_argument("generations must be non-negative");
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x) {
      const CellState& c = g.at(x, y);
      if (!(c == CellState::alive() || c == CellState::dead()))
        throw std::invalid_argument("non-classical token at column " + std::to_string(x + 1) + ", row " +
                                    std::to_string(y + 1));
    }

  Grid engine = g;
  oracle::BoolGrid classical = oracle::project(g, 0.5);
  for (int gen = 1; gen <= generations; ++gen) {
    engine = step_grid(engine, cfg);
    classical = oracle::conway_step(classical);
    const auto projected = oracle::project(engine, 0.5);
    if (projected == classical) continue;
    for (int y = 0; y < g.height(); ++y)
      for (int x = 0; x < g.width(); ++x)
        if (projected.at(x, y) != classical.at(x, y)) return Divergence{gen, x, y, projected.at(x, y)};
  }
  return std::nullopt;
}

std::string fate_report_json(const FateReport& r) {
  nlohmann::ordered_json j;
  j["verdict"] = std::string(to_string(r.verdict));
  switch (r.verdict) {
    case Verdict::kDead: j["generation"] = r.generation; break;
    case Verdict::kStillLife:
    case Verdict::kOscillator: j["period"] = r.period; break;
    case Verdict::kTranslating:
      j["period"] = r.period;
      j["dx"] = r.dx;
      j["dy"] = r.dy;
      break;
    case Verdict::kUnresolved: break;
  }
  j["generations_run"] = r.generations_run;
  j["max_alive_probability_final"] = r.max_alive_probability_final;
  j["touched_border"] = r.touched_border;
  j["live_cell_count_history"] = r.live_cell_count_history;
  return j.dump();
}

std::string sweep_csv(const SweepResult& r) {
  std::string out = "phase_rad,verdict,death_generation\n";
  for (std::size_t i = 0; i < r.phases.size(); ++i) {
    const auto& f = r.fates[i];
    out += fmt17(r.phases[i]) + ',' + std::string(to_string(f.verdict)) + ',';
    if (f.verdict == Verdict::kDead) out += std::to_string(f.generation);
    out += '\n';
  }
  if (r.critical_angle_estimate) out += "# critical_angle_estimate=" + fmt17(*r.critical_angle_estimate) + '\n';
  return out;
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.generations < 0) throw std::invalid_argument("--generations must be non-negative");
    cfg.common.step.validate();
    Grid g = load_grid(cfg.common);
    const std::filesystem::path dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + cfg.output_dir + "': " + ec.message());

    const RenderOptions ropts{cfg.format, cfg.pixel_size};
    auto emit = [&](int gen) {
      std::string bytes;
      switch (cfg.format) {
        case RenderMode::kAsciiArrows: bytes = render_ascii(g); break;
        case RenderMode::kCsv: bytes = render_csv(g); break;
        case RenderMode::kImagePpm: {
          const auto img = render_ppm(g, ropts);
          bytes.assign(img.begin(), img.end());
          break;
        }
      }
      write_file(dir / frame_name(gen, cfg.format), bytes);
    };

    emit(0);
    for (int gen = 1; gen <= cfg.generations; ++gen) {
      g = step_grid(g, cfg.common.step);
      emit(gen);
    }
    out << "generations=" << cfg.generations << " final_total_alive_probability=" << fmt17(g.total_alive_probability())
        << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_analyze(const AnalyzeConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Grid g = load_grid(cfg.common);
    const auto report = classify(g, cfg.common.step, cfg.classify);
    if (report.touched_border) err << "warning: live cells reached the grid border; fixed boundary may distort the fate\n";
    out << fate_report_json(report) << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto doc = load_document(cfg.common);
    const auto phases = linspace(cfg.phase_start, cfg.phase_end, cfg.steps);
    const auto result = sweep_phase(doc, cfg.cell_x, cfg.cell_y, phases, cfg.common.step, cfg.classify);
    out << sweep_csv(result);
    return static_cast<int>(kOk);
  });
}

int cmd_oracle_check(const OracleCheckConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Grid g = load_grid(cfg.common);
    std::optional<Divergence> d;
    try {
      d = oracle_check(g, cfg.generations, cfg.common.step);
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return static_cast<int>(kInputError);
    }
    if (d) {
      err << "oracle-check: first divergence at generation " << d->generation << ", cell (" << d->x << "," << d->y
          << "): engine=" << (d->engine_alive ? "alive" : "dead")
          << " oracle=" << (d->engine_alive ? "dead" : "alive") << '\n';
      return static_cast<int>(kCheckFailed);
    }
    out << "oracle-check: " << cfg.generations << " generations match\n";
    return static_cast<int>(kOk);
  });
}

namespace {

struct RawCommon {
  std::string pattern;
  std::string boundary;
  bool canonicalize = false;
  double dead_threshold = 1e-6;
  std::string weights = "soft-death";
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, RawCommon& raw) {
  cmd->add_option("--pattern", raw.pattern, "Pattern file (.sqp)")->required();
  cmd->add_option("--boundary", raw.boundary, "Override the pattern's boundary: fixed|torus")
      ->check(CLI::IsMember({"fixed", "torus"}));
  cmd->add_flag("--canonicalize-dead-phase", raw.canonicalize, "Replace b with |b| after every step");
  cmd->add_option("--dead-threshold", raw.dead_threshold, "Alive probability below which a cell counts as dead");
  cmd->add_option("--weights", raw.weights,
                  "Death weight on 1<A<=2: soft-death ((sqrt2-1)(2-A)) or hard-death ((sqrt2+1)(2-A))")
      ->check(CLI::IsMember({"soft-death", "hard-death"}));
  cmd->add_option("--threads", raw.threads, "Worker threads (0 = automatic)");
}

CommonOptions to_common(const RawCommon& raw) {
  CommonOptions c;
  c.pattern_path = raw.pattern;
  if (!raw.boundary.empty()) c.boundary = parse_boundary(raw.boundary);
  c.step.canonicalize_dead_phase = raw.canonicalize;
  c.step.dead_threshold = raw.dead_threshold;
  c.step.weights = raw.weights == "hard-death" ? WeightConvention::kHardDeath : WeightConvention::kSoftDeath;
  c.step.threads = raw.threads;
  return c;
}

std::pair<int, int> parse_cell(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--cell expects X,Y");
  int x = 0, y = 0;
  const auto* b = s.data();
  auto r1 = std::from_chars(b, b + comma, x);
  auto r2 = std::from_chars(b + comma + 1, b + s.size(), y);
  if (r1.ec != std::errc{} || r1.ptr != b + comma || r2.ec != std::errc{} || r2.ptr != b + s.size())
    throw std::invalid_argument("--cell expects X,Y");
  return {x, y};
}

}  // namespace

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semi-quantum Life: simulate, classify and sweep phase-carrying Life patterns", "sqlife"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  RawCommon run_raw, analyze_raw, sweep_raw, check_raw;
  RunConfig run_cfg;
  AnalyzeConfig analyze_cfg;
  SweepConfig sweep_cfg;
  OracleCheckConfig check_cfg;
  std::string run_format = "ascii";
  std::string sweep_cell;
  bool analyze_phase_sensitive = false;

  auto* run = app.add_subcommand("run", "Step a pattern and write one frame per generation");
  add_common(run, run_raw);
  run->add_option("--generations", run_cfg.generations, "Generations to simulate");
  run->add_option("--output", run_cfg.output_dir, "Directory for gen_NNNNN frames");
  run->add_option("--format", run_format, "Frame format: ascii|ppm|csv")->check(CLI::IsMember({"ascii", "ppm", "csv"}));
  run->add_option("--pixel-size", run_cfg.pixel_size, "Pixels per cell in ppm frames")->check(CLI::PositiveNumber);

  auto* analyze = app.add_subcommand("analyze", "Classify the long-run fate of a pattern as JSON");
  add_common(analyze, analyze_raw);
  analyze->add_option("--generations", analyze_cfg.classify.max_gen, "Maximum generations to run");
  analyze->add_option("--tol", analyze_cfg.classify.tol, "Recurrence tolerance on the state distance");
  analyze->add_flag("--phase-sensitive", analyze_phase_sensitive, "Compare alive coefficients up to a global phase");

  auto* sweep = app.add_subcommand("sweep", "Sweep the phase of one cell and classify each variant as CSV");
  add_common(sweep, sweep_raw);
  sweep->add_option("--cell", sweep_cell, "Target cell as X,Y (zero-based)")->required();
  sweep->add_option("--phase-start", sweep_cfg.phase_start, "First phase in radians");
  sweep->add_option("--phase-end", sweep_cfg.phase_end, "Last phase in radians");
  sweep->add_option("--steps", sweep_cfg.steps, "Number of phases, endpoints included")->check(CLI::PositiveNumber);
  sweep->add_option("--generations", sweep_cfg.classify.max_gen, "Maximum generations per classification");
  sweep->add_option("--tol", sweep_cfg.classify.tol, "Recurrence tolerance on the state distance");

  auto* check = app.add_subcommand("oracle-check", "Compare a classical pattern against plain Conway Life");
  add_common(check, check_raw);
  check->add_option("--generations", check_cfg.generations, "Generations to compare");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? static_cast<int>(kOk) : static_cast<int>(kUsage);
  }

  try {
    if (*run) {
      run_cfg.common = to_common(run_raw);
      run_cfg.format = parse_render_mode(run_format);
      return cmd_run(run_cfg, out, err);
    }
    if (*analyze) {
      analyze_cfg.common = to_common(analyze_raw);
      if (analyze_phase_sensitive) analyze_cfg.classify.distance = DistanceMode::kPhaseSensitive;
      return cmd_analyze(analyze_cfg, out, err);
    }
    if (*sweep) {
      sweep_cfg.common = to_common(sweep_raw);
      std::tie(sweep_cfg.cell_x, sweep_cfg.cell_y) = parse_cell(sweep_cell);
      return cmd_sweep(sweep_cfg, out, err);
    }
    check_cfg.common = to_common(check_raw);
    return cmd_oracle_check(check_cfg, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace sqlife::cli
