#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "sqlife/rules.hpp"
#include "sqlife/state.hpp"

namespace sqlife {

enum class Verdict { kDead, kStillLife, kOscillator, kTranslating, kUnresolved };

std::string_view to_string(Verdict v);

/// Long-run behaviour of a pattern.
///
/// `generation` is meaningful for kDead (first all-dead generation). `period`
/// is 1 for still lifes, >= 2 for oscillators, and the displacement period for
/// translating patterns, whose per-period offset is (dx, dy).
struct FateReport {
  Verdict verdict = Verdict::kUnresolved;
  int generation = 0;
  int period = 0;
  int dx = 0;
  int dy = 0;
  int generations_run = 0;
  double max_alive_probability_final = 0.0;
  /// Sum of |a|^2 over the grid, one entry per generation starting at 0.
  std::vector<double> live_cell_count_history;
  /// A live cell reached the outermost ring of a FixedDead grid at some point.
  bool touched_border = false;
};

/// kProbability compares |a|^2 maps. kPhaseSensitive compares the alive
/// coefficients after removing the best single global phase.
enum class DistanceMode { kProbability, kPhaseSensitive };

struct ClassifyOptions {
  int max_gen = 200;
  double tol = 1e-6;
  DistanceMode distance = DistanceMode::kProbability;
};

/// Max over cells of ||a1|^2 - |a2|^2| (or the phase-sensitive analogue).
/// Throws std::invalid_argument on a dimension mismatch.
double grid_distance(const Grid& g1, const Grid& g2, DistanceMode mode = DistanceMode::kProbability);

FateReport classify(const Grid& g0, const StepConfig& cfg, const ClassifyOptions& opts = {});

struct SweepResult {
  std::vector<double> phases;
  std::vector<FateReport> fates;
  /// Midpoint of the single stable/unstable transition, if exactly one exists.
  std::optional<double> critical_angle_estimate;
};

/// `count` evenly spaced values from start to end inclusive; a single value is `start`.
std::vector<double> linspace(double start, double end, int count);

/// Re-phases the alive coefficient of cell (x, y) to each angle and classifies.
/// A phase counts as stable when the verdict is anything other than kDead.
SweepResult sweep_phase(const PatternDocument& doc, int x, int y, std::span<const double> phases,
                        const StepConfig& cfg, const ClassifyOptions& opts = {});

class BurnError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Axis { kX, kY };

struct BurnMeasurement {
  /// Magnitude of the least-squares slope of the extent, cells per generation.
  double rate = 0.0;
  Axis axis = Axis::kX;
  /// Last generation at which the extent changed; 0 when it never did.
  int burn_generations = 0;
  std::optional<int> died_at;
  /// Live-cell bounds along the major axis, per generation.
  std::vector<int> lower_edge;
  std::vector<int> upper_edge;
};

/// Tracks the live bounding box along the pattern's longer axis and fits the
/// rate at which its extent changes over the burn. Throws BurnError when the
/// pattern is empty or dies before two generations of extent are available.
BurnMeasurement measure_burn(const PatternDocument& doc, const StepConfig& cfg, int max_gen = 200);
double measure_burn_rate(const PatternDocument& doc, const StepConfig& cfg, int max_gen = 200);

}  // namespace sqlife
