#pragma once

#include "sqlife/state.hpp"

namespace sqlife {

/// Phasor sum of the eight Moore neighbours' alive coefficients.
struct NeighborSum {
  Complex alpha{0.0, 0.0};
  double magnitude = 0.0;  // A = |alpha|
  double phase = 0.0;      // arg(alpha) in (-pi, pi], 0 when A vanishes

  static NeighborSum from_alpha(Complex alpha);
};

/// Mixture coefficients for the birth, survival and death operators.
struct OperatorWeights {
  double birth = 0.0;
  double survival = 0.0;
  double death = 0.0;
};

/// Which term of the 1 < A <= 2 mixture carries the sqrt(2)+1 bias.
///
/// kSoftDeath weights death:survival as (2-A) : (sqrt2+1)(A-1), written as
/// (sqrt2-1)(2-A) D + (A-1) S so the A = 2 endpoint is exactly pure S. Under it
/// a block with one cell at 3pi/4 dies in its fourth generation. kHardDeath uses
/// (sqrt2+1)(2-A) D + (A-1) S and kills that block one generation earlier. The
/// two agree at every integer A.
enum class WeightConvention { kSoftDeath, kHardDeath };

struct StepConfig {
  bool canonicalize_dead_phase = false;
  double dead_threshold = 1e-6;
  WeightConvention weights = WeightConvention::kSoftDeath;
  /// Worker threads for the grid stepper; 0 picks hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

/// Weight triple for the neighbour magnitude A in [0, 8].
OperatorWeights operator_weights(double A, WeightConvention convention = WeightConvention::kSoftDeath);

/// Throws std::out_of_range for coordinates off the grid.
NeighborSum neighbor_sum(const Grid& g, int x, int y);

RawPair apply_birth(const CellState& c, double phase);
RawPair apply_death(const CellState& c, double phase);
RawPair apply_survival(const CellState& c);

CellState step_cell(const CellState& c, const NeighborSum& ns, const StepConfig& cfg = {});

/// One synchronous generation. The result does not depend on cfg.threads.
Grid step_grid(const Grid& g, const StepConfig& cfg = {});

/// The same update with alive and dead exchanged throughout; used to check
/// that swapped(step_grid(g)) == dual_step_grid(swapped(g)).
Grid dual_step_grid(const Grid& g, const StepConfig& cfg = {});

}  // namespace sqlife
