#pragma once

#include <vector>

#include "sqlife/state.hpp"

namespace sqlife::oracle {

/// Classical Life board, row-major.
struct BoolGrid {
  int width = 0;
  int height = 0;
  std::vector<bool> alive;
  Boundary boundary = Boundary::kFixedDead;

  BoolGrid() = default;
  BoolGrid(int w, int h, Boundary b = Boundary::kFixedDead);

  bool at(int x, int y) const { return alive[static_cast<std::size_t>(y) * width + x]; }
  void set(int x, int y, bool v) { alive[static_cast<std::size_t>(y) * width + x] = v; }
  int population() const;

  friend bool operator==(const BoolGrid&, const BoolGrid&) = default;
};

/// B3/S23: a dead cell with exactly three live neighbours is born; a live
/// cell with two or three live neighbours survives; everything else is dead.
BoolGrid conway_step(const BoolGrid& g);

Grid lift(const BoolGrid& g);

/// Cell alive iff |a|^2 > threshold (strict).
BoolGrid project(const Grid& g, double threshold = 0.5);

}  // namespace sqlife::oracle
