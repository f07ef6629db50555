#include "sqlife/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqlife::oracle {

BoolGrid::BoolGrid(int w, int h, Boundary b)
    : width(w), height(h), alive(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), false), boundary(b) {
  if (w <= 0 || h <= 0) throw std::invalid_argument("board dimensions must be positive");
}

int BoolGrid::population() const { return static_cast<int>(std::count(alive.begin(), alive.end(), true)); }

namespace {

int live_neighbours(const BoolGrid& g, int x, int y) {
  int count = 0;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      int nx = x + dx;
      int ny = y + dy;
      if (g.boundary == Boundary::kTorus) {
        nx = (nx + g.width) % g.width;
        ny = (ny + g.height) % g.height;
      } else if (nx < 0 || ny < 0 || nx >= g.width || ny >= g.height) {
        continue;
      }
      if (g.at(nx, ny)) ++count;
    }
  }
  return count;
}

}  // namespace

BoolGrid conway_step(const BoolGrid& g) {
  BoolGrid next(g.width, g.height, g.boundary);
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) {
      const int n = live_neighbours(g, x, y);
      next.set(x, y, g.at(x, y) ? (n == 2 || n == 3) : n == 3);
    }
  }
  return next;
}

Grid lift(const BoolGrid& g) {
  std::vector<CellState> cells;
  cells.reserve(g.alive.size());
  for (bool v : g.alive) cells.push_back(v ? CellState::alive() : CellState::dead());
  return Grid(g.width, g.height, g.boundary, std::move(cells));
}

BoolGrid project(const Grid& g, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("threshold must lie in (0, 1)");
  BoolGrid out(g.width(), g.height(), g.boundary());
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x) out.set(x, y, alive_probability(g.at(x, y)) > threshold);
  return out;
}

}  // namespace sqlife::oracle
