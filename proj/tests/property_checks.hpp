#pragma once

// Randomized invariant checks shared by the unit suite and the acceptance
// binary. The reference updates here are written independently of the
// engine's stepping code.

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "sqlife/oracle.hpp"
#include "sqlife/rules.hpp"
#include "test_support.hpp"

namespace sqlife::test {

struct Outcome {
  int cases = 0;
  int failures = 0;
  double worst = 0.0;
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

// Classical B3/S23 vs projected engine for a single board over `generations`.
inline bool classical_trajectory_matches(const oracle::BoolGrid& start, int generations, std::string* why = nullptr) {
  Grid engine = oracle::lift(start);
  oracle::BoolGrid board = start;
  for (int t = 1; t <= generations; ++t) {
    engine = step_grid(engine);
    board = oracle::conway_step(board);
    if (!(oracle::project(engine, 0.5) == board)) {
      if (why) *why = "diverged at generation " + std::to_string(t);
      return false;
    }
  }
  return true;
}

inline Outcome exhaustive_neighbourhoods() {
  Outcome out;
  for (int mask = 0; mask < 512; ++mask) {
    for (Boundary b : {Boundary::kFixedDead, Boundary::kTorus}) {
      // 3x3 on its own and embedded in a 5x5 so edge effects are covered both ways.
      for (int size : {3, 5}) {
        oracle::BoolGrid g(size, size, b);
        const int off = (size - 3) / 2;
        for (int k = 0; k < 9; ++k) g.set(off + k % 3, off + k / 3, (mask >> k) & 1);
        ++out.cases;
        if (!classical_trajectory_matches(g, 1))
          out.fail("mask " + std::to_string(mask) + " size " + std::to_string(size));
      }
    }
  }
  return out;
}

inline Outcome random_classical_boards(int cases, int max_dim, bool fixed_dim, std::uint64_t seed, int generations = 1) {
  Outcome out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> density(0.1, 0.6);
  for (int i = 0; i < cases; ++i) {
    const int w = fixed_dim ? max_dim : 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_dim));
    const int h = fixed_dim ? max_dim : 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_dim));
    const Boundary b = rng() % 2 ? Boundary::kTorus : Boundary::kFixedDead;
    const auto board = random_board(rng, w, h, b, density(rng));
    ++out.cases;
    std::string why;
    if (!classical_trajectory_matches(board, generations, &why)) out.fail("case " + std::to_string(i) + ": " + why);
  }
  return out;
}

inline Outcome normalization_preserved(int cases, std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    Grid g = random_grid(rng, 1 + static_cast<int>(rng() % 9), 1 + static_cast<int>(rng() % 9));
    StepConfig cfg;
    cfg.canonicalize_dead_phase = i % 2;
    for (int t = 0; t < 3; ++t) {
      g = step_grid(g, cfg);
      for (const auto& c : g.cells()) {
        const double err = std::abs(std::norm(c.a) + std::norm(c.b) - 1.0);
        out.worst = std::max(out.worst, err);
      }
    }
    ++out.cases;
    if (out.worst > 1e-9) out.fail("case " + std::to_string(i));
  }
  return out;
}

// step(e^{i theta} g) == e^{i theta} step(g) on the alive coefficients, and all
// alive probabilities agree.
inline Outcome global_phase_invariance(int cases, std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ph(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < cases; ++i) {
    const Grid g = random_grid(rng, 2 + static_cast<int>(rng() % 7), 2 + static_cast<int>(rng() % 7));
    const double theta = ph(rng);
    const Grid lhs = step_grid(rotate_global_phase(g, theta));
    const Grid rhs = rotate_global_phase(step_grid(g), theta);
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      worst = std::max(worst, std::abs(lhs.cells()[k].a - rhs.cells()[k].a));
      worst = std::max(worst, std::abs(alive_probability(lhs.cells()[k]) - alive_probability(rhs.cells()[k])));
    }
    out.worst = std::max(out.worst, worst);
    ++out.cases;
    if (worst > 1e-9) out.fail("case " + std::to_string(i));
  }
  return out;
}

inline Outcome continuity_across_regions(int cases_per_boundary, std::uint64_t seed,
                                         WeightConvention conv = WeightConvention::kSoftDeath) {
  Outcome out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ph(-std::numbers::pi, std::numbers::pi);
  StepConfig cfg;
  cfg.weights = conv;
  for (double edge : {1.0, 2.0, 3.0, 4.0}) {
    for (int i = 0; i < cases_per_boundary; ++i) {
      const CellState c = random_cell(rng);
      const double phi = ph(rng);
      const double below = alive_probability(step_cell(c, NeighborSum::from_alpha(std::polar(edge - 1e-9, phi)), cfg));
      const double above = alive_probability(step_cell(c, NeighborSum::from_alpha(std::polar(edge + 1e-9, phi)), cfg));
      const double d = std::abs(below - above);
      out.worst = std::max(out.worst, d);
      ++out.cases;
      if (d >= 1e-6) out.fail("A*=" + std::to_string(edge) + " case " + std::to_string(i));
    }
  }
  return out;
}

inline Outcome duality(int cases, std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const Grid g = random_grid(rng, 5, 5);
    StepConfig cfg;
    cfg.canonicalize_dead_phase = i % 4 == 3;
    const double d = max_component_diff(swapped(step_grid(g, cfg)), dual_step_grid(swapped(g), cfg));
    out.worst = std::max(out.worst, d);
    ++out.cases;
    if (d > 1e-9) out.fail("case " + std::to_string(i));
  }
  return out;
}

// Real-arithmetic mixture update with the matrices B = [[1,1],[0,0]],
// D = [[0,0],[1,1]] and S = I, applied to nonnegative real cells.
inline double reference_weight_region(double A, WeightConvention conv, int which) {
  const double r = std::numbers::sqrt2 + 1.0;
  double b = 0, s = 0, d = 0;
  if (A <= 1.0) {
    d = 1.0;
  } else if (A <= 2.0) {
    s = A - 1.0;
    d = (conv == WeightConvention::kHardDeath ? r : 1.0 / r) * (2.0 - A);
  } else if (A <= 3.0) {
    s = r * (3.0 - A);
    b = A - 2.0;
  } else if (A < 4.0) {
    b = r * (4.0 - A);
    d = A - 3.0;
  } else {
    d = 1.0;
  }
  return which == 0 ? b : which == 1 ? s : d;
}

inline std::vector<std::pair<double, double>> reference_real_step(const std::vector<std::pair<double, double>>& cells,
                                                                  int w, int h, bool torus, WeightConvention conv) {
  std::vector<std::pair<double, double>> next(cells.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double A = 0.0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (!dx && !dy) continue;
          int nx = x + dx, ny = y + dy;
          if (torus) {
            nx = (nx + w) % w;
            ny = (ny + h) % h;
          } else if (nx < 0 || ny < 0 || nx >= w || ny >= h) {
            continue;
          }
          A += cells[static_cast<std::size_t>(ny * w + nx)].first;
        }
      const auto [a, b] = cells[static_cast<std::size_t>(y * w + x)];
      const double wb = reference_weight_region(A, conv, 0);
      const double ws = reference_weight_region(A, conv, 1);
      const double wd = reference_weight_region(A, conv, 2);
      // G v = wb*B v + ws*v + wd*D v
      const double na = wb * (a + b) + ws * a;
      const double nb = ws * b + wd * (a + b);
      const double n = std::sqrt(na * na + nb * nb);
      next[static_cast<std::size_t>(y * w + x)] = n < 1e-9 ? std::pair{0.0, 1.0} : std::pair{na / n, nb / n};
    }
  return next;
}

inline Outcome zero_phase_reduction(int cases, std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < cases; ++i) {
    const int w = 2 + static_cast<int>(rng() % 7);
    const int h = 2 + static_cast<int>(rng() % 7);
    const bool torus = rng() % 2;
    const auto conv = i % 2 ? WeightConvention::kHardDeath : WeightConvention::kSoftDeath;
    std::vector<std::pair<double, double>> cells;
    Grid g(w, h, torus ? Boundary::kTorus : Boundary::kFixedDead);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const double choice = u(rng);
        // Mix exact classical states with partial real amplitudes.
        const double p = choice < 0.3 ? 0.0 : choice < 0.55 ? 1.0 : u(rng);
        const double a = std::sqrt(p), b = std::sqrt(1.0 - p);
        cells.emplace_back(a, b);
        g.set(x, y, {Complex{a, 0.0}, Complex{b, 0.0}});
      }
    StepConfig cfg;
    cfg.weights = conv;
    const Grid next = step_grid(g, cfg);
    const auto ref = reference_real_step(cells, w, h, torus, conv);
    double worst = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) {
      worst = std::max(worst, std::abs(next.cells()[k].a - Complex{ref[k].first, 0.0}));
      worst = std::max(worst, std::abs(next.cells()[k].b - Complex{ref[k].second, 0.0}));
    }
    out.worst = std::max(out.worst, worst);
    ++out.cases;
    if (worst > 1e-12) out.fail("case " + std::to_string(i));
  }
  return out;
}

inline Outcome parallel_determinism(int cases, std::uint64_t seed) {
  Outcome out;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    const Grid g = random_grid(rng, 1 + static_cast<int>(rng() % 48), 1 + static_cast<int>(rng() % 48));
    StepConfig serial;
    serial.threads = 1;
    StepConfig parallel;
    parallel.threads = 2 + static_cast<unsigned>(rng() % 7);
    const Grid a = step_grid(g, serial);
    const Grid b = step_grid(g, parallel);
    const Grid c = dual_step_grid(g, serial);
    const Grid d = dual_step_grid(g, parallel);
    ++out.cases;
    if (!(a == b) || !(c == d)) out.fail("case " + std::to_string(i));
  }
  return out;
}

}  // namespace sqlife::test
