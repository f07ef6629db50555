#include "sqlife/rules.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "parallel.hpp"

namespace sqlife {

namespace {

constexpr double kSqrt2Plus1 = std::numbers::sqrt2 + 1.0;
constexpr double kSqrt2Minus1 = std::numbers::sqrt2 - 1.0;
constexpr double kPhaseCutoff = 1e-12;
// Below this many cells an automatic thread count stays serial.
constexpr std::size_t kParallelThreshold = 4096;

constexpr std::array<std::array<int, 2>, 8> kMoore{{
    {-1, -1}, {0, -1}, {1, -1},
    {-1, 0},           {1, 0},
    {-1, 1},  {0, 1},  {1, 1},
}};

// Sums a projection of the eight neighbours; off-grid cells contribute zero
// under FixedDead and wrap under Torus.
template <typename Project>
Complex moore_sum(const Grid& g, int x, int y, Project project) {
  Complex sum{0.0, 0.0};
  const int w = g.width();
  const int h = g.height();
  const bool torus = g.boundary() == Boundary::kTorus;
  for (const auto& [dx, dy] : kMoore) {
    int nx = x + dx;
    int ny = y + dy;
    if (torus) {
      nx = (nx % w + w) % w;
      ny = (ny % h + h) % h;
    } else if (nx < 0 || ny < 0 || nx >= w || ny >= h) {
      continue;
    }
    sum += project(g.at(nx, ny));
  }
  return sum;
}

unsigned effective_threads(const StepConfig& cfg, std::size_t cells) {
  if (cfg.threads == 0 && cells < kParallelThreshold) return 1;
  return cfg.threads;
}

RawPair mix(const OperatorWeights& w, const RawPair& birth, const RawPair& survival, const RawPair& death) {
  return {w.birth * birth.a + w.survival * survival.a + w.death * death.a,
          w.birth * birth.b + w.survival * survival.b + w.death * death.b};
}

}  // namespace

NeighborSum NeighborSum::from_alpha(Complex alpha) {
  NeighborSum ns;
  ns.alpha = alpha;
  ns.magnitude = std::abs(alpha);
  ns.phase = ns.magnitude < kPhaseCutoff ? 0.0 : std::arg(alpha);
  // std::arg returns -pi for (negative, -0.0); keep phase in (-pi, pi].
  if (ns.phase == -std::numbers::pi) ns.phase = std::numbers::pi;
  return ns;
}

void StepConfig::validate() const {
  if (!(dead_threshold > 0.0 && dead_threshold < 0.5))
    throw std::invalid_argument("dead_threshold must lie in (0, 0.5)");
}

OperatorWeights operator_weights(double A, WeightConvention convention) {
  if (!std::isfinite(A) || A < 0.0 || A > 8.0)
    throw std::domain_error("neighbour magnitude must lie in [0, 8], got " + std::to_string(A));
  if (A <= 1.0) return {0.0, 0.0, 1.0};
  if (A <= 2.0) {
    const double death_scale = convention == WeightConvention::kHardDeath ? kSqrt2Plus1 : kSqrt2Minus1;
    return {0.0, A - 1.0, death_scale * (2.0 - A)};
  }
  if (A <= 3.0) return {A - 2.0, kSqrt2Plus1 * (3.0 - A), 0.0};
  if (A < 4.0) return {kSqrt2Plus1 * (4.0 - A), 0.0, A - 3.0};
  return {0.0, 0.0, 1.0};
}

NeighborSum neighbor_sum(const Grid& g, int x, int y) {
  if (!g.in_bounds(x, y)) throw std::out_of_range("neighbour sum requested off the grid");
  return NeighborSum::from_alpha(moore_sum(g, x, y, [](const CellState& c) { return c.a; }));
}

RawPair apply_birth(const CellState& c, double phase) {
  return {c.a + std::abs(c.b) * std::polar(1.0, phase), Complex{0.0, 0.0}};
}

RawPair apply_death(const CellState& c, double phase) {
  return {Complex{0.0, 0.0}, std::abs(c.a) * std::polar(1.0, phase) + c.b};
}

RawPair apply_survival(const CellState& c) { return {c.a, c.b}; }

CellState step_cell(const CellState& c, const NeighborSum& ns, const StepConfig& cfg) {
  const auto w = operator_weights(std::min(ns.magnitude, 8.0), cfg.weights);
  const RawPair raw = mix(w, apply_birth(c, ns.phase), apply_survival(c), apply_death(c, ns.phase));
  CellState out = normalize(raw);
  if (cfg.canonicalize_dead_phase) out.b = Complex{std::abs(out.b), 0.0};
  return out;
}

Grid step_grid(const Grid& g, const StepConfig& cfg) {
  const int w = g.width();
  std::vector<CellState> next(g.size());
  detail::parallel_for(static_cast<std::size_t>(g.height()), effective_threads(cfg, g.size()),
                       [&](std::size_t row) {
                         const int y = static_cast<int>(row);
                         for (int x = 0; x < w; ++x)
                           next[row * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)] =
                               step_cell(g.at(x, y), neighbor_sum(g, x, y), cfg);
                       });
  return Grid(w, g.height(), g.boundary(), std::move(next));
}

Grid dual_step_grid(const Grid& g, const StepConfig& cfg) {
  const int w = g.width();
  std::vector<CellState> next(g.size());
  detail::parallel_for(
      static_cast<std::size_t>(g.height()), effective_threads(cfg, g.size()), [&](std::size_t row) {
        const int y = static_cast<int>(row);
        for (int x = 0; x < w; ++x) {
          const CellState& c = g.at(x, y);
          const auto ns = NeighborSum::from_alpha(moore_sum(g, x, y, [](const CellState& n) { return n.b; }));
          const auto wts = operator_weights(std::min(ns.magnitude, 8.0), cfg.weights);
          // Roles mirrored: birth fills the dead coefficient, death the alive one.
          const RawPair dual_birth{Complex{0.0, 0.0}, c.b + std::abs(c.a) * std::polar(1.0, ns.phase)};
          const RawPair dual_death{std::abs(c.b) * std::polar(1.0, ns.phase) + c.a, Complex{0.0, 0.0}};
          const RawPair raw = mix(wts, dual_birth, apply_survival(c), dual_death);
          const double n = std::sqrt(std::norm(raw.a) + std::norm(raw.b));
          CellState out = n >= kZeroNorm ? CellState{raw.a / n, raw.b / n} : CellState::alive();
          if (cfg.canonicalize_dead_phase) out.a = Complex{std::abs(out.a), 0.0};
          next[row * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)] = out;
        }
      });
  return Grid(w, g.height(), g.boundary(), std::move(next));
}

}  // namespace sqlife
