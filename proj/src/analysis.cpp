#include "sqlife/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"

namespace sqlife {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kDead: return "dead";
    case Verdict::kStillLife: return "still_life";
    case Verdict::kOscillator: return "oscillator";
    case Verdict::kTranslating: return "translating";
    case Verdict::kUnresolved: return "unresolved";
  }
  return "unresolved";
}

double grid_distance(const Grid& g1, const Grid& g2, DistanceMode mode) {
  if (g1.width() != g2.width() || g1.height() != g2.height())
    throw std::invalid_argument("grid_distance: dimension mismatch");
  const auto c1 = g1.cells();
  const auto c2 = g2.cells();
  double d = 0.0;
  if (mode == DistanceMode::kProbability) {
    for (std::size_t i = 0; i < c1.size(); ++i)
      d = std::max(d, std::abs(alive_probability(c1[i]) - alive_probability(c2[i])));
    return d;
  }
  Complex overlap{0.0, 0.0};
  for (std::size_t i = 0; i < c1.size(); ++i) overlap += std::conj(c1[i].a) * c2[i].a;
  const double mag = std::abs(overlap);
  const Complex rot = mag > 0.0 ? overlap / mag : Complex{1.0, 0.0};
  for (std::size_t i = 0; i < c1.size(); ++i) d = std::max(d, std::abs(c2[i].a - rot * c1[i].a));
  return d;
}

namespace {

struct Offset {
  int p = 0;
  int dx = 0;
  int dy = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

// Distance between `now` and `then` shifted by (dx, dy), honouring the boundary.
double shifted_distance(const Grid& now, const Grid& then, int dx, int dy, DistanceMode mode, double bail) {
  const int w = now.width();
  const int h = now.height();
  const bool torus = now.boundary() == Boundary::kTorus;
  auto source = [&](int x, int y) -> CellState {
    int sx = x - dx;
    int sy = y - dy;
    if (torus) {
      sx = (sx % w + w) % w;
      sy = (sy % h + h) % h;
    } else if (sx < 0 || sy < 0 || sx >= w || sy >= h) {
      return CellState::dead();
    }
    return then.at(sx, sy);
  };
  if (mode == DistanceMode::kProbability) {
    double d = 0.0;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        d = std::max(d, std::abs(alive_probability(now.at(x, y)) - alive_probability(source(x, y))));
        if (d > bail) return d;
      }
    // Cells that fell off a FixedDead edge must have been empty.
    if (!torus) {
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const int tx = x + dx;
          const int ty = y + dy;
          if (tx < 0 || ty < 0 || tx >= w || ty >= h) d = std::max(d, alive_probability(then.at(x, y)));
        }
    }
    return d;
  }
  std::vector<CellState> cells;
  cells.reserve(now.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) cells.push_back(source(x, y));
  return grid_distance(now, Grid(w, h, now.boundary(), std::move(cells)), mode);
}

int wrap_offset(int d, int n) {
  d = ((d % n) + n) % n;
  if (d > n / 2) d -= n;
  return d;
}

// Smallest period p (and offset) for which `hist.back()` recurs; stationary
// matches are preferred over translations at equal p.
std::optional<Offset> find_recurrence(const std::vector<Grid>& hist, const std::vector<double>& totals,
                                      const ClassifyOptions& opts) {
  const int t = static_cast<int>(hist.size()) - 1;
  const Grid& now = hist.back();
  const double mass_slack = opts.tol * static_cast<double>(now.size());
  const bool torus = now.boundary() == Boundary::kTorus;

  for (int p = 1; p <= t; ++p) {
    const Grid& then = hist[static_cast<std::size_t>(t - p)];
    if (std::abs(totals[static_cast<std::size_t>(t)] - totals[static_cast<std::size_t>(t - p)]) > mass_slack)
      continue;
    if (grid_distance(now, then, opts.distance) < opts.tol) return Offset{p, 0, 0};

    // Anchor on the first strongly-alive cell of the earlier grid; every
    // translation must carry it onto a cell of matching probability.
    const double peak = then.max_alive_probability();
    if (peak <= 0.0) continue;
    int ax = -1;
    int ay = -1;
    for (int y = 0; y < then.height() && ax < 0; ++y)
      for (int x = 0; x < then.width(); ++x)
        if (alive_probability(then.at(x, y)) > 0.5 * peak) {
          ax = x;
          ay = y;
          break;
        }
    const double anchor_p = alive_probability(then.at(ax, ay));

    std::optional<Offset> best;
    for (int y = 0; y < now.height(); ++y) {
      for (int x = 0; x < now.width(); ++x) {
        if (std::abs(alive_probability(now.at(x, y)) - anchor_p) >= opts.tol) continue;
        int dx = x - ax;
        int dy = y - ay;
        if (torus) {
          dx = wrap_offset(dx, now.width());
          dy = wrap_offset(dy, now.height());
        }
        if (dx == 0 && dy == 0) continue;
        // Nothing moves faster than one cell per generation.
        if (std::abs(dx) > p || std::abs(dy) > p) continue;
        if (shifted_distance(now, then, dx, dy, opts.distance, opts.tol) < opts.tol) {
          const Offset o{p, dx, dy};
          if (!best || std::pair(o.dy, o.dx) < std::pair(best->dy, best->dx)) best = o;
        }
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

bool touches_border(const Grid& g, double threshold) {
  if (g.boundary() == Boundary::kTorus) return false;
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x) {
      if (x != 0 && y != 0 && x != g.width() - 1 && y != g.height() - 1) continue;
      if (alive_probability(g.at(x, y)) > threshold) return true;
    }
  return false;
}

}  // namespace

FateReport classify(const Grid& g0, const StepConfig& cfg, const ClassifyOptions& opts) {
  cfg.validate();
  if (opts.max_gen < 1) throw std::invalid_argument("max_gen must be at least 1");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be positive");

  FateReport report;
  std::vector<Grid> hist{g0};
  std::vector<double> totals{g0.total_alive_probability()};
  report.touched_border = touches_border(g0, cfg.dead_threshold);

  auto finish = [&](Verdict v) {
    report.verdict = v;
    report.generations_run = static_cast<int>(hist.size()) - 1;
    report.max_alive_probability_final = hist.back().max_alive_probability();
    report.live_cell_count_history = totals;
    return report;
  };

  if (g0.max_alive_probability() < cfg.dead_threshold) {
    report.generation = 0;
    return finish(Verdict::kDead);
  }

  std::optional<Offset> pending;
  for (int t = 1; t <= opts.max_gen; ++t) {
    hist.push_back(step_grid(hist.back(), cfg));
    totals.push_back(hist.back().total_alive_probability());
    report.touched_border = report.touched_border || touches_border(hist.back(), cfg.dead_threshold);

    if (hist.back().max_alive_probability() < cfg.dead_threshold) {
      report.generation = t;
      return finish(Verdict::kDead);
    }

    const auto match = find_recurrence(hist, totals, opts);
    if (match && pending && *match == *pending) {
      report.period = match->p;
      report.dx = match->dx;
      report.dy = match->dy;
      if (match->dx != 0 || match->dy != 0) return finish(Verdict::kTranslating);
      return finish(match->p == 1 ? Verdict::kStillLife : Verdict::kOscillator);
    }
    pending = match;
  }
  return finish(Verdict::kUnresolved);
}

std::vector<double> linspace(double start, double end, int count) {
  if (count < 1) throw std::invalid_argument("linspace needs at least one point");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = start;
    return out;
  }
  const double step = (end - start) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
  out.back() = end;
  return out;
}

SweepResult sweep_phase(const PatternDocument& doc, int x, int y, std::span<const double> phases,
                        const StepConfig& cfg, const ClassifyOptions& opts) {
  const Grid& base = doc.grid;
  if (!base.in_bounds(x, y)) throw std::out_of_range("sweep cell is outside the grid");
  const CellState target = base.at(x, y);
  if (std::abs(target.a) == 0.0) throw std::invalid_argument("sweep cell is dead");
  if (phases.empty()) throw std::invalid_argument("sweep needs at least one phase");
  for (std::size_t i = 1; i < phases.size(); ++i)
    if (!(phases[i] > phases[i - 1])) throw std::invalid_argument("sweep phases must be strictly increasing");

  SweepResult result;
  result.phases.assign(phases.begin(), phases.end());
  result.fates.resize(phases.size());

  StepConfig inner = cfg;
  inner.threads = 1;
  detail::parallel_for(phases.size(), cfg.threads, [&](std::size_t i) {
    Grid g = base;
    g.set(x, y, {std::polar(std::abs(target.a), phases[i]), target.b});
    result.fates[i] = classify(g, inner, opts);
  });

  std::optional<std::size_t> transition;
  int transitions = 0;
  for (std::size_t i = 1; i < result.fates.size(); ++i) {
    const bool prev_stable = result.fates[i - 1].verdict != Verdict::kDead;
    const bool stable = result.fates[i].verdict != Verdict::kDead;
    if (prev_stable != stable) {
      ++transitions;
      transition = i;
    }
  }
  if (transitions == 1)
    result.critical_angle_estimate = 0.5 * (result.phases[*transition - 1] + result.phases[*transition]);
  return result;
}

namespace {

struct Bounds {
  int min_x, max_x, min_y, max_y;
};

std::optional<Bounds> live_bounds(const Grid& g, double threshold) {
  std::optional<Bounds> b;
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x) {
      if (alive_probability(g.at(x, y)) < threshold) continue;
      if (!b) {
        b = Bounds{x, x, y, y};
      } else {
        b->min_x = std::min(b->min_x, x);
        b->max_x = std::max(b->max_x, x);
        b->min_y = std::min(b->min_y, y);
        b->max_y = std::max(b->max_y, y);
      }
    }
  return b;
}

double least_squares_slope(const std::vector<double>& ys) {
  const auto n = static_cast<double>(ys.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const auto x = static_cast<double>(i);
    sx += x;
    sy += ys[i];
    sxx += x * x;
    sxy += x * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

}  // namespace

BurnMeasurement measure_burn(const PatternDocument& doc, const StepConfig& cfg, int max_gen) {
  cfg.validate();
  if (max_gen < 1) throw std::invalid_argument("max_gen must be at least 1");
  const double threshold = cfg.dead_threshold;
  auto first = live_bounds(doc.grid, threshold);
  if (!first) throw BurnError("pattern is empty");

  BurnMeasurement m;
  m.axis = (first->max_x - first->min_x) >= (first->max_y - first->min_y) ? Axis::kX : Axis::kY;
  auto record = [&](const Bounds& b) {
    m.lower_edge.push_back(m.axis == Axis::kX ? b.min_x : b.min_y);
    m.upper_edge.push_back(m.axis == Axis::kX ? b.max_x : b.max_y);
  };
  record(*first);

  Grid g = doc.grid;
  for (int t = 1; t <= max_gen; ++t) {
    g = step_grid(g, cfg);
    const auto b = live_bounds(g, threshold);
    if (!b) {
      m.died_at = t;
      break;
    }
    record(*b);
  }
  if (m.lower_edge.size() < 2) throw BurnError("pattern died before a burn rate was measurable");

  std::vector<double> extent;
  for (std::size_t i = 0; i < m.lower_edge.size(); ++i)
    extent.push_back(static_cast<double>(m.upper_edge[i] - m.lower_edge[i] + 1));
  for (std::size_t i = 1; i < extent.size(); ++i)
    if (extent[i] != extent[i - 1]) m.burn_generations = static_cast<int>(i);
  if (m.died_at) m.burn_generations = static_cast<int>(extent.size()) - 1;
  if (m.burn_generations == 0) return m;

  extent.resize(static_cast<std::size_t>(m.burn_generations) + 1);
  m.rate = std::abs(least_squares_slope(extent));
  return m;
}

double measure_burn_rate(const PatternDocument& doc, const StepConfig& cfg, int max_gen) {
  return measure_burn(doc, cfg, max_gen).rate;
}

}  // namespace sqlife
