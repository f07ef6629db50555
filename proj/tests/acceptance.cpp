// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "property_checks.hpp"
#include "sqlife/analysis.hpp"
#include "sqlife/oracle.hpp"
#include "sqlife/rules.hpp"
#include "test_support.hpp"

using namespace sqlife;
using std::numbers::pi;

namespace {

struct Check {
  bool ok;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Check classical_limit() {
  const auto exhaustive = test::exhaustive_neighbourhoods();
  const auto random = test::random_classical_boards(10000, 12, true, 0x5eed, 1);

  std::string why_glider, why_r;
  const auto glider = oracle::project(test::load("glider_torus").grid, 0.5);
  const auto rpent = oracle::project(test::load("r_pentomino").grid, 0.5);
  const bool glider_ok = test::classical_trajectory_matches(glider, 100, &why_glider);
  const bool r_ok = test::classical_trajectory_matches(rpent, 50, &why_r);

  const bool ok = exhaustive.ok() && random.ok() && glider_ok && r_ok;
  return {ok, fmt("neighbourhoods %d/%d, random 12x12 %d/%d, glider 100 gens %s, r-pentomino 50 gens %s",
                  exhaustive.cases - exhaustive.failures, exhaustive.cases, random.cases - random.failures, random.cases,
                  glider_ok ? "match" : why_glider.c_str(), r_ok ? "match" : why_r.c_str())};
}

Check worked_example() {
  const auto ns = NeighborSum::from_alpha({3.0 + 1.0 / std::numbers::sqrt2, 0.0});
  const double from_alive = alive_probability(step_cell(CellState::alive(), ns));
  const double from_dead = alive_probability(step_cell(CellState::dead(), ns));
  const bool ok = std::abs(from_alive - 0.5) <= 1e-12 && std::abs(from_dead - 0.5) <= 1e-12;
  return {ok, fmt("p(alive) from (1,0) = %.15f, from (0,1) = %.15f", from_alive, from_dead)};
}

Check pi_phase_block() {
  const StepConfig cfg;
  const auto doc = test::load("block_phase_pi");
  const auto r = classify(doc.grid, cfg);
  const Grid g1 = step_grid(doc.grid, cfg);
  int live = 0, lx = -1, ly = -1;
  for (int y = 0; y < g1.height(); ++y)
    for (int x = 0; x < g1.width(); ++x)
      if (alive_probability(g1.at(x, y)) > 1e-6) {
        ++live;
        lx = x;
        ly = y;
      }
  const bool pi_cell = live == 1 && std::abs(std::arg(doc.grid.at(lx, ly).a)) > pi - 1e-12;
  const bool ok = r.verdict == Verdict::kDead && r.generation == 2 && pi_cell;
  return {ok, fmt("verdict %s(%d), generation-1 live cells %d%s", std::string(to_string(r.verdict)).c_str(),
                  r.generation, live, pi_cell ? " (the pi-phase cell)" : "")};
}

Check half_pi_block_and_sweep() {
  const StepConfig cfg;
  const auto half = classify(test::load("block_phase_half_pi").grid, cfg, {200, 1e-6});
  const bool survives = half.verdict != Verdict::kDead;

  const auto phases = linspace(0.0, pi, 128);
  const double step = pi / 127;
  const auto s = sweep_phase(test::load("block"), 3, 3, phases, cfg);
  const double target = 2 * pi / 3;
  const bool bracketed = s.critical_angle_estimate && std::abs(*s.critical_angle_estimate - target) <= step;
  std::string est = s.critical_angle_estimate ? fmt("%.6f", *s.critical_angle_estimate) : "none";
  return {survives && bracketed,
          fmt("pi/2 block %s; sweep transition %s vs 2pi/3 = %.6f (step %.6f)",
              survives ? "not dead in 200 gens" : "dies", est.c_str(), target, step)};
}

Check three_quarter_pi_block() {
  const auto r = classify(test::load("block_phase_three_quarter_pi").grid, {});
  const bool ok = r.verdict == Verdict::kDead && r.generation == 4;
  return {ok, fmt("verdict %s(%d)", std::string(to_string(r.verdict)).c_str(), r.generation)};
}

Check wick_burn() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"wick_block", "wick_pair"}) {
    const auto m = measure_burn(test::load(name), {});
    bool anchored = true;
    for (int t = 0; t <= m.burn_generations; ++t)
      anchored = anchored && m.lower_edge[static_cast<std::size_t>(t)] == m.lower_edge[0];
    const bool pass = std::abs(m.rate - 1.0) <= 0.1 && anchored && m.burn_generations > 0;
    ok = ok && pass;
    detail += fmt("%s%s rate %.4f over %d gens, anchored end %s", detail.empty() ? "" : "; ", name, m.rate,
                  m.burn_generations, anchored ? "fixed" : "recedes");
  }
  return {ok, detail};
}

Check phase_loop() {
  const StepConfig cfg;
  const Grid g0 = test::load("phase_loop").grid;
  const auto r = classify(g0, cfg);
  Grid g = g0;
  double worst = 0.0;
  for (int t = 1; t <= 100; ++t) {
    g = step_grid(g, cfg);
    worst = std::max(worst, grid_distance(g, g0));
  }
  const bool ok = r.verdict == Verdict::kStillLife && worst < 1e-6;
  return {ok, fmt("verdict %s, max distance from generation 0 over 100 gens %.3g",
                  std::string(to_string(r.verdict)).c_str(), worst)};
}

Check phase_boundary() {
  const StepConfig cfg;
  const Grid g0 = test::load("phase_boundary").grid;
  Grid g = g0;
  double worst = 0.0, leak = 0.0;
  for (int t = 1; t <= 100; ++t) {
    g = step_grid(g, cfg);
    worst = std::max(worst, grid_distance(g, g0));
    for (int y = 0; y < g.height(); ++y)
      for (int x = 0; x < g.width(); ++x)
        if (alive_probability(g0.at(x, y)) < 1e-6) leak = std::max(leak, alive_probability(g.at(x, y)));
  }
  const bool ok = worst < 1e-6 && leak <= 1e-6;
  return {ok, fmt("max distance from generation 0 over 100 gens %.3g, max p outside the line %.3g", worst, leak)};
}

Check invariants() {
  struct Named {
    const char* name;
    test::Outcome out;
  };
  const std::vector<Named> suites{
      {"normalization", test::normalization_preserved(1000, 1)},
      {"global phase", test::global_phase_invariance(1000, 2)},
      {"continuity", test::continuity_across_regions(250, 3)},
      {"duality", test::duality(1000, 4)},
      {"zero-phase reduction", test::zero_phase_reduction(1000, 5)},
      {"parallel determinism", test::parallel_determinism(1000, 6)},
  };
  bool ok = true;
  std::string detail;
  for (const auto& s : suites) {
    ok = ok && s.out.ok() && s.out.cases >= 1000;
    detail += fmt("%s%s %d/%d (worst %.2g)", detail.empty() ? "" : ", ", s.name, s.out.cases - s.out.failures,
                  s.out.cases, s.out.worst);
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"classical-limit equivalence", classical_limit},
      {"worked example A = 3 + 1/sqrt2", worked_example},
      {"pi-phase block dies in 2", pi_phase_block},
      {"pi/2 block survives, critical angle 2pi/3", half_pi_block_and_sweep},
      {"3pi/4 block dies in 4", three_quarter_pi_block},
      {"wicks burn at 1 cell/gen", wick_burn},
      {"alternating loop is a still life", phase_loop},
      {"phased boundary is stable", phase_boundary},
      {"invariant suites", invariants},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!c.ok) ++failed;
    std::printf("criterion %zu %s: %s [%s] (%.2fs)\n", i + 1, c.ok ? "PASS" : "FAIL", criteria[i].first,
                c.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
