#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "sqlife/analysis.hpp"
#include "sqlife/cli.hpp"
#include "sqlife/oracle.hpp"
#include "sqlife/render.hpp"
#include "sqlife/rules.hpp"
#include "sqlife/state.hpp"

namespace py = pybind11;
using namespace sqlife;

namespace {

std::vector<std::vector<double>> probabilities(const Grid& g) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(g.height()));
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x) rows[static_cast<std::size_t>(y)].push_back(alive_probability(g.at(x, y)));
  return rows;
}

Grid grid_from_rows(const std::vector<std::vector<CellState>>& rows, Boundary b) {
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("grid needs at least one cell");
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows.front().size());
  std::vector<CellState> cells;
  cells.reserve(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != w) throw std::invalid_argument("rows must all have the same length");
    cells.insert(cells.end(), row.begin(), row.end());
  }
  return Grid(w, h, b, std::move(cells));
}

}  // namespace

PYBIND11_MODULE(_sqlife, m) {
  m.doc() = "Semi-quantum Life engine";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<BurnError>(m, "BurnError", PyExc_RuntimeError);

  py::class_<CellState>(m, "CellState")
      .def(py::init<>())
      .def(py::init([](Complex a, Complex b) { return CellState{a, b}; }), py::arg("a"), py::arg("b"))
      .def_readwrite("a", &CellState::a)
      .def_readwrite("b", &CellState::b)
      .def_static("dead", &CellState::dead)
      .def_static("alive", &CellState::alive)
      .def_static("from_phasor", &CellState::from_phasor, py::arg("amplitude"), py::arg("phase_rad"))
      .def("is_normalized", &CellState::is_normalized, py::arg("tol") = kNormTolerance)
      .def_property_readonly("p_alive", [](const CellState& c) { return alive_probability(c); })
      .def(py::self == py::self)
      .def("__repr__", [](const CellState& c) { return "CellState(" + format_token(c) + ")"; });

  m.def("normalize", py::overload_cast<Complex, Complex>(&normalize), py::arg("a"), py::arg("b"));
  m.def("alive_probability", &alive_probability);

  py::enum_<Boundary>(m, "Boundary").value("FIXED_DEAD", Boundary::kFixedDead).value("TORUS", Boundary::kTorus);

  py::class_<Grid>(m, "Grid")
      .def(py::init<int, int, Boundary>(), py::arg("width"), py::arg("height"),
           py::arg("boundary") = Boundary::kFixedDead)
      .def_static("from_rows", &grid_from_rows, py::arg("rows"), py::arg("boundary") = Boundary::kFixedDead)
      .def_property_readonly("width", &Grid::width)
      .def_property_readonly("height", &Grid::height)
      .def_property_readonly("boundary", &Grid::boundary)
      .def("at", &Grid::at, py::arg("x"), py::arg("y"))
      .def("set", &Grid::set, py::arg("x"), py::arg("y"), py::arg("cell"))
      .def("with_boundary", &Grid::with_boundary)
      .def("total_alive_probability", &Grid::total_alive_probability)
      .def("max_alive_probability", &Grid::max_alive_probability)
      .def("probabilities", &probabilities)
      .def(py::self == py::self);

  m.def("rotate_global_phase", &rotate_global_phase, py::arg("grid"), py::arg("theta"));

  py::class_<PatternDocument>(m, "PatternDocument")
      .def_readwrite("version", &PatternDocument::version)
      .def_readwrite("grid", &PatternDocument::grid)
      .def_property(
          "name", [](const PatternDocument& d) { return d.metadata.name; },
          [](PatternDocument& d, std::optional<std::string> v) { d.metadata.name = std::move(v); })
      .def_property(
          "comment", [](const PatternDocument& d) { return d.metadata.comment; },
          [](PatternDocument& d, std::optional<std::string> v) { d.metadata.comment = std::move(v); });

  m.def("parse_pattern", [](const std::string& text) { return parse_pattern(text); }, py::arg("text"));
  m.def("load_pattern", &load_pattern, py::arg("path"));
  m.def("serialize_pattern", &serialize_pattern, py::arg("doc"));

  py::enum_<WeightConvention>(m, "WeightConvention")
      .value("SOFT_DEATH", WeightConvention::kSoftDeath)
      .value("HARD_DEATH", WeightConvention::kHardDeath);

  py::class_<StepConfig>(m, "StepConfig")
      .def(py::init([](bool canonicalize, double threshold, WeightConvention w, unsigned threads) {
             StepConfig c{canonicalize, threshold, w, threads};
             c.validate();
             return c;
           }),
           py::arg("canonicalize_dead_phase") = false, py::arg("dead_threshold") = 1e-6,
           py::arg("weights") = WeightConvention::kSoftDeath, py::arg("threads") = 0u)
      .def_readwrite("canonicalize_dead_phase", &StepConfig::canonicalize_dead_phase)
      .def_readwrite("dead_threshold", &StepConfig::dead_threshold)
      .def_readwrite("weights", &StepConfig::weights)
      .def_readwrite("threads", &StepConfig::threads);

  py::class_<NeighborSum>(m, "NeighborSum")
      .def_static("from_alpha", &NeighborSum::from_alpha)
      .def_readonly("alpha", &NeighborSum::alpha)
      .def_readonly("magnitude", &NeighborSum::magnitude)
      .def_readonly("phase", &NeighborSum::phase);

  py::class_<OperatorWeights>(m, "OperatorWeights")
      .def_readonly("birth", &OperatorWeights::birth)
      .def_readonly("survival", &OperatorWeights::survival)
      .def_readonly("death", &OperatorWeights::death);

  m.def("operator_weights", &operator_weights, py::arg("A"),
        py::arg("convention") = WeightConvention::kSoftDeath);
  m.def("neighbor_sum", &neighbor_sum, py::arg("grid"), py::arg("x"), py::arg("y"));
  m.def("step_cell", &step_cell, py::arg("cell"), py::arg("neighbors"), py::arg("config") = StepConfig{});
  m.def("step_grid", &step_grid, py::arg("grid"), py::arg("config") = StepConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("dual_step_grid", &dual_step_grid, py::arg("grid"), py::arg("config") = StepConfig{},
        py::call_guard<py::gil_scoped_release>());

  py::enum_<Verdict>(m, "Verdict")
      .value("DEAD", Verdict::kDead)
      .value("STILL_LIFE", Verdict::kStillLife)
      .value("OSCILLATOR", Verdict::kOscillator)
      .value("TRANSLATING", Verdict::kTranslating)
      .value("UNRESOLVED", Verdict::kUnresolved);

  py::class_<FateReport>(m, "FateReport")
      .def_readonly("verdict", &FateReport::verdict)
      .def_readonly("generation", &FateReport::generation)
      .def_readonly("period", &FateReport::period)
      .def_readonly("dx", &FateReport::dx)
      .def_readonly("dy", &FateReport::dy)
      .def_readonly("generations_run", &FateReport::generations_run)
      .def_readonly("max_alive_probability_final", &FateReport::max_alive_probability_final)
      .def_readonly("live_cell_count_history", &FateReport::live_cell_count_history)
      .def_readonly("touched_border", &FateReport::touched_border)
      .def("to_json", &cli::fate_report_json);

  py::enum_<DistanceMode>(m, "DistanceMode")
      .value("PROBABILITY", DistanceMode::kProbability)
      .value("PHASE_SENSITIVE", DistanceMode::kPhaseSensitive);

  m.def("grid_distance", &grid_distance, py::arg("a"), py::arg("b"), py::arg("mode") = DistanceMode::kProbability);
  m.def(
      "classify",
      [](const Grid& g, const StepConfig& cfg, int max_gen, double tol, DistanceMode mode) {
        return classify(g, cfg, {max_gen, tol, mode});
      },
      py::arg("grid"), py::arg("config") = StepConfig{}, py::arg("max_gen") = 200, py::arg("tol") = 1e-6,
      py::arg("distance") = DistanceMode::kProbability, py::call_guard<py::gil_scoped_release>());

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("phases", &SweepResult::phases)
      .def_readonly("fates", &SweepResult::fates)
      .def_readonly("critical_angle_estimate", &SweepResult::critical_angle_estimate)
      .def("to_csv", &cli::sweep_csv);

  m.def("linspace", &linspace, py::arg("start"), py::arg("end"), py::arg("count"));
  m.def(
      "sweep_phase",
      [](const PatternDocument& doc, int x, int y, std::vector<double> phases, const StepConfig& cfg, int max_gen,
         double tol) { return sweep_phase(doc, x, y, phases, cfg, {max_gen, tol, DistanceMode::kProbability}); },
      py::arg("doc"), py::arg("x"), py::arg("y"), py::arg("phases"), py::arg("config") = StepConfig{},
      py::arg("max_gen") = 200, py::arg("tol") = 1e-6, py::call_guard<py::gil_scoped_release>());

  py::class_<BurnMeasurement>(m, "BurnMeasurement")
      .def_readonly("rate", &BurnMeasurement::rate)
      .def_property_readonly("axis", [](const BurnMeasurement& b) { return b.axis == Axis::kX ? "x" : "y"; })
      .def_readonly("burn_generations", &BurnMeasurement::burn_generations)
      .def_readonly("died_at", &BurnMeasurement::died_at)
      .def_readonly("lower_edge", &BurnMeasurement::lower_edge)
      .def_readonly("upper_edge", &BurnMeasurement::upper_edge);

  m.def("measure_burn", &measure_burn, py::arg("doc"), py::arg("config") = StepConfig{}, py::arg("max_gen") = 200);

  m.def("render_ascii", &render_ascii, py::arg("grid"));
  m.def("render_csv", &render_csv, py::arg("grid"));
  m.def(
      "render_ppm",
      [](const Grid& g, int pixel_size) {
        const auto bytes = render_ppm(g, {RenderMode::kImagePpm, pixel_size});
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      },
      py::arg("grid"), py::arg("pixel_size") = 8);

  m.def(
      "oracle_check",
      [](const Grid& g, int generations, const StepConfig& cfg) -> std::optional<std::tuple<int, int, int>> {
        const auto d = cli::oracle_check(g, generations, cfg);
        if (!d) return std::nullopt;
        return std::make_tuple(d->generation, d->x, d->y);
      },
      py::arg("grid"), py::arg("generations"), py::arg("config") = StepConfig{});
}
