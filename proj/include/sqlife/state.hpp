#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sqlife {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-9;
/// Below this norm an operator mixture is treated as total cancellation.
inline constexpr double kZeroNorm = 1e-9;

/// One cell: a|alive> + b|dead> with |a|^2 + |b|^2 = 1.
struct CellState {
  Complex a{0.0, 0.0};
  Complex b{1.0, 0.0};

  static constexpr CellState dead() { return {Complex{0.0, 0.0}, Complex{1.0, 0.0}}; }
  static constexpr CellState alive() { return {Complex{1.0, 0.0}, Complex{0.0, 0.0}}; }

  /// Alive amplitude with the given phase; b is the nonnegative real remainder.
  static CellState from_phasor(double amplitude, double phase_rad);

  bool is_normalized(double tol = kNormTolerance) const {
    return std::abs(std::norm(a) + std::norm(b) - 1.0) <= tol;
  }

  friend bool operator==(const CellState&, const CellState&) = default;
};

/// An unnormalized (a, b) pair produced by an operator.
struct RawPair {
  Complex a;
  Complex b;
};

CellState normalize(Complex raw_a, Complex raw_b);
inline CellState normalize(const RawPair& raw) { return normalize(raw.a, raw.b); }

inline double alive_probability(const CellState& c) { return std::norm(c.a); }

/// Exchanges the alive and dead coefficients.
inline CellState swapped(const CellState& c) { return {c.b, c.a}; }

enum class Boundary { kFixedDead, kTorus };

std::string_view to_string(Boundary b);
Boundary parse_boundary(std::string_view s);

/// Rectangular array of cells, row-major, plus the off-grid policy.
class Grid {
 public:
  Grid(int width, int height, Boundary boundary = Boundary::kFixedDead);
  Grid(int width, int height, Boundary boundary, std::vector<CellState> cells);

  int width() const { return width_; }
  int height() const { return height_; }
  Boundary boundary() const { return boundary_; }
  std::size_t size() const { return cells_.size(); }

  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  const CellState& at(int x, int y) const { return cells_[index(x, y)]; }
  void set(int x, int y, const CellState& c);

  std::span<const CellState> cells() const { return cells_; }

  Grid with_boundary(Boundary b) const;

  /// Sum of |a|^2 over all cells.
  double total_alive_probability() const;
  double max_alive_probability() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  Boundary boundary_;
  std::vector<CellState> cells_;
};

/// Applies `swapped` to every cell.
Grid swapped(const Grid& g);

/// Multiplies every coefficient by e^{i theta}.
Grid rotate_global_phase(const Grid& g, double theta);

struct PatternMetadata {
  std::optional<std::string> name;
  std::optional<std::string> comment;
};

struct PatternDocument {
  int version = 1;
  Grid grid{1, 1};
  PatternMetadata metadata;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses the `.sqp` pattern format.
PatternDocument parse_pattern(std::string_view text);
PatternDocument load_pattern(const std::string& path);

/// Parses a single cell token (`.`, `>`, `<`, `^`, `v` or `amp@deg`).
CellState parse_token(std::string_view token);

std::string serialize_pattern(const PatternDocument& doc);
std::string format_token(const CellState& c);

}  // namespace sqlife
