#include "sqlife/state.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace sqlife {

CellState CellState::from_phasor(double amplitude, double phase_rad) {
  const double amp = std::clamp(amplitude, 0.0, 1.0);
  return {std::polar(amp, phase_rad), Complex{std::sqrt(std::max(0.0, 1.0 - amp * amp)), 0.0}};
}

CellState normalize(Complex raw_a, Complex raw_b) {
  const double n = std::sqrt(std::norm(raw_a) + std::norm(raw_b));
  if (!(n >= kZeroNorm)) return CellState::dead();
  return {raw_a / n, raw_b / n};
}

std::string_view to_string(Boundary b) { return b == Boundary::kTorus ? "torus" : "fixed"; }

Boundary parse_boundary(std::string_view s) {
  if (s == "fixed") return Boundary::kFixedDead;
  if (s == "torus") return Boundary::kTorus;
  throw std::invalid_argument("unknown boundary '" + std::string(s) + "' (expected fixed or torus)");
}

Grid::Grid(int width, int height, Boundary boundary)
    : Grid(width, height, boundary,
           std::vector<CellState>(static_cast<std::size_t>(std::max(width, 0)) *
                                      static_cast<std::size_t>(std::max(height, 0)),
                                  CellState::dead())) {}

Grid::Grid(int width, int height, Boundary boundary, std::vector<CellState> cells)
    : width_(width), height_(height), boundary_(boundary), cells_(std::move(cells)) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("grid dimensions must be positive");
  if (cells_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw std::invalid_argument("cell count does not match width*height");
  for (const auto& c : cells_)
    if (!c.is_normalized()) throw std::invalid_argument("cell is not normalized");
}

void Grid::set(int x, int y, const CellState& c) {
  if (!in_bounds(x, y)) throw std::out_of_range("cell coordinates out of range");
  if (!c.is_normalized()) throw std::invalid_argument("cell is not normalized");
  cells_[index(x, y)] = c;
}

Grid Grid::with_boundary(Boundary b) const {
  Grid out = *this;
  out.boundary_ = b;
  return out;
}

double Grid::total_alive_probability() const {
  double sum = 0.0;
  for (const auto& c : cells_) sum += alive_probability(c);
  return sum;
}

double Grid::max_alive_probability() const {
  double m = 0.0;
  for (const auto& c : cells_) m = std::max(m, alive_probability(c));
  return m;
}

Grid swapped(const Grid& g) {
  std::vector<CellState> cells(g.cells().begin(), g.cells().end());
  for (auto& c : cells) c = swapped(c);
  return Grid(g.width(), g.height(), g.boundary(), std::move(cells));
}

Grid rotate_global_phase(const Grid& g, double theta) {
  const Complex r = std::polar(1.0, theta);
  std::vector<CellState> cells(g.cells().begin(), g.cells().end());
  for (auto& c : cells) c = {c.a * r, c.b * r};
  return Grid(g.width(), g.height(), g.boundary(), std::move(cells));
}

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         what),
      line_(line),
      column_(column) {}

namespace {

std::optional<double> parse_decimal(std::string_view s) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Splits on ASCII whitespace and remembers 1-based columns.
struct Word {
  std::string_view text;
  int column;
};

std::vector<Word> split_words(std::string_view line) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) words.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return words;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_positive_int(const Word& w, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(w.text.data(), w.text.data() + w.text.size(), v);
  if (ec != std::errc{} || ptr != w.text.data() + w.text.size() || v <= 0)
    throw ParseError(line, w.column, "expected a positive integer, got '" + std::string(w.text) + "'");
  return v;
}

}  // namespace

CellState parse_token(std::string_view token) {
  using std::numbers::pi;
  if (token == ".") return CellState::dead();
  if (token == ">") return CellState::alive();
  if (token == "<") return {Complex{-1.0, 0.0}, Complex{0.0, 0.0}};
  if (token == "^") return {Complex{0.0, 1.0}, Complex{0.0, 0.0}};
  if (token == "v") return {Complex{0.0, -1.0}, Complex{0.0, 0.0}};

  const auto at = token.find('@');
  if (at == std::string_view::npos) throw std::invalid_argument("unknown token '" + std::string(token) + "'");
  const auto amp = parse_decimal(token.substr(0, at));
  const auto deg = parse_decimal(token.substr(at + 1));
  if (!amp || !deg) throw std::invalid_argument("malformed amplitude token '" + std::string(token) + "'");
  if (*amp < 0.0 || *amp > 1.0)
    throw std::invalid_argument("amplitude out of [0,1] in token '" + std::string(token) + "'");
  if (*deg <= -360.0 || *deg >= 360.0)
    throw std::invalid_argument("phase out of (-360,360) in token '" + std::string(token) + "'");
  return CellState::from_phasor(*amp, *deg * pi / 180.0);
}

PatternDocument parse_pattern(std::string_view text) {
  PatternDocument doc;
  std::optional<int> version;
  std::optional<std::pair<int, int>> size;
  Boundary boundary = Boundary::kFixedDead;
  bool in_cells = false;
  std::vector<CellState> cells;
  int rows_read = 0;
  std::vector<std::string> comments;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      auto c = trim(body.substr(1));
      if (c.starts_with("name:") && !doc.metadata.name) {
        doc.metadata.name = std::string(trim(c.substr(5)));
      } else {
        comments.emplace_back(c);
      }
      continue;
    }

    const auto words = split_words(line);
    if (in_cells) {
      if (rows_read == size->second)
        throw ParseError(line_no, words.front().column, "more rows than the declared height");
      if (static_cast<int>(words.size()) != size->first)
        throw ParseError(line_no, words.front().column,
                         "row has " + std::to_string(words.size()) + " tokens, expected " +
                             std::to_string(size->first));
      for (const auto& w : words) {
        try {
          cells.push_back(parse_token(w.text));
        } catch (const std::invalid_argument& e) {
          throw ParseError(line_no, w.column, e.what());
        }
      }
      ++rows_read;
      continue;
    }

    const auto& key = words.front();
    if (key.text == "version") {
      if (words.size() != 2) throw ParseError(line_no, key.column, "expected 'version <n>'");
      const int v = parse_positive_int(words[1], line_no);
      if (v != 1) throw ParseError(line_no, words[1].column, "unsupported version " + std::to_string(v));
      version = v;
    } else if (key.text == "size") {
      if (words.size() != 3) throw ParseError(line_no, key.column, "expected 'size <width> <height>'");
      size = {parse_positive_int(words[1], line_no), parse_positive_int(words[2], line_no)};
    } else if (key.text == "boundary") {
      if (words.size() != 2) throw ParseError(line_no, key.column, "expected 'boundary fixed|torus'");
      try {
        boundary = parse_boundary(words[1].text);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, words[1].column, e.what());
      }
    } else if (key.text == "cells") {
      if (words.size() != 1) throw ParseError(line_no, words[1].column, "unexpected text after 'cells'");
      if (!version) throw ParseError(line_no, key.column, "missing 'version' header");
      if (!size) throw ParseError(line_no, key.column, "missing 'size' header");
      in_cells = true;
      cells.reserve(static_cast<std::size_t>(size->first) * static_cast<std::size_t>(size->second));
    } else {
      throw ParseError(line_no, key.column, "unknown keyword '" + std::string(key.text) + "'");
    }
  }

  if (!in_cells) throw ParseError(line_no, 1, "missing 'cells' section");
  if (rows_read != size->second)
    throw ParseError(line_no, 1,
                     "expected " + std::to_string(size->second) + " rows, got " + std::to_string(rows_read));

  doc.version = *version;
  doc.grid = Grid(size->first, size->second, boundary, std::move(cells));
  if (!comments.empty()) {
    std::string joined;
    for (std::size_t i = 0; i < comments.size(); ++i) {
      if (i) joined += '\n';
      joined += comments[i];
    }
    doc.metadata.comment = std::move(joined);
  }
  return doc;
}

PatternDocument load_pattern(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open pattern file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pattern(ss.str());
}

std::string format_token(const CellState& c) {
  const double re = c.a.real();
  const double im = c.a.imag();
  if (re == 0.0 && im == 0.0) return ".";
  if (im == 0.0 && re == 1.0) return ">";
  if (im == 0.0 && re == -1.0) return "<";
  if (re == 0.0 && im == 1.0) return "^";
  if (re == 0.0 && im == -1.0) return "v";

  const double amp = std::min(std::abs(c.a), 1.0);
  const double deg = std::arg(c.a) * 180.0 / std::numbers::pi;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g@%.17g", amp, deg);
  return buf;
}

std::string serialize_pattern(const PatternDocument& doc) {
  std::string out;
  if (doc.metadata.name) out += "# name: " + *doc.metadata.name + "\n";
  if (doc.metadata.comment) {
    std::string_view rest = *doc.metadata.comment;
    while (true) {
      const auto nl = rest.find('\n');
      out += "# ";
      out += rest.substr(0, nl);
      out += '\n';
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
    }
  }
  const Grid& g = doc.grid;
  out += "version " + std::to_string(doc.version) + "\n";
  out += "size " + std::to_string(g.width()) + " " + std::to_string(g.height()) + "\n";
  out += "boundary " + std::string(to_string(g.boundary())) + "\n";
  out += "cells\n";
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      if (x) out += ' ';
      out += format_token(g.at(x, y));
    }
    out += '\n';
  }
  return out;
}

}  // namespace sqlife
