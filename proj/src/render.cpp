#include "sqlife/render.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sqlife {

namespace {

constexpr double kEmpty = 1e-6;
constexpr double kFullAmplitude = 0.9;

// Index k covers phase k*pi/4, counter-clockwise from east.
constexpr std::array<std::string_view, 8> kFullGlyphs{"→", "↗", "↑", "↖", "←", "↙", "↓", "↘"};
constexpr std::array<std::string_view, 8> kPartialGlyphs{"⇨", "⬀", "⇧", "⬁", "⇦", "⬃", "⇩", "⬂"};

int octant(Complex a) {
  const double turns = std::arg(a) / (std::numbers::pi / 4.0);
  const int k = static_cast<int>(std::lround(turns));
  return ((k % 8) + 8) % 8;
}

std::array<std::uint8_t, 3> hsv_to_rgb(double hue_deg, double value) {
  const double h = hue_deg / 60.0;
  const int sector = static_cast<int>(std::floor(h)) % 6;
  const double f = h - std::floor(h);
  const double p = 0.0;
  const double q = value * (1.0 - f);
  const double t = value * f;
  double r = 0, g = 0, b = 0;
  switch (sector) {
    case 0: r = value, g = t, b = p; break;
    case 1: r = q, g = value, b = p; break;
    case 2: r = p, g = value, b = t; break;
    case 3: r = p, g = q, b = value; break;
    case 4: r = t, g = p, b = value; break;
    default: r = value, g = p, b = q; break;
  }
  auto byte = [](double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
  return {byte(r), byte(g), byte(b)};
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RenderMode parse_render_mode(std::string_view s) {
  if (s == "ascii") return RenderMode::kAsciiArrows;
  if (s == "ppm") return RenderMode::kImagePpm;
  if (s == "csv") return RenderMode::kCsv;
  throw std::invalid_argument("unknown format '" + std::string(s) + "' (expected ascii, ppm or csv)");
}

std::string_view frame_extension(RenderMode mode) {
  switch (mode) {
    case RenderMode::kAsciiArrows: return "txt";
    case RenderMode::kImagePpm: return "ppm";
    case RenderMode::kCsv: return "csv";
  }
  return "txt";
}

std::string render_ascii(const Grid& g) {
  std::string out;
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      const CellState& c = g.at(x, y);
      if (alive_probability(c) < kEmpty) {
        out += '.';
        continue;
      }
      const auto& glyphs = std::abs(c.a) >= kFullAmplitude ? kFullGlyphs : kPartialGlyphs;
      out += glyphs[static_cast<std::size_t>(octant(c.a))];
    }
    out += '\n';
  }
  return out;
}

std::vector<std::uint8_t> render_ppm(const Grid& g, const RenderOptions& opts) {
  if (opts.cell_pixel_size < 1) throw std::invalid_argument("cell_pixel_size must be at least 1");
  const int s = opts.cell_pixel_size;
  const int w = g.width() * s;
  const int h = g.height() * s;
  const std::string header = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);

  std::vector<std::array<std::uint8_t, 3>> colours(g.size());
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x) {
      const CellState& c = g.at(x, y);
      const double p = alive_probability(c);
      auto& rgb = colours[static_cast<std::size_t>(y) * g.width() + x];
      if (p < kEmpty) {
        rgb = {0, 0, 0};
        continue;
      }
      double hue = std::fmod(std::arg(c.a) * 180.0 / std::numbers::pi, 360.0);
      if (hue < 0.0) hue += 360.0;
      rgb = hsv_to_rgb(hue, p);
    }

  for (int py = 0; py < h; ++py)
    for (int px = 0; px < w; ++px) {
      const auto& rgb = colours[static_cast<std::size_t>(py / s) * g.width() + px / s];
      out.insert(out.end(), rgb.begin(), rgb.end());
    }
  return out;
}

std::string render_csv(const Grid& g) {
  std::string out = "x,y,re_a,im_a,re_b,im_b,p_alive\n";
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x) {
      const CellState& c = g.at(x, y);
      out += std::to_string(x) + ',' + std::to_string(y) + ',' + fmt17(c.a.real()) + ',' + fmt17(c.a.imag()) + ',' +
             fmt17(c.b.real()) + ',' + fmt17(c.b.imag()) + ',' + fmt17(alive_probability(c)) + '\n';
    }
  return out;
}

Grid parse_csv_grid(std::string_view csv, Boundary boundary) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) || line != "x,y,re_a,im_a,re_b,im_b,p_alive")
    throw std::invalid_argument("missing CSV header");

  struct Row {
    int x, y;
    CellState c;
  };
  std::vector<Row> rows;
  int max_x = -1, max_y = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 7> v{};
    std::size_t field = 0;
    std::string_view rest = line;
    while (field < v.size()) {
      const auto comma = rest.find(',');
      const auto tok = rest.substr(0, comma);
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v[field]);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw std::invalid_argument("bad CSV field: " + line);
      ++field;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (field != v.size()) throw std::invalid_argument("CSV row needs 7 fields: " + line);
    const Row r{static_cast<int>(v[0]), static_cast<int>(v[1]), {Complex{v[2], v[3]}, Complex{v[4], v[5]}}};
    max_x = std::max(max_x, r.x);
    max_y = std::max(max_y, r.y);
    rows.push_back(r);
  }
  if (rows.empty()) throw std::invalid_argument("CSV has no cells");
  Grid g(max_x + 1, max_y + 1, boundary);
  if (rows.size() != g.size()) throw std::invalid_argument("CSV does not cover a full rectangle");
  for (const auto& r : rows) g.set(r.x, r.y, r.c);
  return g;
}

}  // namespace sqlife
