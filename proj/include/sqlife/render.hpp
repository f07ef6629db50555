#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqlife/state.hpp"

namespace sqlife {

enum class RenderMode { kAsciiArrows, kImagePpm, kCsv };

struct RenderOptions {
  RenderMode mode = RenderMode::kAsciiArrows;
  int cell_pixel_size = 8;
};

RenderMode parse_render_mode(std::string_view s);
/// File extension used for frames in each mode ("txt", "ppm", "csv").
std::string_view frame_extension(RenderMode mode);

/// One glyph per cell, one line per row. Full-amplitude cells (|a| >= 0.9)
/// use → ↗ ↑ ↖ ← ↙ ↓ ↘, partial ones the hollow set ⇨ ⬀ ⇧ ⬁ ⇦ ⬃ ⇩ ⬂,
/// chosen by phase rounded to the nearest multiple of pi/4. Empty cells are '.'.
std::string render_ascii(const Grid& g);

/// Binary P6 image; each cell is a solid square with hue from the phase and
/// value |a|^2 at full saturation.
std::vector<std::uint8_t> render_ppm(const Grid& g, const RenderOptions& opts = {RenderMode::kImagePpm, 8});

/// `x,y,re_a,im_a,re_b,im_b,p_alive`, 17 significant digits.
std::string render_csv(const Grid& g);

/// Rebuilds a grid from render_csv output. Throws std::invalid_argument on malformed input.
Grid parse_csv_grid(std::string_view csv, Boundary boundary = Boundary::kFixedDead);

}  // namespace sqlife
