#pragma once

#include "segdoc/raster.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace segdoc::synth {

struct SpecInfeasible : Error {
  using Error::Error;
};

struct IntRange {
  int min = 0;
  int max = 0;
};

/// Generator recipe for one synthetic page. Words are rows of glyph bodies;
/// a regular word joins its bodies with a full-width header band, a digit
/// word places disconnected bodies with no header. All geometry is sampled
/// deterministically from the seed.
struct PageSpec {
  std::uint64_t seed = 7;
  int page_width = 800;
  int page_height = 600;
  int line_count = 6;
  IntRange words_per_line{3, 5};
  IntRange glyphs_per_word{2, 5};
  IntRange glyph_width{12, 20};
  IntRange glyph_height{16, 28};
  int header_thickness = 3;
  IntRange inter_line_gap{12, 20};
  IntRange inter_word_gap{10, 16};
  IntRange intra_word_gap{2, 4};
  double digit_word_probability = 0.0;
  double detached_bar_probability = 0.0;  // extra unconnected vertical bar per glyph
  double skew_angle_deg = 0.0;
  int noise_speck_count = 0;
  int margin = 12;

  void validate() const;  // throws std::invalid_argument
};

struct GlyphTruth {
  int x0 = 0;  // inclusive page-coordinate column span of the glyph body
  int x1 = 0;
};

struct WordTruth {
  int x0 = 0;  // inclusive column range of the word's ink
  int x1 = 0;
  bool digit = false;
  std::vector<GlyphTruth> glyphs;
};

struct LineTruth {
  int y0 = 0;  // inclusive row range of the line's ink
  int y1 = 0;
  std::vector<WordTruth> words;
};

/// Ground truth captured before any skew is applied.
struct Manifest {
  int page_width = 0;
  int page_height = 0;
  double skew_angle_deg = 0.0;
  std::vector<std::pair<int, int>> specks;  // (x, y)
  std::vector<LineTruth> lines;

  std::int64_t line_count() const { return std::int64_t(lines.size()); }
  std::int64_t word_count() const;
  std::int64_t glyph_count() const;
};

/// Render a page and its manifest. The manifest stores pre-rotation truth;
/// when spec.skew_angle_deg is nonzero the returned image is the rotated
/// page (canvas enlarged accordingly). Throws SpecInfeasible when the
/// requested content cannot fit the page.
std::pair<BinaryImage, Manifest> generate(const PageSpec& spec);

}  // namespace segdoc::synth
