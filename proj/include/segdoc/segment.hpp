#pragma once

#include "segdoc/raster.hpp"

#include <vector>

namespace segdoc::segmentation {

/// Gap/separator thresholds for the profile scans. The defaults encode the
/// strict reading: any row or column without ink separates segments, and a
/// thinned column crossed by at most one pixel separates characters.
struct SegmentParams {
  int row_noise_threshold = 0;    // rows with count <= this are gaps
  int col_noise_threshold = 0;    // columns with count <= this are gaps
  int min_gap_rows = 1;           // merge line bands split by narrower gaps
  int min_word_gap_cols = 1;      // merge word spans split by narrower gaps
  int char_separator_max_count = 1;

  void validate() const;

  friend bool operator==(const SegmentParams&, const SegmentParams&) = default;
};

struct GlyphSegment {
  BoundingBox bbox;   // page coordinates
  BinaryImage image;  // crop of the unthinned word
  int word_index = 0;
  int index = 0;
};

struct WordSegment {
  BoundingBox bbox;  // page coordinates
  BinaryImage image;
  int line_index = 0;
  int index = 0;
  std::vector<GlyphSegment> glyphs;
};

struct LineSegment {
  BoundingBox bbox;  // page coordinates
  BinaryImage image;
  int index = 0;
  std::vector<WordSegment> words;
};

/// Preprocessing settings the page went through before segmentation.
struct Provenance {
  int threshold_level = -1;  // -1: page arrived already binary
  int denoise_min_area = 0;
  bool deskew = false;
  double skew_angle_deg = 0.0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// page -> lines -> words -> glyphs, fully ordered top-to-bottom then
/// left-to-right. Every child box is contained in its parent box.
struct SegmentTree {
  int page_width = 0;
  int page_height = 0;
  SegmentParams params;
  Provenance provenance;
  std::vector<LineSegment> lines;

  std::int64_t line_count() const { return std::int64_t(lines.size()); }
  std::int64_t word_count() const;
  std::int64_t glyph_count() const;
};

/// Horizontal-profile line extraction: maximal runs of rows whose ink count
/// exceeds the noise threshold become text bands (bands closer than
/// min_gap_rows merge); each band yields the tight box of its ink.
std::vector<LineSegment> segment_lines(const BinaryImage& page,
                                       const SegmentParams& params = {});

/// Vertical-profile word extraction within one line.
std::vector<WordSegment> segment_words(const LineSegment& line,
                                       const SegmentParams& params = {});

/// Character extraction: thin the word, treat columns whose thinned count
/// is at most char_separator_max_count as separators, and box the runs in
/// between using the original (unthinned) ink.
std::vector<GlyphSegment> segment_chars(const WordSegment& word,
                                        const SegmentParams& params = {});

/// Full page pipeline: lines, then words per line, then glyphs per word.
SegmentTree segment_page(const BinaryImage& page, const SegmentParams& params = {});

}  // namespace segdoc::segmentation
