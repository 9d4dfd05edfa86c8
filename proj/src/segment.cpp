#include "segdoc/segment.hpp"

#include "segdoc/preprocess.hpp"

#include <stdexcept>
#include <vector>

namespace segdoc::segmentation {

void SegmentParams::validate() const {
  if (row_noise_threshold < 0 || col_noise_threshold < 0 || min_gap_rows < 0 ||
      min_word_gap_cols < 0)
    throw std::invalid_argument("segment params must be non-negative");
  if (char_separator_max_count < 1)
    throw std::invalid_argument("char_separator_max_count must be at least 1");
}

std::int64_t SegmentTree::word_count() const {
  std::int64_t n = 0;
  for (const auto& line : lines) n += std::int64_t(line.words.size());
  return n;
}

std::int64_t SegmentTree::glyph_count() const {
  std::int64_t n = 0;
  for (const auto& line : lines)
    for (const auto& word : line.words) n += std::int64_t(word.glyphs.size());
  return n;
}

namespace {

struct Run {
  int first = 0;  // inclusive
  int last = 0;   // inclusive
};

// Maximal runs of profile positions with count above the noise floor;
// runs separated by a gap narrower than min_gap are merged.
std::vector<Run> profile_runs(const Eigen::ArrayXi& counts, int noise, int min_gap) {
  std::vector<Run> runs;
  for (int i = 0; i < counts.size(); ++i) {
    if (counts[i] <= noise) continue;
    if (!runs.empty() && i - runs.back().last - 1 < min_gap) {
      runs.back().last = i;
    } else if (!runs.empty() && runs.back().last == i - 1) {
      runs.back().last = i;
    } else {
      runs.push_back({i, i});
    }
  }
  return runs;
}

// Tight row extent of the ink inside a column span of img.
bool ink_row_extent(const BinaryImage& img, int c0, int c1, int* r0, int* r1) {
  Eigen::ArrayXi rows =
      img.middleCols(c0, c1 - c0 + 1).rowwise().count().cast<int>();
  *r0 = -1;
  for (int r = 0; r < rows.size(); ++r) {
    if (rows[r] > 0) {
      if (*r0 < 0) *r0 = r;
      *r1 = r;
    }
  }
  return *r0 >= 0;
}

// Tight column extent of the ink inside a row span of img.
bool ink_col_extent(const BinaryImage& img, int r0, int r1, int* c0, int* c1) {
  Eigen::ArrayXi cols =
      img.middleRows(r0, r1 - r0 + 1).colwise().count().cast<int>().transpose();
  *c0 = -1;
  for (int c = 0; c < cols.size(); ++c) {
    if (cols[c] > 0) {
      if (*c0 < 0) *c0 = c;
      *c1 = c;
    }
  }
  return *c0 >= 0;
}

}  // namespace

std::vector<LineSegment> segment_lines(const BinaryImage& page, const SegmentParams& params) {
  params.validate();
  std::vector<LineSegment> lines;
  const std::vector<Run> bands =
      profile_runs(row_profile(page).counts, params.row_noise_threshold, params.min_gap_rows);
  lines.reserve(bands.size());
  for (const Run& band : bands) {
    int c0 = 0, c1 = 0;
    if (!ink_col_extent(page, band.first, band.last, &c0, &c1)) continue;
    LineSegment line;
    line.bbox = BoundingBox::from_extents(c0, band.first, c1, band.last);
    line.image = crop(page, line.bbox);
    line.index = int(lines.size());
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<WordSegment> segment_words(const LineSegment& line, const SegmentParams& params) {
  params.validate();
  std::vector<WordSegment> words;
  const std::vector<Run> spans = profile_runs(col_profile(line.image).counts,
                                              params.col_noise_threshold,
                                              params.min_word_gap_cols);
  words.reserve(spans.size());
  for (const Run& span : spans) {
    int r0 = 0, r1 = 0;
    if (!ink_row_extent(line.image, span.first, span.last, &r0, &r1)) continue;
    WordSegment word;
    BoundingBox local = BoundingBox::from_extents(span.first, r0, span.last, r1);
    word.image = crop(line.image, local);
    word.bbox = local;
    word.bbox.x += line.bbox.x;
    word.bbox.y += line.bbox.y;
    word.line_index = line.index;
    word.index = int(words.size());
    words.push_back(std::move(word));
  }
  return words;
}

std::vector<GlyphSegment> segment_chars(const WordSegment& word, const SegmentParams& params) {
  params.validate();
  std::vector<GlyphSegment> glyphs;
  // Columns the thinned word crosses at most char_separator_max_count times
  // separate glyphs: blank inter-glyph columns and columns carrying only the
  // thinned header both qualify.
  const BinaryImage skeleton = preprocess::thin(word.image);
  const Eigen::ArrayXi counts = col_profile(skeleton).counts;
  std::vector<Run> spans;
  for (int c = 0; c < counts.size(); ++c) {
    if (counts[c] <= params.char_separator_max_count) continue;
    if (!spans.empty() && spans.back().last == c - 1)
      spans.back().last = c;
    else
      spans.push_back({c, c});
  }
  glyphs.reserve(spans.size());
  for (const Run& span : spans) {
    int r0 = 0, r1 = 0;
    if (!ink_row_extent(word.image, span.first, span.last, &r0, &r1)) continue;
    GlyphSegment glyph;
    BoundingBox local = BoundingBox::from_extents(span.first, r0, span.last, r1);
    glyph.image = crop(word.image, local);
    glyph.bbox = local;
    glyph.bbox.x += word.bbox.x;
    glyph.bbox.y += word.bbox.y;
    glyph.word_index = word.index;
    glyph.index = int(glyphs.size());
    glyphs.push_back(std::move(glyph));
  }
  return glyphs;
}

SegmentTree segment_page(const BinaryImage& page, const SegmentParams& params) {
  params.validate();
  SegmentTree tree;
  tree.page_width = int(page.cols());
  tree.page_height = int(page.rows());
  tree.params = params;
  tree.lines = segment_lines(page, params);
  for (LineSegment& line : tree.lines) {
    line.words = segment_words(line, params);
    for (WordSegment& word : line.words) word.glyphs = segment_chars(word, params);
  }
  return tree;
}

}  // namespace segdoc::segmentation
