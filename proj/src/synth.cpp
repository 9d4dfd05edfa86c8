#include "segdoc/synth.hpp"

#include "segdoc/preprocess.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace segdoc::synth {

namespace {

// All randomness flows through these two helpers so generated pages are
// reproducible across standard libraries (mt19937_64 itself is pinned by
// the standard; distributions are not).
int rand_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + int(rng() % std::uint64_t(hi - lo + 1));
}

int rand_int(std::mt19937_64& rng, const IntRange& r) { return rand_int(rng, r.min, r.max); }

bool rand_chance(std::mt19937_64& rng, double p) {
  return double(rng() >> 11) * 0x1.0p-53 < p;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("page spec: ") + what);
}

void check_range(const IntRange& r, int floor, const char* what) {
  require(r.min <= r.max && r.min >= floor, what);
}

struct Canvas {
  BinaryImage& img;

  void hline(int y, int x0, int x1) {
    for (int x = x0; x <= x1; ++x) img(y, x) = true;
  }
  void vline(int x, int y0, int y1) {
    for (int y = y0; y <= y1; ++y) img(y, x) = true;
  }
};

// Glyph bodies are one-pixel stroke figures. Each spans the full cell in
// both directions and carries at least one full-height vertical, so every
// cell row and column holds ink and the vertical survives thinning with a
// per-column count above the separator limit.
void draw_body(Canvas& canvas, std::mt19937_64& rng, int x0, int y0, int x1, int y1) {
  const int mid_x = (x0 + x1) / 2;
  const int mid_y = (y0 + y1) / 2;
  switch (rand_int(rng, 0, 4)) {
    case 0:  // ring
      canvas.hline(y0, x0, x1);
      canvas.hline(y1, x0, x1);
      canvas.vline(x0, y0, y1);
      canvas.vline(x1, y0, y1);
      break;
    case 1:  // two legs under a lintel
      canvas.hline(y0, x0, x1);
      canvas.vline(x0, y0, y1);
      canvas.vline(x1, y0, y1);
      break;
    case 2:  // cross
      canvas.hline(mid_y, x0, x1);
      canvas.vline(mid_x, y0, y1);
      break;
    case 3:  // tee
      canvas.hline(y0, x0, x1);
      canvas.vline(mid_x, y0, y1);
      break;
    default:  // ell
      canvas.hline(y1, x0, x1);
      canvas.vline(x0, y0, y1);
      break;
  }
}

}  // namespace

void PageSpec::validate() const {
  require(page_width >= 1 && page_height >= 1, "page must be at least 1x1");
  require(line_count >= 0, "line count must be non-negative");
  require(margin >= 0, "margin must be non-negative");
  require(header_thickness >= 1, "header thickness must be at least 1");
  check_range(words_per_line, 1, "words per line must be a range with min >= 1");
  check_range(glyphs_per_word, 1, "glyphs per word must be a range with min >= 1");
  check_range(glyph_width, 3, "glyph width must be a range with min >= 3");
  check_range(glyph_height, 3, "glyph height must be a range with min >= 3");
  check_range(inter_line_gap, 1, "inter-line gap must be a range with min >= 1");
  check_range(inter_word_gap, 1, "inter-word gap must be a range with min >= 1");
  check_range(intra_word_gap, 1, "intra-word gap must be a range with min >= 1");
  require(digit_word_probability >= 0 && digit_word_probability <= 1,
          "digit word probability must be in [0,1]");
  require(detached_bar_probability >= 0 && detached_bar_probability <= 1,
          "detached bar probability must be in [0,1]");
  require(noise_speck_count >= 0, "speck count must be non-negative");
}

std::int64_t Manifest::word_count() const {
  std::int64_t n = 0;
  for (const auto& line : lines) n += std::int64_t(line.words.size());
  return n;
}

std::int64_t Manifest::glyph_count() const {
  std::int64_t n = 0;
  for (const auto& line : lines)
    for (const auto& word : line.words) n += std::int64_t(word.glyphs.size());
  return n;
}

std::pair<BinaryImage, Manifest> generate(const PageSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);

  BinaryImage page = BinaryImage::Constant(spec.page_height, spec.page_width, false);
  Canvas canvas{page};
  Manifest manifest;
  manifest.page_width = spec.page_width;
  manifest.page_height = spec.page_height;
  manifest.skew_angle_deg = spec.skew_angle_deg;

  const int right_limit = spec.page_width - 1 - spec.margin;
  const int bottom_limit = spec.page_height - 1 - spec.margin;

  int y = spec.margin;
  for (int li = 0; li < spec.line_count; ++li) {
    if (li > 0) y += rand_int(rng, spec.inter_line_gap);
    // One body height per line keeps every word the same height, so the
    // line's ink occupies exactly [y, y1] in every column it touches.
    const int body_h = rand_int(rng, spec.glyph_height);
    const int line_h = spec.header_thickness + body_h;
    const int y1 = y + line_h - 1;
    if (y1 > bottom_limit)
      throw SpecInfeasible("line " + std::to_string(li) + " runs past row " +
                           std::to_string(bottom_limit));

    LineTruth line;
    line.y0 = y;
    line.y1 = y1;

    const int word_count = rand_int(rng, spec.words_per_line);
    int x = spec.margin;
    for (int wi = 0; wi < word_count; ++wi) {
      if (wi > 0) x += rand_int(rng, spec.inter_word_gap);
      WordTruth word;
      word.digit = rand_chance(rng, spec.digit_word_probability);
      word.x0 = x;

      const int glyph_count = rand_int(rng, spec.glyphs_per_word);
      for (int gi = 0; gi < glyph_count; ++gi) {
        if (gi > 0) x += rand_int(rng, spec.intra_word_gap);
        const int gw = rand_int(rng, spec.glyph_width);
        const int cx1 = x + gw - 1;
        if (cx1 > right_limit)
          throw SpecInfeasible("line " + std::to_string(li) + " word " +
                               std::to_string(wi) + " runs past column " +
                               std::to_string(right_limit));

        // A digit word has no header, so its bodies get the full height.
        const int body_top = word.digit ? y : y + spec.header_thickness;
        // Detached vertical bar: the cell's last column, kept clear of the
        // body by one blank column and of the header by one blank row.
        const bool bar = !word.digit && gw >= 5 &&
                         rand_chance(rng, spec.detached_bar_probability);
        draw_body(canvas, rng, x, body_top, bar ? cx1 - 2 : cx1, y1);
        if (bar) canvas.vline(cx1, body_top + 1, y1);

        word.glyphs.push_back({x, cx1});
        x = cx1 + 1;
      }
      word.x1 = x - 1;
      if (!word.digit) {
        for (int r = line.y0; r < line.y0 + spec.header_thickness; ++r)
          canvas.hline(r, word.x0, word.x1);
      }
      line.words.push_back(std::move(word));
    }
    manifest.lines.push_back(std::move(line));
    y = y1 + 1;
  }

  for (int i = 0; i < spec.noise_speck_count; ++i) {
    const int sx = rand_int(rng, 0, spec.page_width - 1);
    const int sy = rand_int(rng, 0, spec.page_height - 1);
    page(sy, sx) = true;
    manifest.specks.emplace_back(sx, sy);
  }

  if (spec.skew_angle_deg != 0.0) page = preprocess::rotate(page, spec.skew_angle_deg);
  return {std::move(page), std::move(manifest)};
}

}  // namespace segdoc::synth
