#include "segdoc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace segdoc::eval {

const char* to_string(Level level) {
  switch (level) {
    case Level::Lines: return "lines";
    case Level::Words: return "words";
    default: return "characters";
  }
}

double accuracy(std::int64_t present, std::int64_t recognized) {
  if (present == 0 && recognized == 0) return 100.0;
  const double lo = double(std::min(present, recognized));
  const double hi = double(std::max(present, recognized));
  return 100.0 * lo / hi;
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  const int ix = std::max(a.x, b.x);
  const int iy = std::max(a.y, b.y);
  const int ix1 = std::min(a.right(), b.right());
  const int iy1 = std::min(a.bottom(), b.bottom());
  if (ix1 <= ix || iy1 <= iy) return 0.0;
  const double inter = double(ix1 - ix) * (iy1 - iy);
  return inter / (double(a.area()) + double(b.area()) - inter);
}

BoxMatchReport compare_boxes(const std::vector<BoundingBox>& predicted,
                             const std::vector<BoundingBox>& truth,
                             double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0))
    throw Error("compare_boxes: iou threshold must be in (0,1]");
  struct Candidate {
    double score;
    int pred;
    int truth;
  };
  std::vector<Candidate> candidates;
  for (int p = 0; p < int(predicted.size()); ++p) {
    for (int t = 0; t < int(truth.size()); ++t) {
      const double score = iou(predicted[p], truth[t]);
      if (score >= iou_threshold) candidates.push_back({score, p, t});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(b.score, a.pred, a.truth) < std::tie(a.score, b.pred, b.truth);
  });

  std::vector<char> pred_used(predicted.size(), 0), truth_used(truth.size(), 0);
  BoxMatchReport report;
  report.iou_threshold = iou_threshold;
  for (const Candidate& c : candidates) {
    if (pred_used[c.pred] || truth_used[c.truth]) continue;
    pred_used[c.pred] = truth_used[c.truth] = 1;
    ++report.matched;
  }
  report.over_segmented = int(predicted.size()) - report.matched;
  report.under_segmented = int(truth.size()) - report.matched;
  return report;
}

namespace {

// The generator keeps every word (and so every glyph) at full line height,
// which lets row ranges come from the line truth.
void truth_boxes(const synth::Manifest& manifest, std::vector<BoundingBox>* lines,
                 std::vector<BoundingBox>* words, std::vector<BoundingBox>* glyphs) {
  for (const auto& line : manifest.lines) {
    int lx0 = 0, lx1 = -1;
    for (const auto& word : line.words) {
      if (lx1 < 0) lx0 = word.x0;
      lx0 = std::min(lx0, word.x0);
      lx1 = std::max(lx1, word.x1);
      words->push_back(BoundingBox::from_extents(word.x0, line.y0, word.x1, line.y1));
      for (const auto& glyph : word.glyphs)
        glyphs->push_back(BoundingBox::from_extents(glyph.x0, line.y0, glyph.x1, line.y1));
    }
    if (lx1 >= lx0) lines->push_back(BoundingBox::from_extents(lx0, line.y0, lx1, line.y1));
  }
}

}  // namespace

PageReport report_page(const segmentation::SegmentTree& tree, const synth::Manifest& manifest,
                       double iou_threshold) {
  if (tree.page_width != manifest.page_width || tree.page_height != manifest.page_height)
    throw DimensionMismatch("segments describe a " + std::to_string(tree.page_width) + "x" +
                            std::to_string(tree.page_height) + " page, ground truth a " +
                            std::to_string(manifest.page_width) + "x" +
                            std::to_string(manifest.page_height) + " page");

  std::vector<BoundingBox> pred_lines, pred_words, pred_glyphs;
  for (const auto& line : tree.lines) {
    pred_lines.push_back(line.bbox);
    for (const auto& word : line.words) {
      pred_words.push_back(word.bbox);
      for (const auto& glyph : word.glyphs) pred_glyphs.push_back(glyph.bbox);
    }
  }
  std::vector<BoundingBox> true_lines, true_words, true_glyphs;
  truth_boxes(manifest, &true_lines, &true_words, &true_glyphs);

  PageReport report;
  const Level levels[3] = {Level::Lines, Level::Words, Level::Characters};
  const std::int64_t present[3] = {manifest.line_count(), manifest.word_count(),
                                   manifest.glyph_count()};
  const std::int64_t recognized[3] = {tree.line_count(), tree.word_count(), tree.glyph_count()};
  const std::vector<BoundingBox>* pred[3] = {&pred_lines, &pred_words, &pred_glyphs};
  const std::vector<BoundingBox>* truth[3] = {&true_lines, &true_words, &true_glyphs};
  for (int i = 0; i < 3; ++i) {
    report.levels[i] = {levels[i], present[i], recognized[i], accuracy(present[i], recognized[i])};
    report.boxes[i] = compare_boxes(*pred[i], *truth[i], iou_threshold);
  }
  return report;
}

std::string format_percent(double value, Rounding mode) {
  std::ostringstream out;
  switch (mode) {
    case Rounding::Truncate:
      out << std::int64_t(value);
      break;
    case Rounding::HalfUp:
      out << std::int64_t(std::floor(value + 0.5));
      break;
    case Rounding::Exact:
      out.precision(15);
      out << value;
      break;
  }
  out << " %";
  return out.str();
}

}  // namespace segdoc::eval
