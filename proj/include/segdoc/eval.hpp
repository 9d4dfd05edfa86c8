#pragma once

#include "segdoc/raster.hpp"
#include "segdoc/segment.hpp"
#include "segdoc/synth.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace segdoc::eval {

struct DimensionMismatch : Error {
  using Error::Error;
};

enum class Level { Lines, Words, Characters };

const char* to_string(Level level);

struct LevelReport {
  Level level = Level::Lines;
  std::int64_t present = 0;     // ground-truth count
  std::int64_t recognized = 0;  // emitted segment count
  double accuracy_percent = 0.0;
};

struct BoxMatchReport {
  int matched = 0;
  int over_segmented = 0;   // predicted boxes with no ground-truth owner
  int under_segmented = 0;  // ground-truth boxes split or missed
  double iou_threshold = 0.5;
};

/// How accuracy percentages are rendered; raw values always keep full
/// precision.
enum class Rounding { Truncate, HalfUp, Exact };

/// 100 * min(present, recognized) / max(present, recognized); 100 when both
/// counts are zero. Symmetric, full precision.
double accuracy(std::int64_t present, std::int64_t recognized);

double iou(const BoundingBox& a, const BoundingBox& b);

/// Greedy one-to-one matching in descending IoU order; pairs at or above
/// the threshold count as matched.
BoxMatchReport compare_boxes(const std::vector<BoundingBox>& predicted,
                             const std::vector<BoundingBox>& truth,
                             double iou_threshold);

struct PageReport {
  std::array<LevelReport, 3> levels;   // lines, words, characters
  std::array<BoxMatchReport, 3> boxes;
};

/// Score a segmentation against the generator's ground truth: one
/// LevelReport per level (manifest counts as "present") plus box matching.
/// Throws DimensionMismatch when the two refer to different page sizes.
PageReport report_page(const segmentation::SegmentTree& tree,
                       const synth::Manifest& manifest,
                       double iou_threshold = 0.5);

/// Render a percentage like "91 %" (or full precision for Rounding::Exact).
std::string format_percent(double value, Rounding mode);

}  // namespace segdoc::eval
