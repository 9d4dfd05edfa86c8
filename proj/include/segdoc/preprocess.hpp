#pragma once

#include "segdoc/raster.hpp"

namespace segdoc::preprocess {

struct BlankImage : Error {
  using Error::Error;
};

struct NoHeaderFound : Error {
  using Error::Error;
};

/// Global threshold picked by maximizing between-class variance over the
/// 256-bin intensity histogram. `degenerate` is set when every pixel
/// shares one intensity (the level is then that intensity).
struct ThresholdLevel {
  std::uint8_t level = 0;
  bool degenerate = false;
};

enum class Ink { Dark, Light };

struct AngleRange {
  double min_deg = -10.0;
  double max_deg = 10.0;
};

struct SkewEstimate {
  double angle_deg = 0.0;  // positive = counter-clockwise page tilt
  double score = 0.0;      // objective value at the chosen angle
  AngleRange search_range;
  double step_deg = 0.1;
};

/// Header-line detector knobs. The peak row is searched within the top
/// `search_fraction` of the word's ink extent; rows with at least
/// `band_ratio` of the peak count form the removed band; the peak must
/// cover at least `min_width_ratio` of the word width to count as a header.
struct ShirorekhaParams {
  double search_fraction = 0.4;
  double band_ratio = 0.8;
  double min_width_ratio = 0.5;
};

struct RowBand {
  int top = 0;     // inclusive
  int bottom = 0;  // inclusive
};

struct ShirorekhaResult {
  BinaryImage image;
  RowBand band;
};

/// Luminance conversion: round(0.299 R + 0.587 G + 0.114 B), clamped to 0..255.
GrayImage grayscale(const RgbImage& color);

ThresholdLevel otsu_threshold(const GrayImage& img);

/// Threshold to an ink mask. With Ink::Dark (scanned text) object pixels
/// are those with intensity <= level, so ink comes out as 1 directly.
BinaryImage binarize(const GrayImage& img, ThresholdLevel t, Ink ink = Ink::Dark);

/// Erase every 8-connected component with fewer than min_area pixels.
BinaryImage denoise(const BinaryImage& img, int min_area);

/// Grid search for the page tilt: each candidate angle is scored by the
/// sum of squared row-profile counts of the virtually counter-rotated
/// image. Ties break toward the smallest |angle|. Throws BlankImage when
/// the image has no ink.
SkewEstimate estimate_skew(const BinaryImage& img, AngleRange range = {},
                           double step_deg = 0.1);

/// Rotate about the image center with nearest-neighbor sampling. The
/// output canvas is enlarged to contain the rotated extent; samples from
/// outside the source are background. Positive angles tilt the page
/// counter-clockwise.
BinaryImage rotate(const BinaryImage& img, double angle_deg);

/// Iterative thinning to unit-width strokes. Never adds ink, preserves the
/// number of 8-connected components, and is idempotent.
BinaryImage thin(const BinaryImage& img);

/// Ink pixels that touch the background through a 4-neighbor (or the
/// image border). Debug artifact.
BinaryImage edges(const BinaryImage& img);

/// Locate and clear the horizontal header line of a single word image.
/// Returns the cleared image and the inclusive row band that was erased.
/// Throws NoHeaderFound when the candidate row is narrower than
/// min_width_ratio of the word (numerals, typically) and BlankImage when
/// the word has no ink.
ShirorekhaResult remove_shirorekha(const BinaryImage& word,
                                   const ShirorekhaParams& params = {});

}  // namespace segdoc::preprocess
