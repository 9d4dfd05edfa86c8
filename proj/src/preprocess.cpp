#include "segdoc/preprocess.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace segdoc::preprocess {

GrayImage grayscale(const RgbImage& color) {
  const Eigen::Index h = color.height();
  const Eigen::Index w = color.width();
  GrayImage out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      double lum = 0.299 * color.r(y, x) + 0.587 * color.g(y, x) + 0.114 * color.b(y, x);
      long v = std::lround(lum);
      out(y, x) = std::uint8_t(std::clamp(v, 0L, 255L));
    }
  }
  return out;
}

ThresholdLevel otsu_threshold(const GrayImage& img) {
  std::array<std::int64_t, 256> hist{};
  const std::uint8_t* data = img.data();
  const std::int64_t n = img.size();
  for (std::int64_t i = 0; i < n; ++i) ++hist[data[i]];

  int lo = 0, hi = 255;
  while (lo < 255 && hist[lo] == 0) ++lo;
  while (hi > 0 && hist[hi] == 0) --hi;
  if (lo == hi) return {std::uint8_t(lo), true};

  std::int64_t total_sum = 0;
  for (int v = 0; v < 256; ++v) total_sum += std::int64_t(v) * hist[v];

  // Between-class variance w0*w1*(mu0-mu1)^2 reduces, up to the constant
  // 1/n^2, to (s0*n - total_sum*n0)^2 / (n0*n1). Compare that ratio.
  int best = lo;
  long double best_score = -1.0L;
  std::int64_t n0 = 0, s0 = 0;
  for (int t = 0; t < 255; ++t) {
    n0 += hist[t];
    s0 += std::int64_t(t) * hist[t];
    const std::int64_t n1 = n - n0;
    if (n0 == 0 || n1 == 0) continue;
    const long double d = (long double)(s0)*n - (long double)(total_sum)*n0;
    const long double score = d * d / ((long double)(n0)*n1);
    if (score > best_score) {
      best_score = score;
      best = t;
    }
  }
  return {std::uint8_t(best), false};
}

BinaryImage binarize(const GrayImage& img, ThresholdLevel t, Ink ink) {
  if (ink == Ink::Dark) return img <= t.level;
  return img > t.level;
}

BinaryImage denoise(const BinaryImage& img, int min_area) {
  if (min_area <= 1) return img;
  Labeling lab = label_image(img, Connectivity::Eight);
  std::vector<char> keep(lab.components.size() + 1, 0);
  for (const Component& c : lab.components) keep[c.label] = c.area >= min_area;
  BinaryImage out = img;
  const Eigen::Index h = img.rows(), w = img.cols();
  for (Eigen::Index y = 0; y < h; ++y)
    for (Eigen::Index x = 0; x < w; ++x)
      if (out(y, x) && !keep[lab.labels(y, x)]) out(y, x) = false;
  return out;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

SkewEstimate estimate_skew(const BinaryImage& img, AngleRange range, double step_deg) {
  if (range.min_deg > range.max_deg) throw Error("estimate_skew: empty angle range");
  if (!(step_deg > 0)) throw Error("estimate_skew: step must be positive");
  const Eigen::Index h = img.rows(), w = img.cols();

  // Ink coordinates once, as offsets from the center.
  std::vector<std::pair<float, float>> pts;
  const double cx = (double(w) - 1) / 2, cy = (double(h) - 1) / 2;
  for (Eigen::Index y = 0; y < h; ++y)
    for (Eigen::Index x = 0; x < w; ++x)
      if (img(y, x)) pts.emplace_back(float(x - cx), float(y - cy));
  if (pts.empty()) throw BlankImage("estimate_skew: image has no ink");

  // A rotated offset row lands within +-half_diag of the center.
  const int half_diag = int(std::ceil(std::hypot(double(w), double(h)) / 2)) + 2;
  std::vector<std::int32_t> bins(2 * std::size_t(half_diag) + 1);

  const int steps = int(std::floor((range.max_deg - range.min_deg) / step_deg + 1e-9));
  SkewEstimate best;
  best.search_range = range;
  best.step_deg = step_deg;
  std::int64_t best_score = -1;
  double best_abs = 0;
  for (int k = 0; k <= steps; ++k) {
    const double theta = range.min_deg + k * step_deg;
    // Row coordinate after virtually undoing a tilt of theta.
    const float s = float(std::sin(theta * kPi / 180));
    const float c = float(std::cos(theta * kPi / 180));
    std::fill(bins.begin(), bins.end(), 0);
    for (const auto& [dx, dy] : pts) {
      const int r = int(std::lround(dx * s + dy * c)) + half_diag;
      ++bins[std::size_t(r)];
    }
    std::int64_t score = 0;
    for (std::int32_t b : bins) score += std::int64_t(b) * b;
    if (score > best_score ||
        (score == best_score && std::abs(theta) < best_abs - 1e-12)) {
      best_score = score;
      best.angle_deg = theta;
      best_abs = std::abs(theta);
    }
  }
  best.score = double(best_score);
  return best;
}

BinaryImage rotate(const BinaryImage& img, double angle_deg) {
  if (angle_deg == 0.0) return img;
  const Eigen::Index h = img.rows(), w = img.cols();
  if (h == 0 || w == 0) return img;

  const double a = angle_deg * kPi / 180;
  double s = std::sin(a), c = std::cos(a);
  if (std::abs(s) < 1e-12) s = 0;  // keep quarter turns exact
  if (std::abs(c) < 1e-12) c = 0;

  Eigen::Index w2 = Eigen::Index(std::ceil(w * std::abs(c) + h * std::abs(s)));
  Eigen::Index h2 = Eigen::Index(std::ceil(h * std::abs(c) + w * std::abs(s)));
  // Grow the canvas to the source parity so the rotation centre stays on the
  // pixel lattice; otherwise a pixel at the exact centre has no nearest
  // destination and vanishes.
  if ((w2 - w) % 2 != 0) ++w2;
  if ((h2 - h) % 2 != 0) ++h2;
  const double cx = (double(w) - 1) / 2, cy = (double(h) - 1) / 2;
  const double cx2 = (double(w2) - 1) / 2, cy2 = (double(h2) - 1) / 2;

  // Destination pixels pull from the source (inverse map), so every output
  // pixel gets exactly one nearest-neighbor sample.
  BinaryImage out = BinaryImage::Constant(h2, w2, false);
  for (Eigen::Index y2 = 0; y2 < h2; ++y2) {
    const double dy = y2 - cy2;
    for (Eigen::Index x2 = 0; x2 < w2; ++x2) {
      const double dx = x2 - cx2;
      const auto sx = Eigen::Index(std::lround(cx + dx * c - dy * s));
      const auto sy = Eigen::Index(std::lround(cy + dx * s + dy * c));
      if (sx >= 0 && sx < w && sy >= 0 && sy < h) out(y2, x2) = img(sy, sx);
    }
  }
  return out;
}

namespace {

// Deletion test for one thinning sub-iteration. Neighbors are visited
// clockwise from north; A counts 0->1 transitions around that ring and B
// counts ink neighbors. Updates are applied in place (raster order), which
// keeps every deleted pixel 8-simple and therefore preserves connectivity.
inline bool erodable(const BinaryImage& m, Eigen::Index y, Eigen::Index x, int pass) {
  const Eigen::Index h = m.rows(), w = m.cols();
  auto at = [&](Eigen::Index yy, Eigen::Index xx) -> int {
    return (yy >= 0 && yy < h && xx >= 0 && xx < w) ? int(m(yy, xx)) : 0;
  };
  const int p2 = at(y - 1, x), p3 = at(y - 1, x + 1), p4 = at(y, x + 1),
            p5 = at(y + 1, x + 1), p6 = at(y + 1, x), p7 = at(y + 1, x - 1),
            p8 = at(y, x - 1), p9 = at(y - 1, x - 1);
  const int b = p2 + p3 + p4 + p5 + p6 + p7 + p8 + p9;
  if (b < 2 || b > 6) return false;
  const int ring[9] = {p2, p3, p4, p5, p6, p7, p8, p9, p2};
  int a = 0;
  for (int i = 0; i < 8; ++i) a += (ring[i] == 0 && ring[i + 1] == 1);
  if (a != 1) return false;
  if (pass == 0) return (p2 * p4 * p6 == 0) && (p4 * p6 * p8 == 0);
  return (p2 * p4 * p8 == 0) && (p2 * p6 * p8 == 0);
}

}  // namespace

BinaryImage thin(const BinaryImage& img) {
  BinaryImage out = img;
  const Eigen::Index h = out.rows(), w = out.cols();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index y = 0; y < h; ++y) {
        for (Eigen::Index x = 0; x < w; ++x) {
          if (out(y, x) && erodable(out, y, x, pass)) {
            out(y, x) = false;
            changed = true;
          }
        }
      }
    }
  }
  return out;
}

BinaryImage edges(const BinaryImage& img) {
  const Eigen::Index h = img.rows(), w = img.cols();
  BinaryImage out = BinaryImage::Constant(h, w, false);
  auto bg = [&](Eigen::Index y, Eigen::Index x) {
    return y < 0 || y >= h || x < 0 || x >= w || !img(y, x);
  };
  for (Eigen::Index y = 0; y < h; ++y)
    for (Eigen::Index x = 0; x < w; ++x)
      if (img(y, x))
        out(y, x) = bg(y - 1, x) || bg(y + 1, x) || bg(y, x - 1) || bg(y, x + 1);
  return out;
}

ShirorekhaResult remove_shirorekha(const BinaryImage& word, const ShirorekhaParams& params) {
  const Eigen::ArrayXi counts = row_profile(word).counts;
  int top = -1, bot = -1;
  for (int r = 0; r < counts.size(); ++r) {
    if (counts[r] > 0) {
      if (top < 0) top = r;
      bot = r;
    }
  }
  if (top < 0) throw BlankImage("remove_shirorekha: word has no ink");

  // The header hugs the top of the word: look for the peak row in the top
  // fraction of the ink extent only.
  const int extent = bot - top + 1;
  const int window = std::max(1, int(std::ceil(params.search_fraction * extent)));
  int peak = top;
  for (int r = top; r <= std::min(bot, top + window - 1); ++r)
    if (counts[r] > counts[peak]) peak = r;

  if (counts[peak] < params.min_width_ratio * double(word.cols()))
    throw NoHeaderFound("remove_shirorekha: widest row covers " +
                        std::to_string(counts[peak]) + "/" +
                        std::to_string(word.cols()) + " columns");

  const double floor_count = params.band_ratio * counts[peak];
  int band_top = peak, band_bot = peak;
  while (band_top > 0 && counts[band_top - 1] >= floor_count) --band_top;
  while (band_bot + 1 < counts.size() && counts[band_bot + 1] >= floor_count) ++band_bot;

  ShirorekhaResult result;
  result.image = word;
  result.image.middleRows(band_top, band_bot - band_top + 1).setConstant(false);
  result.band = {band_top, band_bot};
  return result;
}

}  // namespace segdoc::preprocess
