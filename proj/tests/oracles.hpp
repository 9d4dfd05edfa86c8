// Brute-force reference implementations for property tests. Each one is
// written against the contract only, on purpose sharing no code with the
// library (different traversals, different arithmetic).
#pragma once

#include "segdoc/raster.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct Region {
  segdoc::BoundingBox bbox;
  long long area = 0;
};

// Flood fill from every unvisited ink pixel (BFS with an explicit queue).
inline std::vector<Region> flood_regions(const segdoc::BinaryImage& img, int connectivity) {
  const int h = int(img.rows()), w = int(img.cols());
  std::vector<char> seen(std::size_t(h) * w, 0);
  auto idx = [w](int y, int x) { return std::size_t(y) * w + x; };
  std::vector<Region> regions;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      if (!img(y0, x0) || seen[idx(y0, x0)]) continue;
      Region region;
      int min_x = x0, max_x = x0, min_y = y0, max_y = y0;
      std::deque<std::pair<int, int>> queue{{y0, x0}};
      seen[idx(y0, x0)] = 1;
      while (!queue.empty()) {
        auto [y, x] = queue.front();
        queue.pop_front();
        ++region.area;
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dy == 0 && dx == 0) continue;
            if (connectivity == 4 && dy != 0 && dx != 0) continue;
            const int ny = y + dy, nx = x + dx;
            if (ny < 0 || ny >= h || nx < 0 || nx >= w) continue;
            if (!img(ny, nx) || seen[idx(ny, nx)]) continue;
            seen[idx(ny, nx)] = 1;
            queue.emplace_back(ny, nx);
          }
        }
      }
      region.bbox = segdoc::BoundingBox::from_extents(min_x, min_y, max_x, max_y);
      regions.push_back(region);
    }
  }
  std::stable_sort(regions.begin(), regions.end(), [](const Region& a, const Region& b) {
    if (a.bbox.y != b.bbox.y) return a.bbox.y < b.bbox.y;
    return a.bbox.x < b.bbox.x;
  });
  return regions;
}

inline int component_count(const segdoc::BinaryImage& img, int connectivity = 8) {
  return int(flood_regions(img, connectivity).size());
}

// Exhaustive Otsu argmax with exact rational score comparison. The score
// w0*w1*(mu0-mu1)^2 is proportional to (s0*n1 - s1*n0)^2 / (n0*n1), and the
// operand sizes here fit __int128 for images up to a few hundred pixels on
// a side. Returns -1 when no threshold splits the histogram.
inline int otsu_exhaustive(const segdoc::GrayImage& img) {
  long long hist[256] = {};
  for (Eigen::Index y = 0; y < img.rows(); ++y)
    for (Eigen::Index x = 0; x < img.cols(); ++x) ++hist[img(y, x)];
  int best = -1;
  __int128 best_num = 0, best_den = 1;
  for (int t = 0; t < 256; ++t) {
    long long n0 = 0, s0 = 0, n1 = 0, s1 = 0;
    for (int v = 0; v <= t; ++v) {
      n0 += hist[v];
      s0 += (long long)v * hist[v];
    }
    for (int v = t + 1; v < 256; ++v) {
      n1 += hist[v];
      s1 += (long long)v * hist[v];
    }
    if (n0 == 0 || n1 == 0) continue;
    __int128 d = (__int128)s0 * n1 - (__int128)s1 * n0;
    if (d < 0) d = -d;
    const __int128 num = d * d;
    const __int128 den = (__int128)n0 * n1;
    if (best < 0 || num * best_den > best_num * den) {
      best = t;
      best_num = num;
      best_den = den;
    }
  }
  return best;
}

// Line bands the straightforward way: maximal groups of consecutive rows
// that contain any ink, columns tightened by direct scan.
inline std::vector<segdoc::BoundingBox> line_boxes(const segdoc::BinaryImage& img) {
  const int h = int(img.rows()), w = int(img.cols());
  auto row_has_ink = [&](int y) {
    for (int x = 0; x < w; ++x)
      if (img(y, x)) return true;
    return false;
  };
  std::vector<segdoc::BoundingBox> boxes;
  int y = 0;
  while (y < h) {
    if (!row_has_ink(y)) {
      ++y;
      continue;
    }
    const int y0 = y;
    while (y < h && row_has_ink(y)) ++y;
    const int y1 = y - 1;
    int x0 = w, x1 = -1;
    for (int yy = y0; yy <= y1; ++yy)
      for (int x = 0; x < w; ++x)
        if (img(yy, x)) {
          x0 = std::min(x0, x);
          x1 = std::max(x1, x);
        }
    boxes.push_back(segdoc::BoundingBox::from_extents(x0, y0, x1, y1));
  }
  return boxes;
}

// IoU by counting integer pixel membership over the joint extent.
inline double iou_pixels(const segdoc::BoundingBox& a, const segdoc::BoundingBox& b) {
  long long inter = 0, uni = 0;
  const int y0 = std::min(a.y, b.y), y1 = std::max(a.bottom(), b.bottom());
  const int x0 = std::min(a.x, b.x), x1 = std::max(a.right(), b.right());
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const bool in_a = a.contains(x, y), in_b = b.contains(x, y);
      inter += in_a && in_b;
      uni += in_a || in_b;
    }
  }
  return uni == 0 ? 0.0 : double(inter) / double(uni);
}

// Build a binary image from ascii art rows: '#' is ink, anything else blank.
inline segdoc::BinaryImage grid(const std::vector<std::string>& rows) {
  const int h = int(rows.size()), w = h ? int(rows[0].size()) : 0;
  segdoc::BinaryImage img = segdoc::BinaryImage::Constant(h, w, false);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img(y, x) = rows[y][x] == '#';
  return img;
}

inline segdoc::BinaryImage random_binary(std::mt19937& rng, int h, int w, double density) {
  segdoc::BinaryImage img(h, w);
  const std::uint32_t cut = std::uint32_t(density * 4294967295.0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img(y, x) = rng() < cut;
  return img;
}

inline segdoc::GrayImage random_gray(std::mt19937& rng, int h, int w) {
  segdoc::GrayImage img(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img(y, x) = std::uint8_t(rng() % 256);
  return img;
}

}  // namespace oracle
