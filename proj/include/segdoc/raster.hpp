#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace segdoc {

/// Dense row-major raster. Indexing is (y, x) with the origin at the
/// top-left corner; x grows rightward, y grows downward, so pixel (x, y)
/// lives at data()[y * width + x].
template <typename Scalar>
using Raster = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// 8-bit intensity image, values 0..255.
using GrayImage = Raster<std::uint8_t>;

/// Object mask: true = ink, false = background.
using BinaryImage = Raster<bool>;

/// Planar 3-channel color image.
struct RgbImage {
  Raster<std::uint8_t> r, g, b;

  Eigen::Index width() const { return r.cols(); }
  Eigen::Index height() const { return r.rows(); }
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutOfBounds : Error {
  using Error::Error;
};

enum class Axis { Rows, Columns };

/// Per-row (or per-column) ink counts of a binary image.
struct ProjectionProfile {
  Axis axis = Axis::Rows;
  Eigen::ArrayXi counts;
};

/// Axis-aligned rectangle in pixel coordinates. x/y are the inclusive
/// top-left corner; w and h are at least 1 for any emitted box.
struct BoundingBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }    // exclusive
  int bottom() const { return y + h; }   // exclusive
  std::int64_t area() const { return std::int64_t(w) * h; }

  bool contains(int px, int py) const {
    return px >= x && px < right() && py >= y && py < bottom();
  }
  bool contains(const BoundingBox& o) const {
    return o.x >= x && o.y >= y && o.right() <= right() && o.bottom() <= bottom();
  }
  bool fits_in(Eigen::Index img_width, Eigen::Index img_height) const {
    return x >= 0 && y >= 0 && w >= 1 && h >= 1 && right() <= img_width &&
           bottom() <= img_height;
  }

  /// Box spanning the inclusive pixel extents [x0,x1] x [y0,y1].
  static BoundingBox from_extents(int x0, int y0, int x1, int y1) {
    return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
  }

  friend bool operator==(const BoundingBox& a, const BoundingBox& b) {
    return a.x == b.x && a.y == b.y && a.w == b.w && a.h == b.h;
  }
};

enum class Connectivity { Four = 4, Eight = 8 };

/// One connected region of ink pixels. Labels are contiguous from 1 in
/// reading order of the bounding boxes ((bbox.y, bbox.x) ascending); the
/// bbox is tight (every side touches a member pixel).
struct Component {
  int label = 0;
  BoundingBox bbox;
  std::int64_t area = 0;
};

/// Full labeling result: label raster (0 = background, otherwise the
/// component's label) plus the component table.
struct Labeling {
  Raster<std::int32_t> labels;
  std::vector<Component> components;
};

inline std::int64_t ink_count(const BinaryImage& img) { return img.count(); }

/// Complement of the mask; dimensions unchanged.
inline BinaryImage invert(const BinaryImage& img) { return !img; }

/// counts[y] = number of ink pixels in row y.
inline ProjectionProfile row_profile(const BinaryImage& img) {
  ProjectionProfile p;
  p.axis = Axis::Rows;
  p.counts = img.rowwise().count().cast<int>();
  return p;
}

/// counts[x] = number of ink pixels in column x.
inline ProjectionProfile col_profile(const BinaryImage& img) {
  ProjectionProfile p;
  p.axis = Axis::Columns;
  p.counts = img.colwise().count().cast<int>().transpose();
  return p;
}

/// Copy of the pixels inside box. Throws OutOfBounds if the box does not
/// lie fully inside the image.
template <typename Scalar>
Raster<Scalar> crop(const Raster<Scalar>& img, const BoundingBox& box) {
  if (!box.fits_in(img.cols(), img.rows())) {
    throw OutOfBounds("crop: box [" + std::to_string(box.x) + "," +
                      std::to_string(box.y) + " " + std::to_string(box.w) + "x" +
                      std::to_string(box.h) + "] exceeds image " +
                      std::to_string(img.cols()) + "x" + std::to_string(img.rows()));
  }
  return img.block(box.y, box.x, box.h, box.w);
}

Labeling label_image(const BinaryImage& img, Connectivity conn = Connectivity::Eight);

std::vector<Component> label_components(const BinaryImage& img,
                                        Connectivity conn = Connectivity::Eight);

}  // namespace segdoc
