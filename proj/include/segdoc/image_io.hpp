#pragma once

#include "segdoc/raster.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace segdoc::io {

struct UnreadableInput : Error {
  using Error::Error;
};

struct MalformedImage : Error {
  using Error::Error;
};

struct UnwritableOutput : Error {
  using Error::Error;
};

enum class PnmFormat { P2, P5 };  // ASCII / binary PGM

/// A decoded image file: grayscale sources fill `gray`, color sources fill
/// `rgb` (and leave `gray` empty).
struct Decoded {
  GrayImage gray;
  std::optional<RgbImage> rgb;
};

/// Read a PGM (P2/P5), PPM (P3/P6) or PNG file; the format is sniffed from
/// the leading bytes. Throws UnreadableInput if the file cannot be opened
/// and MalformedImage on parse errors. maxval above 255 is rejected.
Decoded read_image(const std::filesystem::path& path);

Decoded read_pnm(std::istream& in);

GrayImage read_pgm(const std::filesystem::path& path);

void write_pgm(std::ostream& out, const GrayImage& img, PnmFormat format = PnmFormat::P5);
void write_pgm(const std::filesystem::path& path, const GrayImage& img,
               PnmFormat format = PnmFormat::P5);

/// Document rendering of a mask: ink black (0) on a white (255) page.
GrayImage to_document_gray(const BinaryImage& img);

}  // namespace segdoc::io
