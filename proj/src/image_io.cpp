#include "segdoc/image_io.hpp"

#include <png.h>

#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <string>
#include <vector>

namespace segdoc::io {

namespace {

struct PngHandle {
  std::FILE* fp = nullptr;
  png_structp png = nullptr;
  png_infop info = nullptr;

  ~PngHandle() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

Decoded read_png(const std::filesystem::path& path) {
  PngHandle h;
  h.fp = std::fopen(path.c_str(), "rb");
  if (!h.fp) throw UnreadableInput("cannot open " + path.string());
  h.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (h.png) h.info = png_create_info_struct(h.png);
  if (!h.info) throw Error("png: out of memory");

  // libpng reports failure by longjmp-ing back here; the jump lands in this
  // frame, so the throw below unwinds normally and PngHandle cleans up.
  if (setjmp(png_jmpbuf(h.png)))
    throw MalformedImage("png: failed to decode " + path.string());

  png_init_io(h.png, h.fp);
  png_read_info(h.png, h.info);

  png_set_strip_16(h.png);
  png_set_packing(h.png);
  png_set_strip_alpha(h.png);
  if (png_get_color_type(h.png, h.info) == PNG_COLOR_TYPE_PALETTE)
    png_set_palette_to_rgb(h.png);
  if (png_get_color_type(h.png, h.info) == PNG_COLOR_TYPE_GRAY &&
      png_get_bit_depth(h.png, h.info) < 8)
    png_set_expand_gray_1_2_4_to_8(h.png);
  png_read_update_info(h.png, h.info);

  const png_uint_32 w = png_get_image_width(h.png, h.info);
  const png_uint_32 h_px = png_get_image_height(h.png, h.info);
  const int channels = png_get_channels(h.png, h.info);
  if (w == 0 || h_px == 0 || (channels != 1 && channels != 3))
    throw MalformedImage("png: unsupported layout in " + path.string());

  Decoded out;
  std::vector<png_bytep> rows(h_px);
  if (channels == 1) {
    out.gray.resize(Eigen::Index(h_px), Eigen::Index(w));
    for (png_uint_32 y = 0; y < h_px; ++y)
      rows[y] = reinterpret_cast<png_bytep>(out.gray.data() + std::size_t(y) * w);
    png_read_image(h.png, rows.data());
  } else {
    std::vector<std::uint8_t> interleaved(std::size_t(w) * h_px * 3);
    for (png_uint_32 y = 0; y < h_px; ++y)
      rows[y] = interleaved.data() + std::size_t(y) * w * 3;
    png_read_image(h.png, rows.data());
    RgbImage rgb;
    rgb.r.resize(Eigen::Index(h_px), Eigen::Index(w));
    rgb.g.resize(Eigen::Index(h_px), Eigen::Index(w));
    rgb.b.resize(Eigen::Index(h_px), Eigen::Index(w));
    const std::uint8_t* p = interleaved.data();
    for (Eigen::Index y = 0; y < rgb.r.rows(); ++y) {
      for (Eigen::Index x = 0; x < rgb.r.cols(); ++x) {
        rgb.r(y, x) = *p++;
        rgb.g(y, x) = *p++;
        rgb.b(y, x) = *p++;
      }
    }
    out.rgb = std::move(rgb);
  }
  png_read_end(h.png, nullptr);
  return out;
}

// Next integer token, skipping whitespace and # comments.
long pnm_int(std::istream& in) {
  int c = in.get();
  while (c != EOF && (std::isspace(c) || c == '#')) {
    if (c == '#')
      while (c != EOF && c != '\n') c = in.get();
    c = in.get();
  }
  if (c == EOF || !std::isdigit(c)) throw MalformedImage("pnm: expected an integer");
  long value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > std::numeric_limits<int>::max()) throw MalformedImage("pnm: number too large");
    c = in.get();
  }
  if (c != EOF) in.unget();
  return value;
}

void read_gray_samples(std::istream& in, GrayImage& img, long maxval, bool ascii) {
  const std::size_t n = std::size_t(img.size());
  if (ascii) {
    for (std::size_t i = 0; i < n; ++i) {
      const long v = pnm_int(in);
      if (v > maxval) throw MalformedImage("pnm: sample exceeds maxval");
      img.data()[i] = std::uint8_t(v);
    }
  } else {
    in.read(reinterpret_cast<char*>(img.data()), std::streamsize(n));
    if (std::size_t(in.gcount()) != n) throw MalformedImage("pnm: truncated pixel data");
    for (std::size_t i = 0; i < n; ++i)
      if (img.data()[i] > maxval) throw MalformedImage("pnm: sample exceeds maxval");
  }
}

}  // namespace

Decoded read_pnm(std::istream& in) {
  const int magic0 = in.get();
  const int magic1 = in.get();
  if (magic0 != 'P' || (magic1 != '2' && magic1 != '3' && magic1 != '5' && magic1 != '6'))
    throw MalformedImage("pnm: unsupported magic number");
  const bool ascii = magic1 == '2' || magic1 == '3';
  const bool color = magic1 == '3' || magic1 == '6';

  const long w = pnm_int(in);
  const long h = pnm_int(in);
  const long maxval = pnm_int(in);
  if (w < 1 || h < 1 || w * h > (1L << 30)) throw MalformedImage("pnm: bad dimensions");
  if (maxval < 1 || maxval > 255) throw MalformedImage("pnm: maxval must be in [1,255]");
  if (!ascii) {
    const int sep = in.get();
    if (sep == EOF || !std::isspace(sep)) throw MalformedImage("pnm: missing raster separator");
  }

  Decoded out;
  if (!color) {
    out.gray.resize(h, w);
    read_gray_samples(in, out.gray, maxval, ascii);
    return out;
  }
  RgbImage rgb;
  rgb.r.resize(h, w);
  rgb.g.resize(h, w);
  rgb.b.resize(h, w);
  if (ascii) {
    for (long y = 0; y < h; ++y) {
      for (long x = 0; x < w; ++x) {
        const long r = pnm_int(in), g = pnm_int(in), b = pnm_int(in);
        if (r > maxval || g > maxval || b > maxval)
          throw MalformedImage("pnm: sample exceeds maxval");
        rgb.r(y, x) = std::uint8_t(r);
        rgb.g(y, x) = std::uint8_t(g);
        rgb.b(y, x) = std::uint8_t(b);
      }
    }
  } else {
    std::vector<std::uint8_t> row(std::size_t(w) * 3);
    for (long y = 0; y < h; ++y) {
      in.read(reinterpret_cast<char*>(row.data()), std::streamsize(row.size()));
      if (std::size_t(in.gcount()) != row.size())
        throw MalformedImage("pnm: truncated pixel data");
      for (long x = 0; x < w; ++x) {
        if (row[3 * x] > maxval || row[3 * x + 1] > maxval || row[3 * x + 2] > maxval)
          throw MalformedImage("pnm: sample exceeds maxval");
        rgb.r(y, x) = row[3 * x];
        rgb.g(y, x) = row[3 * x + 1];
        rgb.b(y, x) = row[3 * x + 2];
      }
    }
  }
  out.rgb = std::move(rgb);
  return out;
}

Decoded read_image(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec))
    throw UnreadableInput("not a readable file: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableInput("cannot open " + path.string());

  const int first = in.peek();
  if (first == 0x89) return read_png(path);
  if (first == 'P') return read_pnm(in);
  throw MalformedImage("unrecognized image format in " + path.string());
}

GrayImage read_pgm(const std::filesystem::path& path) {
  Decoded d = read_image(path);
  if (d.rgb) throw MalformedImage("expected a grayscale image: " + path.string());
  return std::move(d.gray);
}

void write_pgm(std::ostream& out, const GrayImage& img, PnmFormat format) {
  if (img.rows() < 1 || img.cols() < 1) throw Error("write_pgm: empty image");
  if (format == PnmFormat::P5) {
    out << "P5\n" << img.cols() << " " << img.rows() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data()), std::streamsize(img.size()));
  } else {
    out << "P2\n" << img.cols() << " " << img.rows() << "\n255\n";
    for (Eigen::Index y = 0; y < img.rows(); ++y) {
      for (Eigen::Index x = 0; x < img.cols(); ++x) {
        if (x) out << ' ';
        out << int(img(y, x));
      }
      out << '\n';
    }
  }
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img, PnmFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UnwritableOutput("cannot open for writing: " + path.string());
  write_pgm(out, img, format);
  out.flush();
  if (!out) throw UnwritableOutput("write failed: " + path.string());
}

GrayImage to_document_gray(const BinaryImage& img) {
  GrayImage out(img.rows(), img.cols());
  for (Eigen::Index y = 0; y < img.rows(); ++y)
    for (Eigen::Index x = 0; x < img.cols(); ++x) out(y, x) = img(y, x) ? 0 : 255;
  return out;
}

}  // namespace segdoc::io
