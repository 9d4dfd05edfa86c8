#include "segdoc/image_io.hpp"

#include <doctest.h>
#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "segdoc/serialize.hpp"
#include "segdoc/synth.hpp"

using namespace segdoc;
namespace fs = std::filesystem;

namespace {

// Minimal hand-assembled PNGs (deflate via zlib, one filter-0 scanline per
// row): a 3x2 8-bit gray image, a 2x2 8-bit RGB image, a 2x1 16-bit gray
// image exercising depth reduction.
const unsigned char kGrayPng[] = {137, 80,  78,  71,  13,  10,  26,  10,  0,  0,   0,   13,
                                  73,  72,  68,  82,  0,   0,   0,   3,   0,  0,   0,   2,
                                  8,   0,   0,   0,   0,   184, 31,  57,  198, 0,  0,   0,
                                  16,  73,  68,  65,  84,  120, 156, 99,  224, 106, 248, 207,
                                  192, 224, 123, 2,   0,   9,   171, 2,   159, 173, 179, 208,
                                  92,  0,   0,   0,   0,   73,  69,  78,  68,  174, 66,  96, 130};
const unsigned char kRgbPng[] = {137, 80,  78,  71,  13,  10,  26,  10,  0,   0,   0,   13,
                                 73,  72,  68,  82,  0,   0,   0,   2,   0,   0,   0,   2,
                                 8,   2,   0,   0,   0,   253, 212, 154, 115, 0,   0,   0,
                                 19,  73,  68,  65,  84,  120, 156, 99,  248, 207, 192, 192,
                                 0,   194, 12,  255, 185, 68,  228, 0,   26,  88,  3,   58,
                                 86,  99,  162, 60,  0,   0,   0,   0,   73,  69,  78,  68,
                                 174, 66,  96,  130};
const unsigned char kGray16Png[] = {137, 80,  78, 71,  13,  10,  26,  10,  0,   0,   0,  13,
                                    73,  72,  68, 82,  0,   0,   0,   2,   0,   0,   0,  1,
                                    16,  0,   0,  0,   0,   129, 217, 252, 21,  0,   0,  0,
                                    13,  73,  68, 65,  84,  120, 156, 99,  16,  50,  249, 255,
                                    31,  0,   3,  230, 2,   69,  46,  66,  150, 117, 0,  0,
                                    0,   0,   73, 69,  78,  68,  174, 66,  96,  130};

struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() /
           ("segdoc_t" + std::to_string(::getpid()) + "_" + std::to_string(++counter));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

void write_bytes(const fs::path& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary);
  out.write(static_cast<const char*>(data), std::streamsize(size));
  REQUIRE(out.good());
}

void write_text(const fs::path& path, const std::string& text) {
  write_bytes(path, text.data(), text.size());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args, const fs::path& capture = {}) {
  std::string cmd = std::string(SEGDOC_CLI_PATH) + " " + args;
  if (capture.empty())
    cmd += " >/dev/null 2>/dev/null";
  else
    cmd += " >" + capture.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("PGM round-trips through both encodings") {
  std::mt19937 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const int h = 1 + int(rng() % 20), w = 1 + int(rng() % 20);
    GrayImage img = oracle::random_gray(rng, h, w);
    for (io::PnmFormat format : {io::PnmFormat::P5, io::PnmFormat::P2}) {
      std::stringstream stream;
      io::write_pgm(stream, img, format);
      io::Decoded decoded = io::read_pnm(stream);
      CHECK_FALSE(decoded.rgb.has_value());
      REQUIRE(decoded.gray.rows() == h);
      REQUIRE(decoded.gray.cols() == w);
      CHECK((decoded.gray == img).all());
    }
  }
}

TEST_CASE("PGM round-trips through a file") {
  TempDir dir;
  std::mt19937 rng(52);
  GrayImage img = oracle::random_gray(rng, 7, 11);
  const fs::path path = dir.path / "img.pgm";
  io::write_pgm(path, img);
  CHECK((io::read_pgm(path) == img).all());
  CHECK((io::read_image(path).gray == img).all());
}

TEST_CASE("ASCII PGM tolerates comments and ragged whitespace") {
  std::stringstream stream("P2 # magic\n# a full comment line\n 3\t2\n255\n1 2 3\n 4  5\n6");
  io::Decoded decoded = io::read_pnm(stream);
  REQUIRE(decoded.gray.rows() == 2);
  REQUIRE(decoded.gray.cols() == 3);
  for (int i = 0; i < 6; ++i) CHECK(decoded.gray(i / 3, i % 3) == i + 1);
}

TEST_CASE("PNM header and sample validation") {
  auto reject = [](const std::string& text) {
    std::stringstream stream(text);
    CHECK_THROWS_AS(io::read_pnm(stream), io::MalformedImage);
  };
  reject("P2\n1 1\n300\n5\n");          // maxval above 255
  reject("P2\n1 1\n0\n0\n");            // maxval zero
  reject("P2\n2 1\n10\n5 11\n");        // sample above maxval
  reject("P2\n-3 2\n255\n0 0 0 0\n");   // negative width
  reject("P2\n2 2\n255\n1 2 3\n");      // missing sample
  reject("P9\n1 1\n255\n0\n");          // unknown magic
  reject("P2\n70000 70000\n255\n0\n");  // implausible pixel count
  std::stringstream truncated("P5\n4 4\n255\nabc");
  CHECK_THROWS_AS(io::read_pnm(truncated), io::MalformedImage);
  std::stringstream high5(std::string("P5\n2 1\n100\n") + char(200) + char(5));
  CHECK_THROWS_AS(io::read_pnm(high5), io::MalformedImage);
}

TEST_CASE("PPM decodes into color planes") {
  std::stringstream p3("P3\n2 1\n255\n255 0 0  0 255 0\n");
  io::Decoded a = io::read_pnm(p3);
  REQUIRE(a.rgb.has_value());
  CHECK(a.rgb->r(0, 0) == 255);
  CHECK(a.rgb->g(0, 1) == 255);
  CHECK(a.rgb->b(0, 0) == 0);
  std::string raw = "P6\n2 2\n255\n";
  const unsigned char px[12] = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120};
  raw.append(reinterpret_cast<const char*>(px), 12);
  std::stringstream p6(raw);
  io::Decoded b = io::read_pnm(p6);
  REQUIRE(b.rgb.has_value());
  CHECK(b.rgb->r(0, 0) == 10);
  CHECK(b.rgb->g(1, 0) == 80);
  CHECK(b.rgb->b(1, 1) == 120);
}

TEST_CASE("read_pgm refuses color input") {
  TempDir dir;
  const fs::path path = dir.path / "color.ppm";
  write_text(path, "P3\n1 1\n255\n1 2 3\n");
  CHECK_THROWS_AS(io::read_pgm(path), io::MalformedImage);
}

TEST_CASE("read_image dispatches on the leading bytes") {
  TempDir dir;
  CHECK_THROWS_AS(io::read_image(dir.path / "missing.pgm"), io::UnreadableInput);
  CHECK_THROWS_AS(io::read_image(dir.path), io::UnreadableInput);  // a directory
  const fs::path garbage = dir.path / "garbage.bin";
  write_text(garbage, "hello, definitely not an image");
  CHECK_THROWS_AS(io::read_image(garbage), io::MalformedImage);
}

TEST_CASE("PNG grayscale decodes with exact pixel values") {
  TempDir dir;
  const fs::path path = dir.path / "gray.png";
  write_bytes(path, kGrayPng, sizeof kGrayPng);
  io::Decoded decoded = io::read_image(path);
  CHECK_FALSE(decoded.rgb.has_value());
  REQUIRE(decoded.gray.rows() == 2);
  REQUIRE(decoded.gray.cols() == 3);
  const int expect[2][3] = {{10, 128, 255}, {0, 77, 200}};
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 3; ++x) CHECK(int(decoded.gray(y, x)) == expect[y][x]);
}

TEST_CASE("PNG color decodes into planes") {
  TempDir dir;
  const fs::path path = dir.path / "rgb.png";
  write_bytes(path, kRgbPng, sizeof kRgbPng);
  io::Decoded decoded = io::read_image(path);
  REQUIRE(decoded.rgb.has_value());
  REQUIRE(decoded.rgb->height() == 2);
  REQUIRE(decoded.rgb->width() == 2);
  CHECK(decoded.rgb->r(0, 0) == 255);
  CHECK(decoded.rgb->g(0, 1) == 255);
  CHECK(decoded.rgb->b(1, 0) == 255);
  CHECK(decoded.rgb->r(1, 1) == 10);
  CHECK(decoded.rgb->g(1, 1) == 20);
  CHECK(decoded.rgb->b(1, 1) == 30);
}

TEST_CASE("16-bit PNG is reduced to 8 bits") {
  TempDir dir;
  const fs::path path = dir.path / "gray16.png";
  write_bytes(path, kGray16Png, sizeof kGray16Png);
  io::Decoded decoded = io::read_image(path);
  REQUIRE(decoded.gray.rows() == 1);
  REQUIRE(decoded.gray.cols() == 2);
  CHECK(decoded.gray(0, 0) == 0x12);
  CHECK(decoded.gray(0, 1) == 0xFF);
}

TEST_CASE("corrupt PNG raises MalformedImage") {
  TempDir dir;
  const fs::path truncated = dir.path / "trunc.png";
  write_bytes(truncated, kGrayPng, 20);
  CHECK_THROWS_AS(io::read_image(truncated), io::MalformedImage);
  const fs::path noise = dir.path / "noise.png";
  unsigned char bad[32] = {137, 80, 78, 71, 13, 10, 26, 10};  // signature then zeros
  write_bytes(noise, bad, sizeof bad);
  CHECK_THROWS_AS(io::read_image(noise), io::MalformedImage);
}

TEST_CASE("to_document_gray renders ink black on white") {
  BinaryImage mask = oracle::grid({"#.", ".#"});
  GrayImage doc = io::to_document_gray(mask);
  CHECK(doc(0, 0) == 0);
  CHECK(doc(0, 1) == 255);
  CHECK(doc(1, 0) == 255);
  CHECK(doc(1, 1) == 0);
}

TEST_CASE("segment tree JSON round-trips byte for byte") {
  synth::PageSpec spec;
  spec.seed = 116;
  auto [page, manifest] = synth::generate(spec);
  segmentation::SegmentTree tree = segmentation::segment_page(page);
  tree.provenance.threshold_level = 200;
  tree.provenance.deskew = true;
  const std::string text = serialize::to_json(tree);
  segmentation::SegmentTree parsed = serialize::tree_from_json(text);
  CHECK(serialize::to_json(parsed) == text);
  CHECK(parsed.line_count() == tree.line_count());
  CHECK(parsed.word_count() == tree.word_count());
  CHECK(parsed.glyph_count() == tree.glyph_count());
  CHECK(parsed.params == tree.params);
  CHECK(parsed.provenance == tree.provenance);
}

TEST_CASE("manifest JSON round-trips byte for byte") {
  synth::PageSpec spec;
  spec.seed = 117;
  spec.noise_speck_count = 3;
  spec.digit_word_probability = 0.4;
  auto [page, manifest] = synth::generate(spec);
  const std::string text = serialize::to_json(manifest);
  synth::Manifest parsed = serialize::manifest_from_json(text);
  CHECK(serialize::to_json(parsed) == text);
  CHECK(parsed.word_count() == manifest.word_count());
  CHECK(parsed.glyph_count() == manifest.glyph_count());
}

TEST_CASE("page spec JSON accepts partial documents") {
  synth::PageSpec spec;
  spec.seed = 99;
  spec.glyph_width = {13, 19};
  const std::string text = serialize::to_json(spec);
  synth::PageSpec parsed = serialize::page_spec_from_json(text);
  CHECK(serialize::to_json(parsed) == text);
  synth::PageSpec partial = serialize::page_spec_from_json(R"({"seed": 3})");
  synth::PageSpec expect;
  expect.seed = 3;
  CHECK(serialize::to_json(partial) == serialize::to_json(expect));
  CHECK_THROWS_AS(serialize::page_spec_from_json(R"({"sed": 3})"), serialize::SchemaError);
}

TEST_CASE("schema violations raise SchemaError") {
  CHECK_THROWS_AS(serialize::tree_from_json("not json at all"), serialize::SchemaError);
  CHECK_THROWS_AS(serialize::tree_from_json("{}"), serialize::SchemaError);
  CHECK_THROWS_AS(serialize::tree_from_json(R"({"lines": [], "page": {"w": 1, "h": 1},
    "params": {}, "provenance": {}, "extra": 1})"),
                  serialize::SchemaError);
  CHECK_THROWS_AS(serialize::manifest_from_json(R"({"page": "wrong"})"), serialize::SchemaError);
}

TEST_CASE("cli synth is deterministic and self-describing") {
  TempDir dir;
  const fs::path a = dir.path / "a", b = dir.path / "b";
  CHECK(run_cli("synth --seed 7 --out-dir " + a.string()) == 0);
  CHECK(run_cli("synth --seed 7 --out-dir " + b.string()) == 0);
  REQUIRE(fs::exists(a / "page.pgm"));
  REQUIRE(fs::exists(a / "manifest.json"));
  CHECK(read_file(a / "page.pgm") == read_file(b / "page.pgm"));
  CHECK(read_file(a / "manifest.json") == read_file(b / "manifest.json"));
  const fs::path c = dir.path / "c";
  CHECK(run_cli("synth --seed 7 --skew 3.0 --out-dir " + c.string()) == 0);
  synth::Manifest manifest = serialize::manifest_from_json(read_file(c / "manifest.json"));
  CHECK(manifest.skew_angle_deg == 3.0);
}

TEST_CASE("cli spec file values are overridden by flags") {
  TempDir dir;
  synth::PageSpec file_spec;
  file_spec.seed = 5;
  const fs::path spec_path = dir.path / "spec.json";
  write_text(spec_path, serialize::to_json(file_spec));
  const fs::path a = dir.path / "a", b = dir.path / "b";
  CHECK(run_cli("synth --spec " + spec_path.string() + " --seed 9 --out-dir " + a.string()) == 0);
  CHECK(run_cli("synth --seed 9 --out-dir " + b.string()) == 0);
  CHECK(read_file(a / "manifest.json") == read_file(b / "manifest.json"));
}

TEST_CASE("cli synth rejects bad spec files with the right diagnostics") {
  TempDir dir;
  const fs::path bad = dir.path / "bad.json";
  const fs::path err = dir.path / "err.txt";
  write_text(bad, "{\"lines\": 5}\n");  // the key is line_count
  CHECK(run_cli("synth --spec " + bad.string() + " --out-dir " + (dir.path / "o").string(), err) ==
        6);
  CHECK(read_file(err).find("schema_mismatch") != std::string::npos);

  CHECK(run_cli("synth --spec " + (dir.path / "absent.json").string() + " --out-dir " +
                    (dir.path / "o2").string(),
                err) == 2);
  CHECK(read_file(err).find("unreadable_input") != std::string::npos);
}

TEST_CASE("cli segment matches the manifest end to end") {
  TempDir dir;
  const fs::path synth_dir = dir.path / "synth", seg_dir = dir.path / "seg";
  REQUIRE(run_cli("synth --seed 11 --out-dir " + synth_dir.string()) == 0);
  CHECK(run_cli("segment --input " + (synth_dir / "page.pgm").string() + " --out-dir " +
                seg_dir.string()) == 0);
  segmentation::SegmentTree tree =
      serialize::tree_from_json(read_file(seg_dir / "segments.json"));
  synth::Manifest manifest = serialize::manifest_from_json(read_file(synth_dir / "manifest.json"));
  CHECK(tree.line_count() == manifest.line_count());
  CHECK(tree.word_count() == manifest.word_count());
  CHECK(tree.glyph_count() >= manifest.glyph_count());
  CHECK(tree.page_width == manifest.page_width);
  CHECK(tree.page_height == manifest.page_height);

  const fs::path eval_dir = dir.path / "eval";
  const fs::path table = dir.path / "table.txt";
  CHECK(run_cli("eval --segments " + (seg_dir / "segments.json").string() + " --manifest " +
                (synth_dir / "manifest.json").string() + " --out-dir " + eval_dir.string(),
                table) == 0);
  const std::string printed = read_file(table);
  CHECK(printed.find("lines") != std::string::npos);
  CHECK(printed.find("100 %") != std::string::npos);
  nlohmann::json report = nlohmann::json::parse(read_file(eval_dir / "report.json"));
  REQUIRE(report.at("levels").size() == 3);
  CHECK(report.at("levels")[0].at("accuracy_percent").get<double>() == 100.0);
  CHECK(report.at("levels")[0].at("boxes").at("matched").get<int>() == manifest.line_count());
  CHECK(report.at("iou_threshold").get<double>() == 0.5);
}

TEST_CASE("cli segment emits crops and an overlay that only adds outlines") {
  TempDir dir;
  const fs::path synth_dir = dir.path / "synth", seg_dir = dir.path / "seg";
  REQUIRE(run_cli("synth --seed 12 --lines 2 --out-dir " + synth_dir.string()) == 0);
  CHECK(run_cli("segment --no-deskew --emit json,crops,overlay --input " +
                (synth_dir / "page.pgm").string() + " --out-dir " + seg_dir.string()) == 0);
  CHECK(fs::exists(seg_dir / "segments.json"));
  CHECK(fs::exists(seg_dir / "line0.pgm"));
  CHECK(fs::exists(seg_dir / "line0_word0.pgm"));
  CHECK(fs::exists(seg_dir / "line0_word0_char0.pgm"));
  REQUIRE(fs::exists(seg_dir / "overlay.pgm"));
  GrayImage page = io::read_pgm(synth_dir / "page.pgm");
  GrayImage overlay = io::read_pgm(seg_dir / "overlay.pgm");
  REQUIRE(page.rows() == overlay.rows());
  REQUIRE(page.cols() == overlay.cols());
  std::int64_t outlined = 0;
  for (int y = 0; y < page.rows(); ++y)
    for (int x = 0; x < page.cols(); ++x)
      if (overlay(y, x) != page(y, x)) {
        CHECK(overlay(y, x) == 128);
        ++outlined;
      }
  CHECK(outlined > 0);
  // The line crop is the page content inside the line's bbox.
  segmentation::SegmentTree tree =
      serialize::tree_from_json(read_file(seg_dir / "segments.json"));
  REQUIRE(!tree.lines.empty());
  GrayImage line0 = io::read_pgm(seg_dir / "line0.pgm");
  CHECK(line0.rows() == tree.lines[0].bbox.h);
  CHECK(line0.cols() == tree.lines[0].bbox.w);
}

TEST_CASE("cli segment fans multiple inputs into stem subdirectories") {
  TempDir dir;
  const fs::path synth_dir = dir.path / "synth";
  REQUIRE(run_cli("synth --seed 13 --lines 2 --out-dir " + synth_dir.string()) == 0);
  const fs::path pa = dir.path / "first.pgm", pb = dir.path / "second.pgm";
  fs::copy_file(synth_dir / "page.pgm", pa);
  fs::copy_file(synth_dir / "page.pgm", pb);
  const fs::path out = dir.path / "out";
  CHECK(run_cli("segment --jobs 2 --input " + pa.string() + " --input " + pb.string() +
                " --out-dir " + out.string()) == 0);
  CHECK(fs::exists(out / "first" / "segments.json"));
  CHECK(fs::exists(out / "second" / "segments.json"));
  CHECK(read_file(out / "first" / "segments.json") ==
        read_file(out / "second" / "segments.json"));
}

TEST_CASE("cli segment of a blank page yields an empty tree") {
  TempDir dir;
  const fs::path page = dir.path / "blank.pgm";
  io::write_pgm(page, GrayImage::Constant(40, 50, 255));
  const fs::path out = dir.path / "out";
  CHECK(run_cli("segment --input " + page.string() + " --out-dir " + out.string()) == 0);
  segmentation::SegmentTree tree = serialize::tree_from_json(read_file(out / "segments.json"));
  CHECK(tree.lines.empty());
  CHECK(tree.page_width == 50);
  CHECK(tree.page_height == 40);
}

TEST_CASE("cli exit codes for the failure paths") {
  TempDir dir;
  const fs::path err = dir.path / "err.txt";
  // 2: input that does not exist
  CHECK(run_cli("segment --input " + (dir.path / "missing.pgm").string() + " --out-dir " +
                (dir.path / "o1").string(),
                err) == 2);
  CHECK(read_file(err).find("unreadable_input") != std::string::npos);
  // 3: file that is not an image
  const fs::path garbage = dir.path / "garbage.pgm";
  write_text(garbage, "this is not a pgm");
  CHECK(run_cli("segment --input " + garbage.string() + " --out-dir " +
                (dir.path / "o2").string()) == 3);
  // 4: output directory nested under a regular file
  const fs::path blocker = dir.path / "blocker";
  write_text(blocker, "file");
  const fs::path page = dir.path / "page.pgm";
  io::write_pgm(page, GrayImage::Constant(8, 8, 255));
  CHECK(run_cli("segment --input " + page.string() + " --out-dir " +
                (blocker / "sub").string()) == 4);
  // 5: infeasible synth spec
  CHECK(run_cli("synth --lines 1000 --page-h 100 --out-dir " + (dir.path / "o3").string()) == 5);
  // 1: usage problems
  CHECK(run_cli("") == 1);
  CHECK(run_cli("segment") == 1);
  CHECK(run_cli("segment --input x.pgm --bogus-flag") == 1);
  CHECK(run_cli("--help") == 0);
}

TEST_CASE("cli eval failure paths") {
  TempDir dir;
  const fs::path synth_a = dir.path / "a", synth_b = dir.path / "b", seg_a = dir.path / "sa";
  REQUIRE(run_cli("synth --seed 14 --lines 2 --out-dir " + synth_a.string()) == 0);
  REQUIRE(run_cli("synth --seed 14 --lines 2 --page-w 900 --out-dir " + synth_b.string()) == 0);
  REQUIRE(run_cli("segment --input " + (synth_a / "page.pgm").string() + " --out-dir " +
                  seg_a.string()) == 0);
  // 6: page dimensions disagree
  CHECK(run_cli("eval --segments " + (seg_a / "segments.json").string() + " --manifest " +
                (synth_b / "manifest.json").string() + " --out-dir " +
                (dir.path / "e1").string()) == 6);
  // 6: segments file that does not parse
  const fs::path bad = dir.path / "bad.json";
  write_text(bad, "{{{");
  CHECK(run_cli("eval --segments " + bad.string() + " --manifest " +
                (synth_a / "manifest.json").string() + " --out-dir " +
                (dir.path / "e2").string()) == 6);
  // 2: missing segments file
  CHECK(run_cli("eval --segments " + (dir.path / "nope.json").string() + " --manifest " +
                (synth_a / "manifest.json").string() + " --out-dir " +
                (dir.path / "e3").string()) == 2);
  // 1: bad IoU threshold
  CHECK(run_cli("eval --segments " + (seg_a / "segments.json").string() + " --manifest " +
                (synth_a / "manifest.json").string() + " --iou 1.5 --out-dir " +
                (dir.path / "e4").string()) == 1);
}

TEST_CASE("cli preprocess dumps the intermediate stages") {
  TempDir dir;
  const fs::path synth_dir = dir.path / "synth";
  REQUIRE(run_cli("synth --seed 15 --lines 2 --out-dir " + synth_dir.string()) == 0);
  const fs::path out = dir.path / "pre";
  const fs::path stdout_file = dir.path / "pre.txt";
  CHECK(run_cli("preprocess --input " + (synth_dir / "page.pgm").string() + " --out-dir " +
                out.string(),
                stdout_file) == 0);
  for (const char* name : {"binarized.pgm", "denoised.pgm", "deskewed.pgm", "thinned.pgm",
                           "edges.pgm"})
    CHECK(fs::exists(out / name));
  nlohmann::json summary = nlohmann::json::parse(read_file(stdout_file));
  CHECK(summary.contains("threshold"));
  CHECK(summary.contains("skew_angle_deg"));
}
