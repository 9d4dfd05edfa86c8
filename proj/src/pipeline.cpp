#include "segdoc/pipeline.hpp"

#include "segdoc/image_io.hpp"
#include "segdoc/serialize.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace segdoc::cli {

namespace {

namespace fs = std::filesystem;

std::mutex diag_mutex;

// Machine-readable diagnostics: one JSON object per line on stderr.
void diagnose(const char* kind, const std::string& detail) {
  const nlohmann::json j{{"detail", detail}, {"error", kind}};
  std::lock_guard<std::mutex> lock(diag_mutex);
  std::cerr << j.dump() << "\n";
}

bool ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir, ec)) {
    diagnose("unwritable_output", "cannot create directory " + dir.string());
    return false;
  }
  return true;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.flush();
  if (!out) throw io::UnwritableOutput("write failed: " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::UnreadableInput("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io::UnreadableInput("read failed: " + path.string());
  return std::move(buf).str();
}

void outline(GrayImage& img, const BoundingBox& b, std::uint8_t value) {
  for (int x = b.x; x < b.right(); ++x) {
    img(b.y, x) = value;
    img(b.bottom() - 1, x) = value;
  }
  for (int y = b.y; y < b.bottom(); ++y) {
    img(y, b.x) = value;
    img(y, b.right() - 1) = value;
  }
}

struct PreprocessedPage {
  BinaryImage binary;
  segmentation::Provenance provenance;
  bool degenerate = false;
};

// grayscale -> threshold -> denoise -> optional deskew. A page whose pixels
// all share one intensity carries no structure, so it binarizes to blank.
PreprocessedPage preprocess_page(const fs::path& input, bool deskew,
                                 const preprocess::AngleRange& skew_range,
                                 double skew_step_deg, int denoise_min_area) {
  io::Decoded decoded = io::read_image(input);
  const GrayImage gray =
      decoded.rgb ? preprocess::grayscale(*decoded.rgb) : std::move(decoded.gray);

  PreprocessedPage page;
  const preprocess::ThresholdLevel level = preprocess::otsu_threshold(gray);
  page.degenerate = level.degenerate;
  page.binary = level.degenerate
                    ? BinaryImage::Constant(gray.rows(), gray.cols(), false)
                    : preprocess::binarize(gray, level);
  page.binary = preprocess::denoise(page.binary, denoise_min_area);
  page.provenance.threshold_level = level.level;
  page.provenance.denoise_min_area = denoise_min_area;
  page.provenance.deskew = deskew;
  if (deskew && page.binary.count() > 0) {
    const preprocess::SkewEstimate est =
        preprocess::estimate_skew(page.binary, skew_range, skew_step_deg);
    page.provenance.skew_angle_deg = est.angle_deg;
    if (std::abs(est.angle_deg) > 1e-9)
      page.binary = preprocess::rotate(page.binary, -est.angle_deg);
  }
  return page;
}

int process_one(const RunConfig& config, const fs::path& input, const fs::path& out_dir) {
  try {
    if (!ensure_dir(out_dir)) return exit_unwritable_output;
    PreprocessedPage page =
        preprocess_page(input, config.deskew, config.skew_range, config.skew_step_deg,
                        config.denoise_min_area);
    segmentation::SegmentTree tree = segmentation::segment_page(page.binary, config.params);
    tree.provenance = page.provenance;

    if (config.emit_json) write_text(out_dir / "segments.json", serialize::to_json(tree));
    if (config.emit_crops) {
      for (const auto& line : tree.lines) {
        const std::string stem = "line" + std::to_string(line.index);
        io::write_pgm(out_dir / (stem + ".pgm"), io::to_document_gray(line.image));
        for (const auto& word : line.words) {
          const std::string word_stem = stem + "_word" + std::to_string(word.index);
          io::write_pgm(out_dir / (word_stem + ".pgm"), io::to_document_gray(word.image));
          for (const auto& glyph : word.glyphs)
            io::write_pgm(out_dir / (word_stem + "_char" + std::to_string(glyph.index) + ".pgm"),
                          io::to_document_gray(glyph.image));
        }
      }
    }
    if (config.emit_overlay) {
      GrayImage overlay = io::to_document_gray(page.binary);
      for (const auto& line : tree.lines) {
        outline(overlay, line.bbox, 128);
        for (const auto& word : line.words) {
          outline(overlay, word.bbox, 128);
          for (const auto& glyph : word.glyphs) outline(overlay, glyph.bbox, 128);
        }
      }
      io::write_pgm(out_dir / "overlay.pgm", overlay);
    }
    return exit_ok;
  } catch (const io::UnreadableInput& e) {
    diagnose("unreadable_input", e.what());
    return exit_unreadable_input;
  } catch (const io::MalformedImage& e) {
    diagnose("malformed_image", e.what());
    return exit_malformed_image;
  } catch (const io::UnwritableOutput& e) {
    diagnose("unwritable_output", e.what());
    return exit_unwritable_output;
  }
}

// Distinct output directory per input page; duplicate stems get a numeric
// suffix so parallel pages never collide.
std::vector<fs::path> page_dirs(const RunConfig& config) {
  std::vector<fs::path> dirs;
  if (config.inputs.size() == 1) {
    dirs.push_back(config.out_dir);
    return dirs;
  }
  std::vector<std::string> used;
  for (const fs::path& input : config.inputs) {
    std::string stem = input.stem().string();
    if (stem.empty()) stem = "page";
    std::string name = stem;
    int suffix = 2;
    while (std::find(used.begin(), used.end(), name) != used.end())
      name = stem + "_" + std::to_string(suffix++);
    used.push_back(name);
    dirs.push_back(config.out_dir / name);
  }
  return dirs;
}

}  // namespace

int run_segment(const RunConfig& config) {
  try {
    config.params.validate();
  } catch (const std::invalid_argument& e) {
    diagnose("usage", e.what());
    return exit_usage;
  }
  if (config.inputs.empty()) {
    diagnose("usage", "no input files given");
    return exit_usage;
  }
  if (config.jobs < 1) {
    diagnose("usage", "--jobs must be at least 1");
    return exit_usage;
  }
  if (!ensure_dir(config.out_dir)) return exit_unwritable_output;

  const std::vector<fs::path> dirs = page_dirs(config);
  std::vector<int> codes(config.inputs.size(), exit_ok);
  const std::size_t workers =
      std::min<std::size_t>(std::size_t(config.jobs), config.inputs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < config.inputs.size(); ++i)
      codes[i] = process_one(config, config.inputs[i], dirs[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < config.inputs.size(); i = next++)
          codes[i] = process_one(config, config.inputs[i], dirs[i]);
      });
    }
    for (std::thread& t : pool) t.join();
  }
  for (int code : codes)
    if (code != exit_ok) return code;
  return exit_ok;
}

int run_synth(const SynthConfig& config) {
  try {
    config.spec.validate();
    auto [image, manifest] = synth::generate(config.spec);
    if (!ensure_dir(config.out_dir)) return exit_unwritable_output;
    io::write_pgm(config.out_dir / "page.pgm", io::to_document_gray(image));
    write_text(config.out_dir / "manifest.json", serialize::to_json(manifest));
    return exit_ok;
  } catch (const std::invalid_argument& e) {
    diagnose("infeasible_spec", e.what());
    return exit_infeasible_spec;
  } catch (const synth::SpecInfeasible& e) {
    diagnose("infeasible_spec", e.what());
    return exit_infeasible_spec;
  } catch (const io::UnwritableOutput& e) {
    diagnose("unwritable_output", e.what());
    return exit_unwritable_output;
  }
}

int run_eval(const EvalConfig& config) {
  if (!(config.iou_threshold > 0.0 && config.iou_threshold <= 1.0)) {
    diagnose("usage", "--iou must be in (0,1]");
    return exit_usage;
  }
  try {
    const segmentation::SegmentTree tree =
        serialize::tree_from_json(read_text(config.segments_path));
    const synth::Manifest manifest =
        serialize::manifest_from_json(read_text(config.manifest_path));
    const eval::PageReport report = eval::report_page(tree, manifest, config.iou_threshold);

    std::printf("%-12s %8s %11s  %s\n", "level", "present", "recognized", "accuracy");
    for (const eval::LevelReport& level : report.levels) {
      std::printf("%-12s %8lld %11lld  %s\n", eval::to_string(level.level),
                  (long long)level.present, (long long)level.recognized,
                  eval::format_percent(level.accuracy_percent, config.rounding).c_str());
    }
    if (!ensure_dir(config.out_dir)) return exit_unwritable_output;
    write_text(config.out_dir / "report.json", serialize::to_json(report, config.rounding));
    return exit_ok;
  } catch (const io::UnreadableInput& e) {
    diagnose("unreadable_input", e.what());
    return exit_unreadable_input;
  } catch (const serialize::SchemaError& e) {
    diagnose("schema_mismatch", e.what());
    return exit_schema_mismatch;
  } catch (const eval::DimensionMismatch& e) {
    diagnose("schema_mismatch", e.what());
    return exit_schema_mismatch;
  } catch (const io::UnwritableOutput& e) {
    diagnose("unwritable_output", e.what());
    return exit_unwritable_output;
  }
}

int run_preprocess(const PreprocessConfig& config) {
  try {
    if (!ensure_dir(config.out_dir)) return exit_unwritable_output;
    io::Decoded decoded = io::read_image(config.input);
    const GrayImage gray =
        decoded.rgb ? preprocess::grayscale(*decoded.rgb) : std::move(decoded.gray);

    const preprocess::ThresholdLevel level = preprocess::otsu_threshold(gray);
    BinaryImage binary = level.degenerate
                             ? BinaryImage::Constant(gray.rows(), gray.cols(), false)
                             : preprocess::binarize(gray, level);
    io::write_pgm(config.out_dir / "binarized.pgm", io::to_document_gray(binary));

    binary = preprocess::denoise(binary, config.denoise_min_area);
    io::write_pgm(config.out_dir / "denoised.pgm", io::to_document_gray(binary));

    nlohmann::json summary{{"threshold", int(level.level)},
                           {"degenerate", level.degenerate},
                           {"skew_angle_deg", 0.0},
                           {"header_band", nullptr}};
    if (config.deskew && binary.count() > 0) {
      const preprocess::SkewEstimate est = preprocess::estimate_skew(binary);
      summary["skew_angle_deg"] = est.angle_deg;
      if (std::abs(est.angle_deg) > 1e-9) binary = preprocess::rotate(binary, -est.angle_deg);
      io::write_pgm(config.out_dir / "deskewed.pgm", io::to_document_gray(binary));
    }
    if (config.dump_thinned)
      io::write_pgm(config.out_dir / "thinned.pgm",
                    io::to_document_gray(preprocess::thin(binary)));
    if (config.dump_edges)
      io::write_pgm(config.out_dir / "edges.pgm", io::to_document_gray(preprocess::edges(binary)));
    if (config.shirorekha) {
      try {
        const preprocess::ShirorekhaResult result = preprocess::remove_shirorekha(binary);
        summary["header_band"] = nlohmann::json::array({result.band.top, result.band.bottom});
        io::write_pgm(config.out_dir / "header_removed.pgm", io::to_document_gray(result.image));
      } catch (const preprocess::NoHeaderFound&) {
      } catch (const preprocess::BlankImage&) {
      }
    }
    std::cout << summary.dump() << "\n";
    return exit_ok;
  } catch (const io::UnreadableInput& e) {
    diagnose("unreadable_input", e.what());
    return exit_unreadable_input;
  } catch (const io::MalformedImage& e) {
    diagnose("malformed_image", e.what());
    return exit_malformed_image;
  } catch (const io::UnwritableOutput& e) {
    diagnose("unwritable_output", e.what());
    return exit_unwritable_output;
  }
}

}  // namespace segdoc::cli
