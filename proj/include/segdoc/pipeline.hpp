#pragma once

#include "segdoc/eval.hpp"
#include "segdoc/preprocess.hpp"
#include "segdoc/segment.hpp"
#include "segdoc/synth.hpp"

#include <filesystem>
#include <vector>

namespace segdoc::cli {

// Exit codes shared by all subcommands.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_unreadable_input = 2;
inline constexpr int exit_malformed_image = 3;
inline constexpr int exit_unwritable_output = 4;
inline constexpr int exit_infeasible_spec = 5;
inline constexpr int exit_schema_mismatch = 6;

/// Settings for the `segment` subcommand. One page per input file; with
/// several inputs each page gets its own subdirectory under out_dir.
struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path out_dir = ".";
  segmentation::SegmentParams params;
  bool deskew = true;
  preprocess::AngleRange skew_range;
  double skew_step_deg = 0.1;
  int denoise_min_area = 4;
  bool emit_json = true;
  bool emit_crops = false;
  bool emit_overlay = false;
  int jobs = 1;
};

struct SynthConfig {
  synth::PageSpec spec;
  std::filesystem::path out_dir = ".";
};

struct EvalConfig {
  std::filesystem::path segments_path;
  std::filesystem::path manifest_path;
  std::filesystem::path out_dir = ".";
  eval::Rounding rounding = eval::Rounding::HalfUp;
  double iou_threshold = 0.5;
};

struct PreprocessConfig {
  std::filesystem::path input;
  std::filesystem::path out_dir = ".";
  bool deskew = true;
  int denoise_min_area = 4;
  bool dump_thinned = true;
  bool dump_edges = true;
  bool shirorekha = false;  // treat the input as one word and strip its header
};

/// Run grayscale -> threshold -> binarize -> denoise -> [deskew] ->
/// segmentation and write segments.json (plus optional crops/overlay).
/// Returns an exit code; diagnostics go to stderr as single-line JSON.
int run_segment(const RunConfig& config);

/// Write page.pgm and manifest.json for the given spec.
int run_synth(const SynthConfig& config);

/// Compare segments.json against manifest.json, print the per-level table
/// and write report.json.
int run_eval(const EvalConfig& config);

/// Dump the intermediate preprocessing stages of one input image.
int run_preprocess(const PreprocessConfig& config);

}  // namespace segdoc::cli
