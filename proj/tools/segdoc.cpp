#include "segdoc/pipeline.hpp"
#include "segdoc/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using segdoc::cli::exit_ok;
using segdoc::cli::exit_schema_mismatch;
using segdoc::cli::exit_unreadable_input;
using segdoc::cli::exit_usage;

void diagnostic(const char* kind, const std::string& detail) {
  const nlohmann::json j{{"detail", detail}, {"error", kind}};
  std::cerr << j.dump() << "\n";
}

void usage_error(const std::string& detail) { diagnostic("usage", detail); }

struct RangeFlag {
  std::vector<int> values;

  void apply(segdoc::synth::IntRange& target) const {
    if (values.size() == 2) target = {values[0], values[1]};
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projection-profile segmentation of document images into lines, words and "
               "characters, with a synthetic-page generator and an accuracy evaluator."};
  app.require_subcommand(1);

  // --- segment ---------------------------------------------------------
  segdoc::cli::RunConfig run;
  std::vector<std::string> emit = {"json"};
  auto* seg = app.add_subcommand("segment", "Segment document images");
  seg->add_option("--input", run.inputs, "Input image(s): PGM, PPM or PNG")->required();
  seg->add_option("--out-dir", run.out_dir, "Output directory (per-page subdirs for multiple inputs)");
  seg->add_flag_callback("--no-deskew", [&run] { run.deskew = false; },
                         "Skip skew estimation and correction");
  seg->add_option("--min-area", run.denoise_min_area,
                  "Erase connected components smaller than this many pixels")
      ->check(CLI::NonNegativeNumber);
  seg->add_option("--row-noise", run.params.row_noise_threshold,
                  "Rows with at most this many ink pixels count as line gaps")
      ->check(CLI::NonNegativeNumber);
  seg->add_option("--col-noise", run.params.col_noise_threshold,
                  "Columns with at most this many ink pixels count as word gaps")
      ->check(CLI::NonNegativeNumber);
  seg->add_option("--min-word-gap", run.params.min_word_gap_cols,
                  "Merge word spans separated by fewer gap columns than this")
      ->check(CLI::NonNegativeNumber);
  seg->add_option("--min-gap-rows", run.params.min_gap_rows,
                  "Merge line bands separated by fewer gap rows than this")
      ->check(CLI::NonNegativeNumber);
  seg->add_option("--char-sep-max", run.params.char_separator_max_count,
                  "Thinned-profile count at or below which a column separates characters")
      ->check(CLI::PositiveNumber);
  seg->add_option("--emit", emit, "Outputs to produce")
      ->delimiter(',')
      ->check(CLI::IsMember({"json", "crops", "overlay"}));
  seg->add_option("--jobs", run.jobs, "Worker threads over multiple inputs")
      ->check(CLI::PositiveNumber);
  seg->add_option("--skew-range", run.skew_range.max_deg,
                  "Search skew angles in [-range, +range] degrees")
      ->check(CLI::PositiveNumber);
  seg->add_option("--skew-step", run.skew_step_deg, "Skew search step in degrees")
      ->check(CLI::PositiveNumber);

  // --- synth -----------------------------------------------------------
  segdoc::cli::SynthConfig synth;
  std::string spec_file;
  std::map<std::string, RangeFlag> ranges;
  auto* syn = app.add_subcommand("synth", "Generate a synthetic page with ground truth");
  syn->add_option("--spec", spec_file, "JSON page spec; flags below override its values");
  syn->add_option("--out-dir", synth.out_dir, "Output directory for page.pgm and manifest.json");
  auto* seed_opt = syn->add_option("--seed", synth.spec.seed, "Generator seed");
  auto* pw_opt = syn->add_option("--page-w", synth.spec.page_width, "Page width in pixels");
  auto* ph_opt = syn->add_option("--page-h", synth.spec.page_height, "Page height in pixels");
  auto* lines_opt = syn->add_option("--lines", synth.spec.line_count, "Number of text lines");
  auto* digit_opt = syn->add_option("--digit-prob", synth.spec.digit_word_probability,
                                    "Probability a word is a headerless digit word");
  auto* bar_opt = syn->add_option("--bar-prob", synth.spec.detached_bar_probability,
                                  "Probability a glyph carries a detached vertical bar");
  auto* skew_opt = syn->add_option("--skew", synth.spec.skew_angle_deg,
                                   "Rotate the finished page by this many degrees");
  auto* speck_opt = syn->add_option("--specks", synth.spec.noise_speck_count,
                                    "Single-pixel noise specks to sprinkle");
  auto* margin_opt = syn->add_option("--margin", synth.spec.margin, "Blank margin in pixels");
  auto* header_opt = syn->add_option("--header-thickness", synth.spec.header_thickness,
                                     "Header band thickness in rows");
  for (const char* name : {"--words-per-line", "--glyphs-per-word", "--glyph-w", "--glyph-h",
                           "--line-gap", "--word-gap", "--glyph-gap"}) {
    syn->add_option(name, ranges[name].values, "Range as MIN MAX")->expected(2);
  }

  // --- eval ------------------------------------------------------------
  segdoc::cli::EvalConfig eval;
  std::string rounding = "half-up";
  auto* ev = app.add_subcommand("eval", "Score segments.json against manifest.json");
  ev->add_option("--segments", eval.segments_path, "segments.json from the segment subcommand")
      ->required();
  ev->add_option("--manifest", eval.manifest_path, "manifest.json from the synth subcommand")
      ->required();
  ev->add_option("--out-dir", eval.out_dir, "Directory for report.json");
  ev->add_option("--rounding", rounding, "Percentage display mode")
      ->check(CLI::IsMember({"truncate", "half-up", "exact"}));
  ev->add_option("--iou", eval.iou_threshold, "Box-match IoU threshold in (0,1]");

  // --- preprocess ------------------------------------------------------
  segdoc::cli::PreprocessConfig pre;
  auto* pp = app.add_subcommand("preprocess", "Dump the preprocessing stages of one image");
  pp->add_option("--input", pre.input, "Input image")->required();
  pp->add_option("--out-dir", pre.out_dir, "Output directory for stage images");
  pp->add_flag_callback("--no-deskew", [&pre] { pre.deskew = false; },
                        "Skip skew estimation and correction");
  pp->add_option("--min-area", pre.denoise_min_area,
                 "Erase connected components smaller than this many pixels")
      ->check(CLI::NonNegativeNumber);
  pp->add_flag("--shirorekha", pre.shirorekha,
               "Treat the whole input as one word and strip its header line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    usage_error(e.what());
    return exit_usage;
  }

  if (seg->parsed()) {
    run.emit_json = run.emit_crops = run.emit_overlay = false;
    for (const std::string& kind : emit) {
      if (kind == "json") run.emit_json = true;
      if (kind == "crops") run.emit_crops = true;
      if (kind == "overlay") run.emit_overlay = true;
    }
    if (seg->count("--skew-range") > 0) run.skew_range.min_deg = -run.skew_range.max_deg;
    return segdoc::cli::run_segment(run);
  }

  if (syn->parsed()) {
    if (!spec_file.empty()) {
      std::ifstream in(spec_file, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      if (!in) {
        diagnostic("unreadable_input", "cannot read spec file " + spec_file);
        return exit_unreadable_input;
      }
      segdoc::synth::PageSpec from_file;
      try {
        from_file = segdoc::serialize::page_spec_from_json(buf.str());
      } catch (const segdoc::serialize::SchemaError& e) {
        diagnostic("schema_mismatch", e.what());
        return exit_schema_mismatch;
      }
      // Flags given on the command line win over spec-file values.
      if (seed_opt->count() == 0) synth.spec.seed = from_file.seed;
      if (pw_opt->count() == 0) synth.spec.page_width = from_file.page_width;
      if (ph_opt->count() == 0) synth.spec.page_height = from_file.page_height;
      if (lines_opt->count() == 0) synth.spec.line_count = from_file.line_count;
      if (digit_opt->count() == 0)
        synth.spec.digit_word_probability = from_file.digit_word_probability;
      if (bar_opt->count() == 0)
        synth.spec.detached_bar_probability = from_file.detached_bar_probability;
      if (skew_opt->count() == 0) synth.spec.skew_angle_deg = from_file.skew_angle_deg;
      if (speck_opt->count() == 0) synth.spec.noise_speck_count = from_file.noise_speck_count;
      if (margin_opt->count() == 0) synth.spec.margin = from_file.margin;
      if (header_opt->count() == 0) synth.spec.header_thickness = from_file.header_thickness;
      if (ranges["--words-per-line"].values.empty())
        synth.spec.words_per_line = from_file.words_per_line;
      if (ranges["--glyphs-per-word"].values.empty())
        synth.spec.glyphs_per_word = from_file.glyphs_per_word;
      if (ranges["--glyph-w"].values.empty()) synth.spec.glyph_width = from_file.glyph_width;
      if (ranges["--glyph-h"].values.empty()) synth.spec.glyph_height = from_file.glyph_height;
      if (ranges["--line-gap"].values.empty())
        synth.spec.inter_line_gap = from_file.inter_line_gap;
      if (ranges["--word-gap"].values.empty())
        synth.spec.inter_word_gap = from_file.inter_word_gap;
      if (ranges["--glyph-gap"].values.empty())
        synth.spec.intra_word_gap = from_file.intra_word_gap;
    }
    ranges["--words-per-line"].apply(synth.spec.words_per_line);
    ranges["--glyphs-per-word"].apply(synth.spec.glyphs_per_word);
    ranges["--glyph-w"].apply(synth.spec.glyph_width);
    ranges["--glyph-h"].apply(synth.spec.glyph_height);
    ranges["--line-gap"].apply(synth.spec.inter_line_gap);
    ranges["--word-gap"].apply(synth.spec.inter_word_gap);
    ranges["--glyph-gap"].apply(synth.spec.intra_word_gap);
    return segdoc::cli::run_synth(synth);
  }

  if (ev->parsed()) {
    if (rounding == "truncate") eval.rounding = segdoc::eval::Rounding::Truncate;
    if (rounding == "half-up") eval.rounding = segdoc::eval::Rounding::HalfUp;
    if (rounding == "exact") eval.rounding = segdoc::eval::Rounding::Exact;
    return segdoc::cli::run_eval(eval);
  }

  if (pp->parsed()) return segdoc::cli::run_preprocess(pre);

  usage_error("a subcommand is required");
  return exit_usage;
}
