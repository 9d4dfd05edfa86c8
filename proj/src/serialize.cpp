#include "segdoc/serialize.hpp"

#include <json.hpp>

#include <utility>

namespace segdoc::serialize {

namespace {

using nlohmann::json;

json to_array(const BoundingBox& b) { return json::array({b.x, b.y, b.w, b.h}); }

json to_array(const synth::IntRange& r) { return json::array({r.min, r.max}); }

// Strict readers: every lookup and conversion funnels through here so any
// shape problem surfaces as SchemaError.
template <typename Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw SchemaError(std::string(what) + ": " + e.what());
  }
}

json parse(const std::string& text, const char* what) {
  return guarded(what, [&] { return json::parse(text); });
}

BoundingBox box_from(const json& j) {
  if (!j.is_array() || j.size() != 4) throw SchemaError("bbox must be [x,y,w,h]");
  BoundingBox b{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
  if (b.w < 1 || b.h < 1) throw SchemaError("bbox must have positive size");
  return b;
}

synth::IntRange range_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw SchemaError("range must be [min,max]");
  return {j[0].get<int>(), j[1].get<int>()};
}

void expect_keys(const json& j, std::initializer_list<const char*> keys, const char* what) {
  if (!j.is_object()) throw SchemaError(std::string(what) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw SchemaError(std::string(what) + ": unknown key '" + key + "'");
  }
}

}  // namespace

std::string to_json(const segmentation::SegmentTree& tree) {
  json lines = json::array();
  for (const auto& line : tree.lines) {
    json words = json::array();
    for (const auto& word : line.words) {
      json glyphs = json::array();
      for (const auto& glyph : word.glyphs) glyphs.push_back({{"bbox", to_array(glyph.bbox)}});
      words.push_back({{"bbox", to_array(word.bbox)}, {"glyphs", std::move(glyphs)}});
    }
    lines.push_back({{"bbox", to_array(line.bbox)}, {"words", std::move(words)}});
  }
  const json j = {
      {"lines", std::move(lines)},
      {"page", {{"h", tree.page_height}, {"w", tree.page_width}}},
      {"params",
       {{"char_separator_max_count", tree.params.char_separator_max_count},
        {"col_noise_threshold", tree.params.col_noise_threshold},
        {"min_gap_rows", tree.params.min_gap_rows},
        {"min_word_gap_cols", tree.params.min_word_gap_cols},
        {"row_noise_threshold", tree.params.row_noise_threshold}}},
      {"provenance",
       {{"denoise_min_area", tree.provenance.denoise_min_area},
        {"deskew", tree.provenance.deskew},
        {"skew_angle_deg", tree.provenance.skew_angle_deg},
        {"threshold_level", tree.provenance.threshold_level}}},
  };
  return j.dump(2) + "\n";
}

segmentation::SegmentTree tree_from_json(const std::string& text) {
  const json j = parse(text, "segments");
  return guarded("segments", [&] {
    expect_keys(j, {"lines", "page", "params", "provenance"}, "segments");
    segmentation::SegmentTree tree;
    tree.page_width = j.at("page").at("w").get<int>();
    tree.page_height = j.at("page").at("h").get<int>();
    const json& p = j.at("params");
    expect_keys(p,
                {"char_separator_max_count", "col_noise_threshold", "min_gap_rows",
                 "min_word_gap_cols", "row_noise_threshold"},
                "params");
    tree.params.char_separator_max_count = p.at("char_separator_max_count").get<int>();
    tree.params.col_noise_threshold = p.at("col_noise_threshold").get<int>();
    tree.params.min_gap_rows = p.at("min_gap_rows").get<int>();
    tree.params.min_word_gap_cols = p.at("min_word_gap_cols").get<int>();
    tree.params.row_noise_threshold = p.at("row_noise_threshold").get<int>();
    const json& pr = j.at("provenance");
    expect_keys(pr, {"denoise_min_area", "deskew", "skew_angle_deg", "threshold_level"},
                "provenance");
    tree.provenance.denoise_min_area = pr.at("denoise_min_area").get<int>();
    tree.provenance.deskew = pr.at("deskew").get<bool>();
    tree.provenance.skew_angle_deg = pr.at("skew_angle_deg").get<double>();
    tree.provenance.threshold_level = pr.at("threshold_level").get<int>();
    for (const json& jline : j.at("lines")) {
      expect_keys(jline, {"bbox", "words"}, "line");
      segmentation::LineSegment line;
      line.bbox = box_from(jline.at("bbox"));
      line.index = int(tree.lines.size());
      for (const json& jword : jline.at("words")) {
        expect_keys(jword, {"bbox", "glyphs"}, "word");
        segmentation::WordSegment word;
        word.bbox = box_from(jword.at("bbox"));
        word.line_index = line.index;
        word.index = int(line.words.size());
        for (const json& jglyph : jword.at("glyphs")) {
          expect_keys(jglyph, {"bbox"}, "glyph");
          segmentation::GlyphSegment glyph;
          glyph.bbox = box_from(jglyph.at("bbox"));
          glyph.word_index = word.index;
          glyph.index = int(word.glyphs.size());
          word.glyphs.push_back(std::move(glyph));
        }
        line.words.push_back(std::move(word));
      }
      tree.lines.push_back(std::move(line));
    }
    return tree;
  });
}

std::string to_json(const synth::Manifest& manifest) {
  json lines = json::array();
  for (const auto& line : manifest.lines) {
    json words = json::array();
    for (const auto& word : line.words) {
      json glyphs = json::array();
      for (const auto& glyph : word.glyphs)
        glyphs.push_back({{"x0", glyph.x0}, {"x1", glyph.x1}});
      words.push_back({{"digit", word.digit},
                       {"glyphs", std::move(glyphs)},
                       {"x0", word.x0},
                       {"x1", word.x1}});
    }
    lines.push_back({{"words", std::move(words)}, {"y0", line.y0}, {"y1", line.y1}});
  }
  json specks = json::array();
  for (const auto& [x, y] : manifest.specks) specks.push_back(json::array({x, y}));
  const json j = {
      {"lines", std::move(lines)},
      {"page", {{"h", manifest.page_height}, {"w", manifest.page_width}}},
      {"skew_angle_deg", manifest.skew_angle_deg},
      {"specks", std::move(specks)},
  };
  return j.dump(2) + "\n";
}

synth::Manifest manifest_from_json(const std::string& text) {
  const json j = parse(text, "manifest");
  return guarded("manifest", [&] {
    expect_keys(j, {"lines", "page", "skew_angle_deg", "specks"}, "manifest");
    synth::Manifest m;
    m.page_width = j.at("page").at("w").get<int>();
    m.page_height = j.at("page").at("h").get<int>();
    m.skew_angle_deg = j.at("skew_angle_deg").get<double>();
    for (const json& js : j.at("specks")) {
      if (!js.is_array() || js.size() != 2) throw SchemaError("speck must be [x,y]");
      m.specks.emplace_back(js[0].get<int>(), js[1].get<int>());
    }
    for (const json& jline : j.at("lines")) {
      expect_keys(jline, {"words", "y0", "y1"}, "manifest line");
      synth::LineTruth line;
      line.y0 = jline.at("y0").get<int>();
      line.y1 = jline.at("y1").get<int>();
      for (const json& jword : jline.at("words")) {
        expect_keys(jword, {"digit", "glyphs", "x0", "x1"}, "manifest word");
        synth::WordTruth word;
        word.digit = jword.at("digit").get<bool>();
        word.x0 = jword.at("x0").get<int>();
        word.x1 = jword.at("x1").get<int>();
        for (const json& jglyph : jword.at("glyphs")) {
          expect_keys(jglyph, {"x0", "x1"}, "manifest glyph");
          word.glyphs.push_back({jglyph.at("x0").get<int>(), jglyph.at("x1").get<int>()});
        }
        line.words.push_back(std::move(word));
      }
      m.lines.push_back(std::move(line));
    }
    return m;
  });
}

std::string to_json(const synth::PageSpec& spec) {
  const json j = {
      {"detached_bar_probability", spec.detached_bar_probability},
      {"digit_word_probability", spec.digit_word_probability},
      {"glyph_height", to_array(spec.glyph_height)},
      {"glyph_width", to_array(spec.glyph_width)},
      {"glyphs_per_word", to_array(spec.glyphs_per_word)},
      {"header_thickness", spec.header_thickness},
      {"inter_line_gap", to_array(spec.inter_line_gap)},
      {"inter_word_gap", to_array(spec.inter_word_gap)},
      {"intra_word_gap", to_array(spec.intra_word_gap)},
      {"line_count", spec.line_count},
      {"margin", spec.margin},
      {"noise_speck_count", spec.noise_speck_count},
      {"page_height", spec.page_height},
      {"page_width", spec.page_width},
      {"seed", spec.seed},
      {"skew_angle_deg", spec.skew_angle_deg},
      {"words_per_line", to_array(spec.words_per_line)},
  };
  return j.dump(2) + "\n";
}

synth::PageSpec page_spec_from_json(const std::string& text) {
  const json j = parse(text, "page spec");
  return guarded("page spec", [&] {
    expect_keys(j,
                {"detached_bar_probability", "digit_word_probability", "glyph_height",
                 "glyph_width", "glyphs_per_word", "header_thickness", "inter_line_gap",
                 "inter_word_gap", "intra_word_gap", "line_count", "margin",
                 "noise_speck_count", "page_height", "page_width", "seed", "skew_angle_deg",
                 "words_per_line"},
                "page spec");
    // Absent keys keep their defaults, so a spec file may name only what it
    // overrides.
    synth::PageSpec spec;
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("page_width")) spec.page_width = j["page_width"].get<int>();
    if (j.contains("page_height")) spec.page_height = j["page_height"].get<int>();
    if (j.contains("line_count")) spec.line_count = j["line_count"].get<int>();
    if (j.contains("words_per_line")) spec.words_per_line = range_from(j["words_per_line"]);
    if (j.contains("glyphs_per_word")) spec.glyphs_per_word = range_from(j["glyphs_per_word"]);
    if (j.contains("glyph_width")) spec.glyph_width = range_from(j["glyph_width"]);
    if (j.contains("glyph_height")) spec.glyph_height = range_from(j["glyph_height"]);
    if (j.contains("header_thickness")) spec.header_thickness = j["header_thickness"].get<int>();
    if (j.contains("inter_line_gap")) spec.inter_line_gap = range_from(j["inter_line_gap"]);
    if (j.contains("inter_word_gap")) spec.inter_word_gap = range_from(j["inter_word_gap"]);
    if (j.contains("intra_word_gap")) spec.intra_word_gap = range_from(j["intra_word_gap"]);
    if (j.contains("digit_word_probability"))
      spec.digit_word_probability = j["digit_word_probability"].get<double>();
    if (j.contains("detached_bar_probability"))
      spec.detached_bar_probability = j["detached_bar_probability"].get<double>();
    if (j.contains("skew_angle_deg")) spec.skew_angle_deg = j["skew_angle_deg"].get<double>();
    if (j.contains("noise_speck_count"))
      spec.noise_speck_count = j["noise_speck_count"].get<int>();
    if (j.contains("margin")) spec.margin = j["margin"].get<int>();
    return spec;
  });
}

std::string to_json(const eval::PageReport& report, eval::Rounding rounding) {
  json levels = json::array();
  for (int i = 0; i < 3; ++i) {
    const eval::LevelReport& level = report.levels[i];
    const eval::BoxMatchReport& boxes = report.boxes[i];
    levels.push_back({
        {"accuracy_display", eval::format_percent(level.accuracy_percent, rounding)},
        {"accuracy_percent", level.accuracy_percent},
        {"boxes",
         {{"matched", boxes.matched},
          {"over_segmented", boxes.over_segmented},
          {"under_segmented", boxes.under_segmented}}},
        {"level", eval::to_string(level.level)},
        {"present", level.present},
        {"recognized", level.recognized},
    });
  }
  const json j = {
      {"iou_threshold", report.boxes[0].iou_threshold},
      {"levels", std::move(levels)},
  };
  return j.dump(2) + "\n";
}

}  // namespace segdoc::serialize
