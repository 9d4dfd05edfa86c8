#pragma once

#include "segdoc/eval.hpp"
#include "segdoc/segment.hpp"
#include "segdoc/synth.hpp"

#include <string>

namespace segdoc::serialize {

/// Raised when a JSON document does not parse or does not match the
/// expected shape.
struct SchemaError : Error {
  using Error::Error;
};

// All writers emit pretty-printed JSON with keys in sorted order and a
// trailing newline, so parse -> dump round-trips are byte-identical.

std::string to_json(const segmentation::SegmentTree& tree);
segmentation::SegmentTree tree_from_json(const std::string& text);

std::string to_json(const synth::Manifest& manifest);
synth::Manifest manifest_from_json(const std::string& text);

std::string to_json(const synth::PageSpec& spec);
synth::PageSpec page_spec_from_json(const std::string& text);

std::string to_json(const eval::PageReport& report, eval::Rounding rounding);

}  // namespace segdoc::serialize
