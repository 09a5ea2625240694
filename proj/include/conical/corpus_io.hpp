#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "conical/text_pipeline.hpp"

namespace conical {

struct LabeledDocument {
  std::string id;
  std::string text;
  std::string label;
};

bool is_valid_utf8(std::string_view bytes);

/// One document per LF-terminated line; the id is the 1-based line number.
/// Invalid UTF-8 is rejected with the offending line number.
std::vector<Document> read_line_corpus(const std::filesystem::path& path);

/// JSON-lines records with string fields `text` and `label` (and optionally
/// `id`). Blank lines are skipped.
std::vector<LabeledDocument> read_labeled_jsonl(const std::filesystem::path& path);

}  // namespace conical
