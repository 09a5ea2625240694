#include "conical/corpus_io.hpp"

#include <fstream>

#include <json.hpp>

#include "conical/error.hpp"

namespace conical {

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::file_not_found, "cannot open " + path.string());
  return in;
}

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

}  // namespace

bool is_valid_utf8(std::string_view bytes) {
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(bytes[i]);
    std::size_t len;
    char32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // overlong forms, surrogates, out of range
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      return false;
    }
    i += len;
  }
  return true;
}

std::vector<Document> read_line_corpus(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::vector<Document> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!is_valid_utf8(line)) {
      throw Error(ErrorKind::invalid_utf8, where(path, lineno) + ": invalid UTF-8");
    }
    docs.push_back({std::to_string(lineno), std::move(line)});
  }
  if (in.bad()) throw Error(ErrorKind::io, "read error on " + path.string());
  return docs;
}

std::vector<LabeledDocument> read_labeled_jsonl(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::vector<LabeledDocument> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!is_valid_utf8(line)) {
      throw Error(ErrorKind::invalid_utf8, where(path, lineno) + ": invalid UTF-8");
    }
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::malformed_line, where(path, lineno) + ": " + e.what());
    }
    if (!record.is_object() || !record.contains("text") || !record["text"].is_string() ||
        !record.contains("label") || !record["label"].is_string()) {
      throw Error(ErrorKind::malformed_line,
                  where(path, lineno) + ": expected string fields \"text\" and \"label\"");
    }
    LabeledDocument doc;
    doc.text = record["text"].get<std::string>();
    doc.label = record["label"].get<std::string>();
    if (auto id = record.find("id"); id != record.end()) {
      doc.id = id->is_string() ? id->get<std::string>() : id->dump();
    } else {
      doc.id = std::to_string(lineno);
    }
    docs.push_back(std::move(doc));
  }
  if (in.bad()) throw Error(ErrorKind::io, "read error on " + path.string());
  return docs;
}

}  // namespace conical
