#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "conical/sparse_vector.hpp"

namespace conical {

using Tokens = std::vector<std::string>;

struct Document {
  std::string id;
  std::string text;
};

/// Lowercases ASCII letters and splits on every maximal run of characters
/// that are not ASCII alphanumerics. Bytes >= 0x80 count as word characters,
/// so UTF-8 words are kept whole.
Tokens tokenize(std::string_view text);

/// Bijection between terms and dimensions, terms in lexicographic (byte) order.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// Terms must be distinct; they are sorted on construction.
  explicit Vocabulary(std::vector<std::string> terms);

  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  std::optional<std::uint32_t> lookup(std::string_view term) const;
  const std::string& term(std::size_t index) const { return terms_.at(index); }
  std::span<const std::string> terms() const noexcept { return terms_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.terms_ == b.terms_;
  }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::uint32_t, Hash, std::equal_to<>> index_;
};

/// Document counts per vocabulary dimension over one corpus.
class TermStatistics {
 public:
  TermStatistics(std::vector<std::uint32_t> doc_counts, std::size_t n_docs);

  std::size_t documents() const noexcept { return n_docs_; }
  std::size_t dimension() const noexcept { return doc_counts_.size(); }
  std::uint32_t doc_count(std::size_t d) const { return doc_counts_.at(d); }
  /// Fraction of documents containing term d.
  double rate(std::size_t d) const;

 private:
  std::vector<std::uint32_t> doc_counts_;
  std::size_t n_docs_;
};

Vocabulary build_vocabulary(std::span<const Tokens> corpus);

/// Occurrences / total document tokens for in-vocabulary terms. OOV tokens
/// still count toward the document length.
SparseVector term_frequencies(std::span<const std::string> tokens, const Vocabulary& vocab);

TermStatistics document_frequency_rates(std::span<const Tokens> corpus, const Vocabulary& vocab);

}  // namespace conical
