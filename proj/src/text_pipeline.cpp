#include "conical/text_pipeline.hpp"

#include <algorithm>
#include <map>

#include "conical/error.hpp"

namespace conical {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

char ascii_lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

}  // namespace

Tokens tokenize(std::string_view text) {
  Tokens out;
  std::string current;
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      current.push_back(ascii_lower(c));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end());
  if (std::adjacent_find(terms_.begin(), terms_.end()) != terms_.end()) {
    throw Error(ErrorKind::invalid_argument, "vocabulary terms must be distinct");
  }
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    index_.emplace(terms_[i], static_cast<std::uint32_t>(i));
  }
}

std::optional<std::uint32_t> Vocabulary::lookup(std::string_view term) const {
  auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TermStatistics::TermStatistics(std::vector<std::uint32_t> doc_counts, std::size_t n_docs)
    : doc_counts_(std::move(doc_counts)), n_docs_(n_docs) {
  if (n_docs_ == 0) throw Error(ErrorKind::empty_corpus, "empty corpus");
  for (auto c : doc_counts_) {
    if (c > n_docs_) throw Error(ErrorKind::invalid_argument, "document count exceeds corpus size");
  }
}

double TermStatistics::rate(std::size_t d) const {
  return static_cast<double>(doc_counts_.at(d)) / static_cast<double>(n_docs_);
}

Vocabulary build_vocabulary(std::span<const Tokens> corpus) {
  if (corpus.empty()) throw Error(ErrorKind::empty_corpus, "empty corpus");
  std::vector<std::string> terms;
  for (const auto& doc : corpus) terms.insert(terms.end(), doc.begin(), doc.end());
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  return Vocabulary(std::move(terms));
}

SparseVector term_frequencies(std::span<const std::string> tokens, const Vocabulary& vocab) {
  if (vocab.empty()) throw Error(ErrorKind::empty_corpus, "empty vocabulary");
  std::map<std::uint32_t, std::size_t> counts;
  for (const auto& t : tokens) {
    if (auto d = vocab.lookup(t)) ++counts[*d];
  }
  std::vector<SparseEntry> entries;
  entries.reserve(counts.size());
  const auto total = static_cast<double>(tokens.size());
  for (const auto& [d, c] : counts) entries.push_back({d, static_cast<double>(c) / total});
  return SparseVector(vocab.size(), std::move(entries));
}

TermStatistics document_frequency_rates(std::span<const Tokens> corpus, const Vocabulary& vocab) {
  if (corpus.empty()) throw Error(ErrorKind::empty_corpus, "empty corpus");
  std::vector<std::uint32_t> counts(vocab.size(), 0);
  std::vector<std::size_t> last_seen(vocab.size(), corpus.size());
  for (std::size_t doc = 0; doc < corpus.size(); ++doc) {
    for (const auto& t : corpus[doc]) {
      auto d = vocab.lookup(t);
      if (!d || last_seen[*d] == doc) continue;
      last_seen[*d] = doc;
      ++counts[*d];
    }
  }
  return TermStatistics(std::move(counts), corpus.size());
}

}  // namespace conical
