#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "conical/sparse_vector.hpp"
#include "conical/text_pipeline.hpp"

namespace conical {

inline constexpr double kDefaultEpsilon = 0.0005;

struct WeightingConfig {
  double epsilon = kDefaultEpsilon;
  std::filesystem::path lexicon_path;

  /// Throws unless 0 < epsilon < 0.5.
  void validate() const;
};

/// Standard normal quantile. Throws for p outside (0, 1).
double inverse_normal_cdf(double p);

/// Standard normal CDF, 0.5 * erfc(-z / sqrt(2)).
double normal_cdf(double z);

/// rate + epsilon, clamped to [epsilon, 1 - epsilon] so that a rate of 1
/// still has a finite quantile.
double offset_rate(double rate, double epsilon);

/// |F^-1(tpr + eps) - F^-1(fpr + eps)|
double bns_score(double tpr, double fpr, double epsilon);

/// Same separation with the negative-class rate replaced by the word's
/// general-language frequency.
double ne_score(double tpr, double word_freq, double epsilon);

/// Relative word frequencies in general language. Absent words read as 0.
class WordFrequencyTable {
 public:
  WordFrequencyTable() = default;

  /// Builds relative frequencies from raw counts. Terms are lowercased and
  /// counts of terms that collide after lowercasing are summed.
  static WordFrequencyTable from_counts(std::span<const std::pair<std::string, std::uint64_t>> counts);

  /// Reads `term<TAB>count` lines.
  static WordFrequencyTable load(const std::filesystem::path& path);

  double frequency(std::string_view term) const;
  std::uint64_t total_tokens() const noexcept { return total_; }
  std::size_t size() const noexcept { return freq_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, double, Hash, std::equal_to<>> freq_;
  std::uint64_t total_ = 0;
};

inline WordFrequencyTable load_frequency_table(const std::filesystem::path& path) {
  return WordFrequencyTable::load(path);
}

/// One nonnegative weight per vocabulary dimension.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> weights);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t d) const { return weights_[d]; }
  std::span<const double> values() const noexcept { return weights_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<double> weights_;
};

/// Entry d is ne_score(tpr_d, freq(term_d), epsilon).
WeightVector ne_weight_vector(const Vocabulary& vocab, const TermStatistics& stats,
                              const WordFrequencyTable& table, double epsilon);

/// Entry d is max(0, ln(n_docs / (1 + df_d))).
WeightVector idf_weight_vector(const TermStatistics& stats);

/// Elementwise tf * weight, then unit-normalized. Zero products are not stored.
SparseVector weighted_unit_vector(const SparseVector& tf, const WeightVector& weights);

inline SparseVector ne_tf_vector(const SparseVector& tf, const WeightVector& ne_weights) {
  return weighted_unit_vector(tf, ne_weights);
}

SparseVector tfidf_vector(const SparseVector& tf, const TermStatistics& corpus_doc_freqs);

}  // namespace conical
