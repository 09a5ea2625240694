#include "conical/weighting.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

#include "conical/error.hpp"

namespace conical {

void WeightingConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(ErrorKind::invalid_argument, "epsilon must lie in (0, 0.5)");
  }
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

namespace {

// Acklam's rational approximation for the lower half, p in (0, 0.5].
// Relative error ~1.15e-9 before refinement.
double lower_quantile_estimate(double p) {
  static constexpr std::array a{-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array b{-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
  static constexpr std::array c{-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array d{7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::invalid_argument, "probability out of open interval");
  }
  if (p == 0.5) return 0.0;
  // Solve in the lower tail; 1 - p is exact for p >= 0.5.
  const bool upper = p > 0.5;
  const double tail = upper ? 1.0 - p : p;
  double x = lower_quantile_estimate(tail);
  // One Halley step against the erfc-based CDF.
  const double e = normal_cdf(x) - tail;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return upper ? -x : x;
}

double offset_rate(double rate, double epsilon) {
  return std::clamp(rate + epsilon, epsilon, 1.0 - epsilon);
}

namespace {

double normal_separation(double rate_a, double rate_b, double epsilon) {
  if (!(rate_a >= 0.0 && rate_a <= 1.0 && rate_b >= 0.0 && rate_b <= 1.0)) {
    throw Error(ErrorKind::invalid_argument, "rates must lie in [0, 1]");
  }
  return std::abs(inverse_normal_cdf(offset_rate(rate_a, epsilon)) -
                  inverse_normal_cdf(offset_rate(rate_b, epsilon)));
}

}  // namespace

double bns_score(double tpr, double fpr, double epsilon) {
  return normal_separation(tpr, fpr, epsilon);
}

double ne_score(double tpr, double word_freq, double epsilon) {
  return normal_separation(tpr, word_freq, epsilon);
}

WordFrequencyTable WordFrequencyTable::from_counts(
    std::span<const std::pair<std::string, std::uint64_t>> counts) {
  std::unordered_map<std::string, std::uint64_t, Hash, std::equal_to<>> raw;
  std::uint64_t total = 0;
  for (const auto& [term, count] : counts) {
    std::string key = term;
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) {
      return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
    });
    raw[key] += count;
    total += count;
  }
  if (total == 0) throw Error(ErrorKind::empty_file, "frequency table has zero total count");
  WordFrequencyTable table;
  table.total_ = total;
  table.freq_.reserve(raw.size());
  for (auto& [term, count] : raw) {
    table.freq_.emplace(term, static_cast<double>(count) / static_cast<double>(total));
  }
  return table;
}

WordFrequencyTable WordFrequencyTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::file_not_found, "cannot open lexicon " + path.string());

  std::vector<std::pair<std::string, std::uint64_t>> counts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto where = path.string() + ":" + std::to_string(lineno);
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || line.find('\t', tab + 1) != std::string::npos) {
      throw Error(ErrorKind::malformed_line, where + ": expected term<TAB>count");
    }
    std::uint64_t count = 0;
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec != std::errc() || ptr != last || first == last) {
      throw Error(ErrorKind::non_numeric_count, where + ": count is not a nonnegative integer");
    }
    counts.emplace_back(line.substr(0, tab), count);
  }
  if (counts.empty()) throw Error(ErrorKind::empty_file, "lexicon " + path.string() + " is empty");
  return from_counts(counts);
}

double WordFrequencyTable::frequency(std::string_view term) const {
  auto it = freq_.find(term);
  return it == freq_.end() ? 0.0 : it->second;
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::invalid_argument, "weights must be finite and nonnegative");
    }
  }
}

WeightVector ne_weight_vector(const Vocabulary& vocab, const TermStatistics& stats,
                              const WordFrequencyTable& table, double epsilon) {
  if (vocab.empty()) throw Error(ErrorKind::empty_corpus, "empty vocabulary");
  if (stats.dimension() != vocab.size()) {
    throw Error(ErrorKind::dimension_mismatch, "term statistics do not cover the vocabulary");
  }
  std::vector<double> w(vocab.size());
  for (std::size_t d = 0; d < vocab.size(); ++d) {
    w[d] = ne_score(stats.rate(d), table.frequency(vocab.term(d)), epsilon);
  }
  return WeightVector(std::move(w));
}

WeightVector idf_weight_vector(const TermStatistics& stats) {
  std::vector<double> w(stats.dimension());
  const auto n = static_cast<double>(stats.documents());
  for (std::size_t d = 0; d < w.size(); ++d) {
    w[d] = std::max(0.0, std::log(n / (1.0 + stats.doc_count(d))));
  }
  return WeightVector(std::move(w));
}

SparseVector weighted_unit_vector(const SparseVector& tf, const WeightVector& weights) {
  if (tf.dimension() != weights.size()) {
    throw Error(ErrorKind::dimension_mismatch,
                "vector dimension " + std::to_string(tf.dimension()) + " does not match " +
                    std::to_string(weights.size()) + " weights");
  }
  std::vector<SparseEntry> entries;
  entries.reserve(tf.nonzeros());
  for (const auto& e : tf.entries()) {
    const double v = e.value * weights[e.index];
    if (v != 0.0) entries.push_back({e.index, v});
  }
  return unit_normalize(SparseVector(tf.dimension(), std::move(entries)));
}

SparseVector tfidf_vector(const SparseVector& tf, const TermStatistics& corpus_doc_freqs) {
  return weighted_unit_vector(tf, idf_weight_vector(corpus_doc_freqs));
}

}  // namespace conical
