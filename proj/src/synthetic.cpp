#include "conical/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "conical/error.hpp"

namespace conical {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::invalid_argument, "empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SparseVector random_unit_vector(std::size_t dimension, std::size_t nonzeros, std::mt19937_64& rng) {
  nonzeros = std::min(nonzeros, dimension);
  std::vector<SparseEntry> entries;
  entries.reserve(nonzeros);
  // Floyd's sampling of distinct indices.
  std::vector<std::uint32_t> chosen;
  for (std::size_t j = dimension - nonzeros; j < dimension; ++j) {
    auto t = static_cast<std::uint32_t>(uniform_below(rng, j + 1));
    if (std::find(chosen.begin(), chosen.end(), t) != chosen.end()) t = static_cast<std::uint32_t>(j);
    chosen.push_back(t);
  }
  for (auto idx : chosen) entries.push_back({idx, uniform_unit(rng) + 1e-3});
  return unit_normalize(SparseVector(dimension, std::move(entries)));
}

std::vector<SparseVector> random_unit_vectors(std::size_t count, std::size_t dimension,
                                              std::size_t nonzeros, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SparseVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_unit_vector(dimension, nonzeros, rng));
  return out;
}

BoxBounds random_box(std::size_t dimension, std::size_t corpus_size, std::size_t nonzeros,
                     std::uint64_t seed) {
  return fit(random_unit_vectors(corpus_size, dimension, nonzeros, seed));
}

namespace {

std::string pool_word(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03zu", prefix, i);
  return buf;
}

class ZipfSampler {
 public:
  explicit ZipfSampler(std::size_t n) : cumulative_(n) {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      total += 1.0 / static_cast<double>(k + 1);
      cumulative_[k] = total;
    }
    for (auto& c : cumulative_) c /= total;
  }

  std::size_t operator()(std::mt19937_64& rng) const {
    const double u = uniform_unit(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(it - cumulative_.begin(), cumulative_.size() - 1);
  }

  double probability(std::size_t k) const {
    return k == 0 ? cumulative_[0] : cumulative_[k] - cumulative_[k - 1];
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace

TwoTopicCorpus generate_two_topic_corpus(const TwoTopicCorpusSpec& spec) {
  if (spec.keywords_per_topic == 0 || spec.stopwords == 0 || spec.min_tokens == 0 ||
      spec.max_tokens < spec.min_tokens) {
    throw Error(ErrorKind::invalid_argument, "invalid two-topic corpus spec");
  }
  std::mt19937_64 rng(spec.seed);
  const ZipfSampler keyword_sampler(spec.keywords_per_topic);
  const ZipfSampler stopword_sampler(spec.stopwords);
  const char* prefixes[2] = {"alpha", "beta"};
  const char* labels[2] = {"topic_a", "topic_b"};

  TwoTopicCorpus corpus;
  for (int topic = 0; topic < 2; ++topic) {
    for (std::size_t n = 0; n < spec.documents_per_topic; ++n) {
      const std::size_t length =
          spec.min_tokens + uniform_below(rng, spec.max_tokens - spec.min_tokens + 1);
      std::string text;
      for (std::size_t t = 0; t < length; ++t) {
        if (!text.empty()) text.push_back(' ');
        if (uniform_unit(rng) < spec.keyword_share) {
          text += pool_word(prefixes[topic], keyword_sampler(rng));
        } else {
          text += pool_word("common", stopword_sampler(rng));
        }
      }
      corpus.documents.push_back(
          {std::string(labels[topic]) + "-" + std::to_string(n), std::move(text), labels[topic]});
    }
  }

  // Stopwords take 40% of a notional 10^9-token general corpus; the rest
  // belongs to words that never occur in the generated documents.
  constexpr double kGeneralTokens = 1e9;
  constexpr double kStopwordMass = 0.4;
  for (std::size_t k = 0; k < spec.stopwords; ++k) {
    corpus.lexicon_counts.emplace_back(
        pool_word("common", k),
        static_cast<std::uint64_t>(std::llround(kGeneralTokens * kStopwordMass *
                                                stopword_sampler.probability(k))));
  }
  corpus.lexicon_counts.emplace_back(
      "otherwords", static_cast<std::uint64_t>(kGeneralTokens * (1.0 - kStopwordMass)));
  return corpus;
}

}  // namespace conical
