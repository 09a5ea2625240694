#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "conical/conical.hpp"
#include "conical/corpus_io.hpp"
#include "conical/sparse_vector.hpp"

namespace conical {

/// Uniform draw from [0, bound) using rejection on raw 64-bit engine output,
/// so sequences do not depend on the standard library's distributions.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform_unit(std::mt19937_64& rng);

template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[uniform_below(rng, i)]);
  }
}

/// Nonnegative unit vector with `nonzeros` distinct random dimensions.
SparseVector random_unit_vector(std::size_t dimension, std::size_t nonzeros, std::mt19937_64& rng);

std::vector<SparseVector> random_unit_vectors(std::size_t count, std::size_t dimension,
                                              std::size_t nonzeros, std::uint64_t seed);

/// Bounds fitted to `corpus_size` random unit vectors.
BoxBounds random_box(std::size_t dimension, std::size_t corpus_size, std::size_t nonzeros,
                     std::uint64_t seed);

/// Two-topic corpus: each topic owns a keyword pool, both share a stopword
/// pool. Document lengths are uniform in [min_tokens, max_tokens]; each token
/// is a keyword with probability keyword_share, otherwise a stopword. Words
/// inside a pool follow a Zipf(1) law.
struct TwoTopicCorpusSpec {
  std::size_t keywords_per_topic = 50;
  std::size_t stopwords = 100;
  std::size_t documents_per_topic = 200;
  std::size_t min_tokens = 20;
  std::size_t max_tokens = 60;
  double keyword_share = 0.5;
  std::uint64_t seed = 0;
};

struct TwoTopicCorpus {
  std::vector<LabeledDocument> documents;  ///< labels "topic_a" / "topic_b"
  /// General-language counts: stopwords Zipf-weighted, keywords absent.
  std::vector<std::pair<std::string, std::uint64_t>> lexicon_counts;
};

TwoTopicCorpus generate_two_topic_corpus(const TwoTopicCorpusSpec& spec);

}  // namespace conical
