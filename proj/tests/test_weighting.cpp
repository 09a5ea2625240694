#include <doctest.h>

#include <cmath>

#include "conical/error.hpp"
#include "conical/weighting.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace conical;

// Frozen from the 50-digit bisection oracle in oracles.cpp.
constexpr double kQuantile0005 = -3.290526731491895;
constexpr double kQuantile0975 = 1.959963984540054;
constexpr double kBnsHalfVsZero = 3.291780045957327;
constexpr double kBnsOneVsZero = 6.581053462983821;
constexpr double kNe08Vs001 = 3.151393010226267;

TEST_CASE("inverse normal CDF matches frozen oracle values") {
  CHECK(inverse_normal_cdf(0.5) == 0.0);
  CHECK(std::abs(inverse_normal_cdf(0.0005) - kQuantile0005) <= 1e-9);
  CHECK(std::abs(inverse_normal_cdf(0.975) - kQuantile0975) <= 1e-9);
  CHECK(std::abs(inverse_normal_cdf(0.0005) - oracle::quantile(0.0005)) <= 1e-9);
}

TEST_CASE("inverse normal CDF rejects probabilities outside (0,1)") {
  CHECK_THROWS_AS(inverse_normal_cdf(0.0), Error);
  CHECK_THROWS_AS(inverse_normal_cdf(1.0), Error);
  CHECK_THROWS_AS(inverse_normal_cdf(-0.2), Error);
  CHECK_THROWS_AS(inverse_normal_cdf(std::nan("")), Error);
}

TEST_CASE("inverse normal CDF round trip against the oracle CDF, both tails") {
  for (double p : {1e-12, 1e-8, 1e-4, 0.02425, 0.1, 0.3, 0.5 - 1e-12, 0.7, 0.97575, 0.9999, 1 - 1e-10}) {
    CAPTURE(p);
    CHECK(oracle::phi_residual(inverse_normal_cdf(p), p) <= 1e-9);
  }
  CHECK(inverse_normal_cdf(0.25) == -inverse_normal_cdf(0.75));
}

TEST_CASE("bns_score") {
  CHECK(bns_score(0.1, 0.1, kDefaultEpsilon) == 0.0);
  CHECK(std::abs(bns_score(0.5, 0.0, kDefaultEpsilon) - kBnsHalfVsZero) <= 1e-9);
  // tpr = 1 is clamped to 1 - epsilon
  CHECK(std::abs(bns_score(1.0, 0.0, kDefaultEpsilon) - kBnsOneVsZero) <= 1e-9);
  CHECK(offset_rate(1.0, kDefaultEpsilon) == 1.0 - kDefaultEpsilon);
  CHECK_THROWS_AS(bns_score(1.5, 0.0, kDefaultEpsilon), Error);
}

TEST_CASE("ne_score") {
  CHECK(ne_score(0.3, 0.3, kDefaultEpsilon) == 0.0);
  CHECK(std::abs(ne_score(0.5, 0.0, kDefaultEpsilon) - kBnsHalfVsZero) <= 1e-9);
  CHECK(std::abs(ne_score(0.8, 0.01, kDefaultEpsilon) - kNe08Vs001) <= 1e-9);
  CHECK(ne_score(0.8, 0.01, kDefaultEpsilon) == ne_score(0.01, 0.8, kDefaultEpsilon));
}

TEST_CASE("frequency table loading") {
  testing_support::TempDir dir;
  const auto table = WordFrequencyTable::load(dir.write("lex.tsv", "the\t900\nof\t100"));
  CHECK(table.frequency("the") == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(table.frequency("of") == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(table.frequency("zarnich") == 0.0);
  CHECK(table.total_tokens() == 1000);

  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::io;
  };
  CHECK(kind_of([&] { WordFrequencyTable::load(dir.file("nope.tsv")); }) == ErrorKind::file_not_found);
  CHECK(kind_of([&] { WordFrequencyTable::load(dir.write("e.tsv", "")); }) == ErrorKind::empty_file);
  CHECK(kind_of([&] { WordFrequencyTable::load(dir.write("m.tsv", "the 900\n")); }) ==
        ErrorKind::malformed_line);
  CHECK(kind_of([&] { WordFrequencyTable::load(dir.write("n.tsv", "the\tmany\n")); }) ==
        ErrorKind::non_numeric_count);
  CHECK(kind_of([&] { WordFrequencyTable::load(dir.write("z.tsv", "the\t0\n")); }) == ErrorKind::empty_file);
}

TEST_CASE("frequency table lowercases and merges case variants") {
  const std::vector<std::pair<std::string, std::uint64_t>> counts{{"The", 3}, {"the", 1}, {"a", 4}};
  const auto table = WordFrequencyTable::from_counts(counts);
  CHECK(table.frequency("the") == 0.5);
  CHECK(table.frequency("The") == 0.0);
}

TEST_CASE("ne_weight_vector composes ne_score per term") {
  const Vocabulary vocab({"a", "b"});
  const std::vector<Tokens> corpus{{"a", "b"}, {"a"}, {"a"}, {"b", "a"}};  // tpr a=1, b=0.5
  const auto stats = document_frequency_rates(corpus, vocab);
  const std::vector<std::pair<std::string, std::uint64_t>> counts{{"a", 30}, {"zz", 70}};
  const auto table = WordFrequencyTable::from_counts(counts);
  const auto w = ne_weight_vector(vocab, stats, table, kDefaultEpsilon);
  REQUIRE(w.size() == 2);
  CHECK(std::abs(w[0] - oracle::separation(1.0, 0.3, kDefaultEpsilon)) <= 1e-9);
  CHECK(std::abs(w[1] - oracle::separation(0.5, 0.0, kDefaultEpsilon)) <= 1e-9);

  // tpr(a) = 3/10 and freq(a) = 3/10 give a zero weight
  std::vector<Tokens> ten(10, Tokens{"b"});
  for (int i = 0; i < 3; ++i) ten[i].push_back("a");
  const std::vector<std::pair<std::string, std::uint64_t>> equal{{"a", 3}, {"zz", 7}};
  const auto w_eq = ne_weight_vector(vocab, document_frequency_rates(ten, vocab),
                                     WordFrequencyTable::from_counts(equal), kDefaultEpsilon);
  CHECK(w_eq[0] == 0.0);
  CHECK(w_eq[1] > 0.0);
  CHECK_THROWS_AS(ne_weight_vector(Vocabulary{}, TermStatistics({}, 1), table, kDefaultEpsilon), Error);
}

TEST_CASE("ne_tf_vector scales then unit-normalizes") {
  const auto tf = SparseVector::from_dense(std::vector<double>{0.5, 0.5});
  const WeightVector w({3.0, 4.0});
  const auto v = ne_tf_vector(tf, w);
  CHECK(v.at(0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(v.at(1) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(ne_tf_vector(SparseVector(2), w).is_zero());
  CHECK(ne_tf_vector(tf, WeightVector({0.0, 0.0})).is_zero());
  CHECK_THROWS_AS(ne_tf_vector(SparseVector(3), w), Error);
}

TEST_CASE("tfidf_vector floors negative IDF and normalizes") {
  // term 0 in all 8 docs, term 1 in 1 of 8
  const TermStatistics stats({8, 1}, 8);
  const auto idf = idf_weight_vector(stats);
  CHECK(idf[0] == 0.0);
  CHECK(idf[1] == doctest::Approx(std::log(4.0)).epsilon(1e-15));

  const auto only_common = tfidf_vector(SparseVector::from_dense(std::vector<double>{1.0, 0.0}), stats);
  CHECK(only_common.is_zero());
  const auto rare = tfidf_vector(SparseVector::from_dense(std::vector<double>{0.0, 1.0}), stats);
  CHECK(rare.at(1) == 1.0);  // ln 4 normalized
  CHECK(tfidf_vector(SparseVector(2), stats).is_zero());
  CHECK_THROWS_AS(tfidf_vector(SparseVector(3), stats), Error);
}

TEST_CASE("unit_normalize") {
  const auto v = unit_normalize(SparseVector::from_dense(std::vector<double>{3.0, 4.0}));
  CHECK(v.at(0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(v.at(1) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(unit_normalize(SparseVector(4)).is_zero());
  const auto u = SparseVector::from_dense(std::vector<double>{0.0, 1.0});
  const auto uu = unit_normalize(u);
  CHECK(std::abs(uu.at(1) - 1.0) <= 1e-12);
}

TEST_CASE("weighting config validation") {
  CHECK_NOTHROW(WeightingConfig{}.validate());
  CHECK_THROWS_AS((WeightingConfig{0.0, {}}.validate()), Error);
  CHECK_THROWS_AS((WeightingConfig{0.5, {}}.validate()), Error);
}
