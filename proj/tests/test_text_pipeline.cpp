#include <doctest.h>

#include <algorithm>
#include <random>

#include "conical/corpus_io.hpp"
#include "conical/error.hpp"
#include "conical/text_pipeline.hpp"
#include "test_support.hpp"

using namespace conical;

TEST_CASE("tokenize lowercases and splits on non-alphanumeric runs") {
  CHECK(tokenize("Hello, World!") == Tokens{"hello", "world"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("COVID-19 vaccines") == Tokens{"covid", "19", "vaccines"});
  CHECK(tokenize("  --  ").empty());
  CHECK(tokenize("a\tb\nc") == Tokens{"a", "b", "c"});
  // multibyte UTF-8 stays inside the word
  CHECK(tokenize("Café au lait") == Tokens{"café", "au", "lait"});
}

TEST_CASE("tokenize is idempotent on its own joined output") {
  std::mt19937_64 rng(7);
  const std::string alphabet = "abcXYZ019 ,.-!?\t\n_";
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    const auto len = rng() % 40;
    for (std::size_t i = 0; i < len; ++i) text.push_back(alphabet[rng() % alphabet.size()]);
    const auto once = tokenize(text);
    std::string joined;
    for (const auto& t : once) joined += (joined.empty() ? "" : " ") + t;
    CHECK(tokenize(joined) == once);
    for (const auto& t : once) CHECK_FALSE(t.empty());
  }
}

TEST_CASE("build_vocabulary orders distinct terms lexicographically") {
  const std::vector<Tokens> corpus{{"b", "a"}, {"a", "c"}};
  const auto vocab = build_vocabulary(corpus);
  REQUIRE(vocab.size() == 3);
  CHECK(vocab.term(0) == "a");
  CHECK(vocab.term(1) == "b");
  CHECK(vocab.term(2) == "c");
  CHECK(*vocab.lookup("c") == 2);
  CHECK_FALSE(vocab.lookup("z").has_value());

  CHECK(build_vocabulary(std::vector<Tokens>{{"x"}}).size() == 1);
  CHECK_THROWS_AS(build_vocabulary(std::vector<Tokens>{}), Error);
}

TEST_CASE("build_vocabulary is permutation invariant and lookup/term are inverses") {
  std::mt19937_64 rng(11);
  std::vector<Tokens> corpus;
  for (int d = 0; d < 30; ++d) {
    Tokens doc;
    for (int t = 0; t < 10; ++t) doc.push_back("w" + std::to_string(rng() % 50));
    corpus.push_back(doc);
  }
  const auto vocab = build_vocabulary(corpus);
  for (int round = 0; round < 10; ++round) {
    std::shuffle(corpus.begin(), corpus.end(), rng);
    CHECK(build_vocabulary(corpus) == vocab);
  }
  for (std::size_t i = 0; i < vocab.size(); ++i) CHECK(*vocab.lookup(vocab.term(i)) == i);
}

TEST_CASE("term_frequencies divides counts by document length") {
  const Vocabulary vocab({"a", "b"});
  const Tokens doc{"a", "a", "b"};
  const auto tf = term_frequencies(doc, vocab);
  CHECK(tf.at(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(tf.at(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  CHECK(term_frequencies(Tokens{}, vocab).is_zero());
  CHECK(term_frequencies(Tokens{"z", "z"}, vocab).is_zero());

  // OOV tokens still count toward the length
  const auto partial = term_frequencies(Tokens{"a", "z", "z", "z"}, vocab);
  CHECK(partial.at(0) == 0.25);
  double sum = 0.0;
  for (const auto& e : partial.entries()) sum += e.value;
  CHECK(sum <= 1.0);
}

TEST_CASE("document_frequency_rates counts documents, not occurrences") {
  const std::vector<Tokens> corpus{{"a"}, {"a", "b", "b"}};
  const Vocabulary vocab({"a", "b", "c"});
  const auto stats = document_frequency_rates(corpus, vocab);
  CHECK(stats.rate(0) == 1.0);
  CHECK(stats.rate(1) == 0.5);
  CHECK(stats.rate(2) == 0.0);
  CHECK(stats.documents() == 2);
  CHECK(document_frequency_rates(std::vector<Tokens>{{"a"}}, Vocabulary({"a"})).rate(0) == 1.0);
  CHECK_THROWS_AS(document_frequency_rates(std::vector<Tokens>{}, vocab), Error);
}

TEST_CASE("line corpus reader") {
  testing_support::TempDir dir;
  const auto p = dir.write("c.txt", "first doc\n\nthird doc\n");
  const auto docs = read_line_corpus(p);
  REQUIRE(docs.size() == 3);
  CHECK(docs[1].text.empty());
  CHECK(docs[2].id == "3");

  const auto bad = dir.write("bad.txt", "ok\nbad \xff byte\n");
  try {
    read_line_corpus(bad);
    FAIL("expected invalid UTF-8 error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_utf8);
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
  CHECK_THROWS_AS(read_line_corpus(dir.file("missing.txt")), Error);
}

TEST_CASE("utf-8 validation") {
  CHECK(is_valid_utf8("plain"));
  CHECK(is_valid_utf8("caf\xc3\xa9"));
  CHECK_FALSE(is_valid_utf8("\xc0\xaf"));      // overlong
  CHECK_FALSE(is_valid_utf8("\xed\xa0\x80"));  // surrogate
  CHECK_FALSE(is_valid_utf8("\xe2\x82"));      // truncated
}

TEST_CASE("labeled JSON-lines reader") {
  testing_support::TempDir dir;
  const auto p = dir.write("l.jsonl",
                           "{\"text\":\"a b\",\"label\":\"x\"}\n\n{\"text\":\"c\",\"label\":\"y\",\"id\":\"k\"}\n");
  const auto docs = read_labeled_jsonl(p);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].label == "x");
  CHECK(docs[1].id == "k");

  const auto missing_field = dir.write("m.jsonl", "{\"text\":\"a\"}\n");
  CHECK_THROWS_AS(read_labeled_jsonl(missing_field), Error);
  const auto not_json = dir.write("n.jsonl", "{oops\n");
  CHECK_THROWS_AS(read_labeled_jsonl(not_json), Error);
}
