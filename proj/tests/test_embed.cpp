#include <catch_amalgamated.hpp>

#include "dart/corpus.hpp"
#include "dart/embed.hpp"
#include "helpers.hpp"

using namespace dart;

namespace {

const FunctionWordList& fw() {
  static FunctionWordList list = load_function_words(testutil::data_file("function_words.txt"));
  return list;
}

const EmbeddingStore& store() {
  static EmbeddingStore s = load_embeddings(testutil::fixture("mini_embeddings.txt"));
  return s;
}

std::vector<PatternKey> religions_patterns() {
  std::vector<RawTriple> raw = read_extraction_file(
      testutil::fixture("religions_countries_corpus.tsv"), CorpusFormat::SimpleTsv);
  ClassSpec religions = load_class_instances(testutil::fixture("religions.txt"), "Religions");
  ClassSpec countries = load_class_instances(testutil::fixture("countries.txt"), "Countries");
  std::vector<PatternKey> patterns = build_corpus(raw, religions, countries).patterns;
  annotate_patterns(patterns, fw());
  return patterns;
}

}  // namespace

TEST_CASE("function word list loads with comments skipped") {
  CHECK(fw().words.size() == 296);
  CHECK(fw().contains("the"));
  CHECK(fw().contains("through"));
  CHECK_FALSE(fw().contains("religion"));
  CHECK_FALSE(fw().contains("flows"));
}

TEST_CASE("content words drop function words") {
  CHECK(content_words("is the predominant religion in", fw()) ==
        std::vector<std::string>{"predominant", "religion"});
  CHECK(content_words("is on the banks of", fw()) == std::vector<std::string>{"banks"});
  CHECK(content_words("is of the", fw()).empty());
}

TEST_CASE("embedding loader reads the text format") {
  CHECK(store().dim == 10);
  CHECK(store().vectors.size() == 20);
  CHECK(store().duplicates == 0);
  CHECK(store().find("religion") != nullptr);
  CHECK(store().find("mayor") == nullptr);
}

TEST_CASE("embedding loader counts duplicates, last vector wins") {
  std::string dir = testutil::temp_dir("embed_dup");
  testutil::spit(dir + "/e.txt", "3 2\na 1 0\na 0 1\nb 1 1\n");
  EmbeddingStore s = load_embeddings(dir + "/e.txt");
  CHECK(s.duplicates == 1);
  CHECK(s.vectors.size() == 2);
  REQUIRE(s.find("a") != nullptr);
  CHECK((*s.find("a"))[0] == 0.0);
  CHECK((*s.find("a"))[1] == 1.0);
}

TEST_CASE("embedding loader rejects bad headers and ragged rows") {
  std::string dir = testutil::temp_dir("embed_bad");
  testutil::spit(dir + "/empty.txt", "");
  CHECK_THROWS_AS(load_embeddings(dir + "/empty.txt"), DataError);

  testutil::spit(dir + "/header.txt", "not a header\n");
  CHECK_THROWS_AS(load_embeddings(dir + "/header.txt"), DataError);

  testutil::spit(dir + "/short.txt", "1 3\na 1 2\n");
  CHECK_THROWS_WITH(load_embeddings(dir + "/short.txt"),
                    Catch::Matchers::ContainsSubstring(":2:"));

  testutil::spit(dir + "/long.txt", "1 2\na 1 2 3\n");
  CHECK_THROWS_AS(load_embeddings(dir + "/long.txt"), DataError);
}

TEST_CASE("cosine similarity") {
  CHECK(cosine({1, 0}, {1, 1}) == Catch::Approx(0.70711).margin(1e-5));
  CHECK(cosine({1, 2}, {2, 4}) == Catch::Approx(1.0));
  CHECK(cosine({1, 0}, {0, 1}) == Catch::Approx(0.0));
  CHECK(cosine({0, 0}, {1, 1}) == 0.0);
  CHECK_THROWS_AS(cosine({1}, {1, 2}), std::logic_error);
}

TEST_CASE("fixture embeddings hit their designed cosines") {
  auto cos = [&](const char* a, const char* b) {
    return cosine(*store().find(a), *store().find(b));
  };
  CHECK(cos("rises", "river") == Catch::Approx(0.41).margin(1e-4));
  CHECK(cos("people", "language") == Catch::Approx(0.12).margin(1e-4));
  CHECK(cos("living", "language") == Catch::Approx(0.15).margin(1e-4));
  CHECK(cos("faith", "religion") == Catch::Approx(0.85).margin(1e-4));
  CHECK(cos("religion", "religion") == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("contextual filter keeps the expected religions patterns per threshold") {
  std::vector<PatternKey> patterns = religions_patterns();
  REQUIRE(patterns.size() == 11);
  const std::vector<std::pair<double, size_t>> expected = {
      {0.1, 9}, {0.2, 9}, {0.3, 8}, {0.4, 7}, {0.5, 7}, {0.6, 5}, {0.7, 4}};
  for (const auto& [cth, kept] : expected) {
    CAPTURE(cth);
    CHECK(contextual_filter(patterns, "religion", fw(), store(), cth).size() == kept);
  }
}

TEST_CASE("contextual filter drops patterns with no usable word") {
  std::vector<RawTriple> raw =
      read_extraction_file(testutil::fixture("rivers_cities_corpus.tsv"), CorpusFormat::SimpleTsv);
  ClassSpec rivers = load_class_instances(testutil::fixture("rivers.txt"), "Rivers");
  ClassSpec cities = load_class_instances(testutil::fixture("cities.txt"), "Cities");
  std::vector<PatternKey> patterns = build_corpus(raw, rivers, cities).patterns;
  annotate_patterns(patterns, fw());
  REQUIRE(patterns.size() == 5);
  std::vector<PatternKey> kept = contextual_filter(patterns, "river", fw(), store(), 0.2);
  CHECK(kept.size() == 4);
  for (const PatternKey& p : kept) CHECK(p.text != "is mayor of");  // "mayor" has no vector
}

TEST_CASE("contextual filter requires an in-vocabulary domain name") {
  std::vector<PatternKey> patterns = religions_patterns();
  CHECK_THROWS_AS(contextual_filter(patterns, "mayor", fw(), store(), 0.2), ConfigError);
  CHECK_THROWS_AS(contextual_filter(patterns, "is of the", fw(), store(), 0.2), ConfigError);
}
