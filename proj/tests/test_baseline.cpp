#include <algorithm>
#include <cmath>
#include <cstdint>

#include <catch_amalgamated.hpp>

#include "dart/baseline.hpp"
#include "dart/corpus.hpp"
#include "dart/errors.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dart;

namespace {

int index_of(const CooccurrenceMatrix& m, const std::string& text) {
  for (size_t i = 0; i < m.patterns.size(); ++i) {
    if (m.patterns[i].text == text) return static_cast<int>(i);
  }
  return -1;
}

// three tight 2-d blobs, five points each
std::vector<std::vector<double>> blob_rows() {
  const double centers[3][2] = {{0, 0}, {8, 8}, {16, 0}};
  std::vector<std::vector<double>> rows;
  for (const auto& c : centers) {
    double cx = c[0], cy = c[1];
    rows.push_back({cx, cy});
    rows.push_back({cx + 0.5, cy});
    rows.push_back({cx - 0.5, cy});
    rows.push_back({cx, cy + 0.5});
    rows.push_back({cx, cy - 0.5});
  }
  return rows;
}

std::vector<DirectedTriple> lcg_corpus() {
  std::uint64_t x = 99;
  auto next = [&x](std::uint64_t mod) {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<int>((x >> 33) % mod);
  };
  std::vector<DirectedTriple> corpus;
  for (int i = 0; i < 200; ++i) {
    DirectedTriple t;
    t.subject = "s" + std::to_string(next(6));
    t.pattern = "p" + std::to_string(next(15));
    t.object = "o" + std::to_string(next(8));
    t.direction = next(2) == 0 ? Direction::Forward : Direction::Reverse;
    t.count = 1 + next(4);
    corpus.push_back(std::move(t));
  }
  return corpus;
}

}  // namespace

TEST_CASE("co-occurrence cells sum shared-pair occurrences from both patterns") {
  std::vector<DirectedTriple> corpus = {
      {"ganges", "c1", "allahabad", Direction::Forward, 3},
      {"ganges", "c2", "allahabad", Direction::Forward, 2},
      {"thames", "c1", "london", Direction::Forward, 1},
      {"thames", "c2", "london", Direction::Forward, 4},
  };
  BaselineModel model = build_baseline_model(corpus);
  CooccurrenceMatrix m = build_cooccurrence_matrix(model);
  REQUIRE(m.patterns.size() == 2);
  int i1 = index_of(m, "c1");
  int i2 = index_of(m, "c2");
  CHECK(m.cells[i1][i2] == 10.0);  // (3+2) + (1+4)
  CHECK(m.cells[i2][i1] == 10.0);
  CHECK(m.cells[i1][i1] == 8.0);   // the diagonal doubles the pattern's own counts
  CHECK(m.cells[i2][i2] == 12.0);

  CooccurrenceMatrix z = build_cooccurrence_matrix(model, true);
  CHECK(z.cells[i1][i1] == 0.0);
  CHECK(z.cells[i2][i2] == 0.0);
  CHECK(z.cells[i1][i2] == 10.0);
}

TEST_CASE("patterns with no shared pair score zero") {
  std::vector<DirectedTriple> corpus = {
      {"a", "p1", "b", Direction::Forward, 5},
      {"c", "p2", "d", Direction::Forward, 7},
  };
  CooccurrenceMatrix m = build_cooccurrence_matrix(build_baseline_model(corpus));
  int i1 = index_of(m, "p1");
  int i2 = index_of(m, "p2");
  CHECK(m.cells[i1][i2] == 0.0);
}

TEST_CASE("reverse extractions share pairs with forward ones after orientation") {
  // (india, practices, hinduism) reversed covers the (hinduism, india) pair
  std::vector<DirectedTriple> corpus = {
      {"hinduism", "is practiced in", "india", Direction::Forward, 4},
      {"india", "practices", "hinduism", Direction::Reverse, 3},
  };
  CooccurrenceMatrix m = build_cooccurrence_matrix(build_baseline_model(corpus));
  int i1 = index_of(m, "is practiced in");
  int i2 = index_of(m, "practices");
  CHECK(m.cells[i1][i2] == 7.0);
}

TEST_CASE("a single pattern yields a one-cell matrix") {
  std::vector<DirectedTriple> corpus = {{"a", "p", "b", Direction::Forward, 3}};
  CooccurrenceMatrix m = build_cooccurrence_matrix(build_baseline_model(corpus));
  REQUIRE(m.cells.size() == 1);
  CHECK(m.cells[0][0] == 6.0);
}

TEST_CASE("row normalization is stochastic and keeps zero rows") {
  std::vector<std::vector<double>> cells = {{10.0, 10.0}, {0.0, 0.0}};
  std::vector<std::vector<double>> norm = normalize_rows(cells);
  CHECK(norm[0][0] == 0.5);
  CHECK(norm[0][1] == 0.5);
  CHECK(norm[1][0] == 0.0);
  CHECK(norm[1][1] == 0.0);
}

TEST_CASE("kmeans with one cluster converges to the mean") {
  std::vector<std::vector<double>> rows = {{0, 0}, {2, 0}, {4, 6}};
  KMeansResult km = kmeans(rows, 1);
  REQUIRE(km.centroids.size() == 1);
  CHECK(km.centroids[0][0] == Catch::Approx(2.0));
  CHECK(km.centroids[0][1] == Catch::Approx(2.0));
  CHECK(km.sse == Catch::Approx(32.0));
  CHECK(km.assignments == std::vector<int>(3, 0));
}

TEST_CASE("kmeans with as many clusters as rows reaches zero error") {
  std::vector<std::vector<double>> rows = {{0, 0}, {1, 0}, {0, 1}, {5, 5}};
  KMeansResult km = kmeans(rows, 4);
  CHECK(km.sse == 0.0);
}

TEST_CASE("kmeans rejects degenerate inputs") {
  std::vector<std::vector<double>> rows = {{0, 0}, {1, 1}};
  CHECK_THROWS_AS(kmeans(rows, 0), ConfigError);
  CHECK_THROWS_AS(kmeans(rows, 3), ConfigError);
  CHECK_THROWS_AS(kmeans({}, 1), DataError);
}

TEST_CASE("kmeans error never increases across iterations") {
  std::vector<std::vector<double>> rows = blob_rows();
  KMeansResult km = kmeans(rows, 4);
  REQUIRE(km.sseHistory.size() == km.iterations);
  for (size_t i = 1; i < km.sseHistory.size(); ++i) {
    CHECK(km.sseHistory[i] <= km.sseHistory[i - 1] + 1e-12);
  }
}

TEST_CASE("elbow selection recovers three well-separated blobs") {
  std::vector<std::vector<double>> rows = blob_rows();
  ElbowResult res = elbow_select_k(rows, 3, 6);
  CHECK(res.k == 3);
  CHECK(res.sseByK.count(2) == 1);  // one step past each end of the range
  CHECK(res.sseByK.count(7) == 1);
  CHECK(res.sseByK.at(3) == Catch::Approx(3.0));
}

TEST_CASE("elbow search range is clamped to the row count") {
  std::vector<std::vector<double>> rows = blob_rows();
  rows.resize(10);
  ElbowResult res = elbow_select_k(rows, 3, 29);
  CHECK(res.k >= 3);
  CHECK(res.k <= 9);
  CHECK(res.sseByK.begin()->first == 2);
  CHECK(res.sseByK.rbegin()->first == 10);
  CHECK_THROWS_AS(elbow_select_k({{0.0}, {1.0}}, 3, 29), DataError);
}

TEST_CASE("instance weights damp counts by distance from the centroid") {
  BaselineModel model;
  PatternKey p0, p1;
  p0.text = "p0";
  p1.text = "p1";
  model.patterns = {p0, p1};
  model.pairs = {{"a", "b"}};
  model.occ = {{{0, 2}}, {{0, 3}}};
  std::vector<std::vector<double>> rows = {{1, 0}, {1, 1}};
  BaselineCluster cluster;
  cluster.memberRows = {0, 1};
  cluster.centroid = {1, 0};

  std::vector<SeedInstance> seeds = rank_instances(cluster, rows, model);
  REQUIRE(seeds.size() == 1);
  CHECK(seeds[0].subject == "a");
  CHECK(seeds[0].object == "b");
  CHECK(seeds[0].weight == Catch::Approx(3.5));  // 2/(1+0) + 3/(1+1)

  auto expected = oracle::seed_weights(cluster, rows, model);
  CHECK(seeds[0].weight == expected.at({"a", "b"}));
}

TEST_CASE("only the strongest fifty instances are proposed") {
  BaselineModel model;
  PatternKey p;
  p.text = "p";
  model.patterns = {p};
  model.occ.resize(1);
  for (int i = 0; i < 60; ++i) {
    model.pairs.push_back({"s" + std::to_string(i), "o"});
    model.occ[0][i] = i + 1;
  }
  std::vector<std::vector<double>> rows = {{1, 0}};
  BaselineCluster cluster;
  cluster.memberRows = {0};
  cluster.centroid = rows[0];

  std::vector<SeedInstance> seeds = rank_instances(cluster, rows, model);
  REQUIRE(seeds.size() == 50);
  CHECK(seeds.front().weight == Catch::Approx(60.0));
  CHECK(seeds.back().weight == Catch::Approx(11.0));
  for (size_t i = 1; i < seeds.size(); ++i) CHECK(seeds[i].weight <= seeds[i - 1].weight);
}

TEST_CASE("doubling every count doubles weights and keeps the ranking") {
  BaselineModel model;
  PatternKey p0, p1;
  p0.text = "p0";
  p1.text = "p1";
  model.patterns = {p0, p1};
  model.pairs = {{"a", "b"}, {"c", "d"}, {"e", "f"}};
  model.occ = {{{0, 2}, {1, 7}}, {{0, 3}, {2, 1}}};
  std::vector<std::vector<double>> rows = {{1, 0}, {1, 1}};
  BaselineCluster cluster;
  cluster.memberRows = {0, 1};
  cluster.centroid = {1, 0.25};

  BaselineModel doubled = model;
  for (auto& byPair : doubled.occ) {
    for (auto& [pair, count] : byPair) count *= 2;
  }
  std::vector<SeedInstance> before = rank_instances(cluster, rows, model);
  std::vector<SeedInstance> after = rank_instances(cluster, rows, doubled);
  REQUIRE(before.size() == after.size());
  for (size_t i = 0; i < before.size(); ++i) {
    CHECK(after[i].subject == before[i].subject);
    CHECK(after[i].object == before[i].object);
    CHECK(after[i].weight == Catch::Approx(2.0 * before[i].weight));
  }
}

TEST_CASE("matrix construction agrees with the brute-force count") {
  std::vector<DirectedTriple> corpus = lcg_corpus();
  BaselineModel model = build_baseline_model(corpus);
  for (bool zeroDiagonal : {false, true}) {
    CooccurrenceMatrix m = build_cooccurrence_matrix(model, zeroDiagonal);
    std::vector<std::vector<long long>> expected =
        oracle::cooccurrence(corpus, m.patterns, zeroDiagonal);
    REQUIRE(m.cells.size() == expected.size());
    for (size_t i = 0; i < m.cells.size(); ++i) {
      for (size_t j = 0; j < m.cells.size(); ++j) {
        CHECK(m.cells[i][j] == static_cast<double>(expected[i][j]));
        CHECK(m.cells[i][j] == m.cells[j][i]);
      }
    }
  }
}

TEST_CASE("the full baseline runs on the religions corpus") {
  std::vector<RawTriple> raw = read_extraction_file(
      testutil::fixture("religions_countries_corpus.tsv"), CorpusFormat::SimpleTsv);
  ClassSpec religions = load_class_instances(testutil::fixture("religions.txt"), "Religions");
  ClassSpec countries = load_class_instances(testutil::fixture("countries.txt"), "Countries");
  Corpus corpus = build_corpus(raw, religions, countries);

  BaselineParams params;
  BaselineResult r = run_baseline(corpus.triples, params);
  CHECK_FALSE(r.skipped);
  CHECK(r.model.patterns.size() == 11);
  bool clamped = false;
  for (const std::string& w : r.warnings) {
    if (w.find("kmax clamped to 10") != std::string::npos) clamped = true;
  }
  CHECK(clamped);
  CHECK(r.k >= 3);
  CHECK(r.k <= 10);
  CHECK(r.clusters.size() <= r.k);
  REQUIRE(r.seeds.size() == r.clusters.size());
  size_t members = 0;
  for (const BaselineCluster& c : r.clusters) {
    members += c.memberRows.size();
    CHECK_FALSE(c.memberRows.empty());
  }
  CHECK(members == 11);
  for (size_t c = 0; c < r.seeds.size(); ++c) {
    CHECK_FALSE(r.seeds[c].empty());
    CHECK(r.seeds[c].size() <= 50);
    auto expected = oracle::seed_weights(r.clusters[c], r.normalized, r.model);
    for (const SeedInstance& s : r.seeds[c]) {
      CHECK(s.weight == Catch::Approx(expected.at({s.subject, s.object})).margin(1e-12));
    }
  }

  std::string dir = testutil::temp_dir("baseline_artifacts");
  write_baseline_relations_tsv(dir + "/relations.tsv", r);
  write_baseline_seeds_tsv(dir + "/seeds.tsv", r);
  std::string relations = testutil::slurp(dir + "/relations.tsv");
  CHECK(std::count(relations.begin(), relations.end(), '\n') ==
        static_cast<long>(r.clusters.size()));
}

TEST_CASE("the baseline declines corpora with fewer than three patterns") {
  std::vector<DirectedTriple> corpus = {
      {"a", "p1", "b", Direction::Forward, 2},
      {"a", "p2", "b", Direction::Forward, 1},
  };
  BaselineResult r = run_baseline(corpus, BaselineParams{});
  CHECK(r.skipped);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("fewer than 3") != std::string::npos);
  CHECK(r.clusters.empty());
  CHECK(r.k == 0);
}
