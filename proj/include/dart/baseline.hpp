#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dart/corpus.hpp"
#include "dart/errors.hpp"

namespace dart {

// Occurrence counts of each context pattern with each subject-object pair.
// Pairs are oriented by direction, so a Reverse extraction counts for the
// same (first-class instance, second-class instance) pair as a Forward one.
struct BaselineModel {
  std::vector<PatternKey> patterns;                   // in processing order
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::map<int, long long>> occ;          // occ[pattern][pair] > 0 entries
};

inline BaselineModel build_baseline_model(const std::vector<DirectedTriple>& corpus) {
  std::map<std::pair<std::string, Direction>, long long> freq;
  for (const DirectedTriple& t : corpus) freq[{t.pattern, t.direction}] += t.count;
  BaselineModel model;
  for (const auto& [key, f] : freq) {
    PatternKey p;
    p.text = key.first;
    p.direction = key.second;
    p.frequency = f;
    model.patterns.push_back(std::move(p));
  }
  std::sort(model.patterns.begin(), model.patterns.end(), [](const PatternKey& a, const PatternKey& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    if (a.text != b.text) return a.text < b.text;
    return a.direction == Direction::Forward && b.direction == Direction::Reverse;
  });
  std::map<std::pair<std::string, Direction>, int> patternIndex;
  for (size_t i = 0; i < model.patterns.size(); ++i) {
    patternIndex[{model.patterns[i].text, model.patterns[i].direction}] = static_cast<int>(i);
  }
  std::map<std::pair<std::string, std::string>, int> pairIndex;
  model.occ.resize(model.patterns.size());
  for (const DirectedTriple& t : corpus) {
    std::pair<std::string, std::string> pair =
        t.direction == Direction::Forward ? std::make_pair(t.subject, t.object)
                                          : std::make_pair(t.object, t.subject);
    auto [it, inserted] = pairIndex.emplace(pair, static_cast<int>(model.pairs.size()));
    if (inserted) model.pairs.push_back(pair);
    int pi = patternIndex[{t.pattern, t.direction}];
    model.occ[pi][it->second] += t.count;
  }
  return model;
}

struct CooccurrenceMatrix {
  std::vector<PatternKey> patterns;
  std::vector<std::vector<double>> cells;  // square, symmetric before normalization
};

// cell(c1,c2) sums Occ(c1,s) + Occ(c2,s) over every pair s that occurs with
// both patterns; the diagonal is the same formula with c1 = c2.
inline CooccurrenceMatrix build_cooccurrence_matrix(const BaselineModel& model,
                                                    bool zeroDiagonal = false) {
  size_t n = model.patterns.size();
  CooccurrenceMatrix m;
  m.patterns = model.patterns;
  m.cells.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      if (i == j && zeroDiagonal) continue;
      long long cell = 0;
      for (const auto& [pair, ci] : model.occ[i]) {
        auto jt = model.occ[j].find(pair);
        if (jt != model.occ[j].end()) cell += ci + jt->second;
      }
      m.cells[i][j] = static_cast<double>(cell);
      m.cells[j][i] = static_cast<double>(cell);
    }
  }
  return m;
}

// Row-stochastic normalization; all-zero rows stay zero.
inline std::vector<std::vector<double>> normalize_rows(const std::vector<std::vector<double>>& cells) {
  std::vector<std::vector<double>> out = cells;
  for (std::vector<double>& row : out) {
    double sum = 0.0;
    for (double v : row) sum += v;
    if (sum > 0.0) {
      for (double& v : row) v /= sum;
    }
  }
  return out;
}

namespace detail {

inline double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double diff = a[i] - b[i];
    d += diff * diff;
  }
  return d;
}

}  // namespace detail

struct KMeansResult {
  std::vector<int> assignments;
  std::vector<std::vector<double>> centroids;
  double sse = 0.0;
  std::vector<double> sseHistory;  // one entry per assignment step
  size_t iterations = 0;
};

// Lloyd iterations with deterministic farthest-point seeding: the first seed
// is the row with the largest norm, each further seed the row farthest from
// the seeds chosen so far. All ties fall to the lowest row index.
inline KMeansResult kmeans(const std::vector<std::vector<double>>& rows, size_t k,
                           size_t maxIterations = 100) {
  if (rows.empty()) throw DataError("kmeans: no rows");
  if (k == 0 || k > rows.size()) throw ConfigError("kmeans: k must be in [1, rows]");

  std::vector<size_t> seeds;
  size_t first = 0;
  double bestNorm = -1.0;
  for (size_t i = 0; i < rows.size(); ++i) {
    double n = 0.0;
    for (double v : rows[i]) n += v * v;
    if (n > bestNorm) {
      bestNorm = n;
      first = i;
    }
  }
  seeds.push_back(first);
  while (seeds.size() < k) {
    size_t far = 0;
    double farDist = -1.0;
    for (size_t i = 0; i < rows.size(); ++i) {
      double d = detail::sq_dist(rows[i], rows[seeds[0]]);
      for (size_t s = 1; s < seeds.size(); ++s) {
        d = std::min(d, detail::sq_dist(rows[i], rows[seeds[s]]));
      }
      if (d > farDist) {
        farDist = d;
        far = i;
      }
    }
    seeds.push_back(far);
  }

  KMeansResult r;
  r.centroids.reserve(k);
  for (size_t s : seeds) r.centroids.push_back(rows[s]);
  r.assignments.assign(rows.size(), -1);
  for (size_t iter = 0; iter < maxIterations; ++iter) {
    bool changed = false;
    double sse = 0.0;
    for (size_t i = 0; i < rows.size(); ++i) {
      int best = 0;
      double bestD = detail::sq_dist(rows[i], r.centroids[0]);
      for (size_t c = 1; c < k; ++c) {
        double d = detail::sq_dist(rows[i], r.centroids[c]);
        if (d < bestD) {
          bestD = d;
          best = static_cast<int>(c);
        }
      }
      if (r.assignments[i] != best) {
        r.assignments[i] = best;
        changed = true;
      }
      sse += bestD;
    }
    r.sse = sse;
    r.sseHistory.push_back(sse);
    r.iterations = iter + 1;
    if (!changed) break;
    for (size_t c = 0; c < k; ++c) {
      std::vector<double> mean(rows[0].size(), 0.0);
      size_t count = 0;
      for (size_t i = 0; i < rows.size(); ++i) {
        if (r.assignments[i] == static_cast<int>(c)) {
          for (size_t d = 0; d < mean.size(); ++d) mean[d] += rows[i][d];
          ++count;
        }
      }
      if (count > 0) {
        for (double& v : mean) v /= static_cast<double>(count);
        r.centroids[c] = std::move(mean);
      }
      // empty clusters keep their previous centroid
    }
  }
  return r;
}

struct ElbowResult {
  size_t k = 0;
  std::map<size_t, double> sseByK;  // includes the flanking k values when computable
};

// Picks the k in [kMin, kMax] with the sharpest SSE bend, measured by the
// second difference SSE(k-1) - 2 SSE(k) + SSE(k+1). The search range is
// clamped to the number of rows minus one, and SSE is evaluated one step
// beyond each end so edge candidates have a defined second difference.
// Ties go to the smaller k.
inline ElbowResult elbow_select_k(const std::vector<std::vector<double>>& rows, size_t kMin = 3,
                                  size_t kMax = 29, size_t maxIterations = 100) {
  if (rows.size() < 3) throw DataError("elbow: need at least 3 rows");
  size_t hi = std::min(kMax, rows.size() - 1);
  size_t lo = std::min(kMin, hi);
  ElbowResult res;
  size_t evalLo = lo > 1 ? lo - 1 : 1;
  size_t evalHi = std::min(hi + 1, rows.size());
  for (size_t k = evalLo; k <= evalHi; ++k) {
    res.sseByK[k] = kmeans(rows, k, maxIterations).sse;
  }
  std::optional<double> bestCurve;
  size_t bestK = lo;
  for (size_t k = lo; k <= hi; ++k) {
    auto prev = res.sseByK.find(k - 1);
    auto next = res.sseByK.find(k + 1);
    if (prev == res.sseByK.end() || next == res.sseByK.end()) continue;
    double curve = prev->second - 2.0 * res.sseByK[k] + next->second;
    if (!bestCurve || curve > *bestCurve) {
      bestCurve = curve;
      bestK = k;
    }
  }
  res.k = bestK;
  return res;
}

struct BaselineCluster {
  std::vector<int> memberRows;
  std::vector<double> centroid;
  int centroidRow = 0;  // member nearest the centroid, proposed as the relation name
};

inline std::vector<BaselineCluster> make_baseline_clusters(
    const std::vector<std::vector<double>>& rows, const KMeansResult& km) {
  std::vector<BaselineCluster> out(km.centroids.size());
  for (size_t c = 0; c < km.centroids.size(); ++c) out[c].centroid = km.centroids[c];
  for (size_t i = 0; i < km.assignments.size(); ++i) {
    out[km.assignments[i]].memberRows.push_back(static_cast<int>(i));
  }
  std::vector<BaselineCluster> filled;
  for (BaselineCluster& c : out) {
    if (c.memberRows.empty()) continue;
    double best = -1.0;
    for (int row : c.memberRows) {
      double d = detail::sq_dist(rows[row], c.centroid);
      if (best < 0.0 || d < best) {
        best = d;
        c.centroidRow = row;
      }
    }
    filled.push_back(std::move(c));
  }
  return filled;
}

struct SeedInstance {
  std::string subject;
  std::string object;
  double weight = 0.0;
};

// Instance-pair weighting: each member pattern contributes its occurrence
// count with the pair, damped by the pattern's distance from the cluster
// centroid. The top pairs are proposed as seeds for the relation.
inline std::vector<SeedInstance> rank_instances(const BaselineCluster& cluster,
                                                const std::vector<std::vector<double>>& rows,
                                                const BaselineModel& model, size_t top = 50) {
  std::map<int, double> weights;
  for (int row : cluster.memberRows) {
    double sd = std::sqrt(detail::sq_dist(rows[row], cluster.centroid));
    for (const auto& [pair, count] : model.occ[row]) {
      weights[pair] += static_cast<double>(count) / (1.0 + sd);
    }
  }
  std::vector<SeedInstance> out;
  out.reserve(weights.size());
  for (const auto& [pair, w] : weights) {
    out.push_back({model.pairs[pair].first, model.pairs[pair].second, w});
  }
  std::sort(out.begin(), out.end(), [](const SeedInstance& a, const SeedInstance& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.subject != b.subject) return a.subject < b.subject;
    return a.object < b.object;
  });
  if (out.size() > top) out.resize(top);
  return out;
}

struct BaselineParams {
  size_t kMin = 3;
  size_t kMax = 29;
  size_t maxIterations = 100;
  bool zeroDiagonal = false;
  size_t topSeeds = 50;
};

struct BaselineResult {
  BaselineModel model;
  CooccurrenceMatrix matrix;
  std::vector<std::vector<double>> normalized;
  size_t k = 0;
  KMeansResult km;
  std::vector<BaselineCluster> clusters;
  std::vector<std::vector<SeedInstance>> seeds;  // parallel to clusters
  std::vector<std::string> warnings;
  bool skipped = false;
};

inline BaselineResult run_baseline(const std::vector<DirectedTriple>& corpus,
                                   const BaselineParams& params) {
  BaselineResult r;
  r.model = build_baseline_model(corpus);
  r.matrix = build_cooccurrence_matrix(r.model, params.zeroDiagonal);
  r.normalized = normalize_rows(r.matrix.cells);
  if (r.model.patterns.size() < 3) {
    r.warnings.push_back("fewer than 3 context patterns; baseline skipped");
    r.skipped = true;
    return r;
  }
  size_t kMax = params.kMax;
  if (kMax > r.model.patterns.size() - 1) {
    kMax = r.model.patterns.size() - 1;
    r.warnings.push_back("kmax clamped to " + std::to_string(kMax));
  }
  size_t kMin = std::min(params.kMin, kMax);
  ElbowResult elbow = elbow_select_k(r.normalized, kMin, kMax, params.maxIterations);
  r.k = elbow.k;
  r.km = kmeans(r.normalized, r.k, params.maxIterations);
  r.clusters = make_baseline_clusters(r.normalized, r.km);
  for (const BaselineCluster& c : r.clusters) {
    r.seeds.push_back(rank_instances(c, r.normalized, r.model, params.topSeeds));
  }
  return r;
}

inline void write_baseline_relations_tsv(const std::string& path, const BaselineResult& r) {
  std::ofstream out = open_output(path);
  for (size_t c = 0; c < r.clusters.size(); ++c) {
    const PatternKey& p = r.matrix.patterns[r.clusters[c].centroidRow];
    out << c << '\t' << p.text << '\t' << direction_name(p.direction) << '\t'
        << r.clusters[c].memberRows.size() << '\n';
  }
}

inline void write_baseline_seeds_tsv(const std::string& path, const BaselineResult& r) {
  std::ofstream out = open_output(path);
  out.precision(12);
  for (size_t c = 0; c < r.seeds.size(); ++c) {
    for (const SeedInstance& s : r.seeds[c]) {
      out << c << '\t' << s.subject << '\t' << s.object << '\t' << s.weight << '\n';
    }
  }
}

}  // namespace dart
