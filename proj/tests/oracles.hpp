#pragma once

// Deliberately naive reference implementations, kept structurally different
// from the library code so the two can check each other.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "dart/baseline.hpp"
#include "dart/corpus.hpp"
#include "dart/lexsim.hpp"

namespace oracle {

// Dice gloss overlap via sorted multiset intersection, no caching.
inline double word_sim(const std::string& a, const std::string& b,
                       const dart::LexicalDatabase& db) {
  if (a == b) return 1.0;
  const std::vector<dart::Sense>* sa = db.find(a);
  const std::vector<dart::Sense>* sb = db.find(b);
  if (!sa || !sb) return 0.0;
  double best = 0.0;
  for (const dart::Sense& x : *sa) {
    for (const dart::Sense& y : *sb) {
      std::vector<std::string> g1 = x.gloss, g2 = y.gloss;
      std::sort(g1.begin(), g1.end());
      std::sort(g2.begin(), g2.end());
      std::vector<std::string> common;
      std::set_intersection(g1.begin(), g1.end(), g2.begin(), g2.end(),
                            std::back_inserter(common));
      size_t denom = g1.size() + g2.size();
      if (denom == 0) continue;
      best = std::max(best, 2.0 * static_cast<double>(common.size()) /
                                static_cast<double>(denom));
    }
  }
  return best;
}

inline double text_sim(const std::vector<std::string>& t1, const std::vector<std::string>& t2,
                       const dart::LexicalDatabase& db) {
  if (t1.empty() || t2.empty()) return 0.0;
  // full pair table first, then the two directional bests
  std::vector<std::vector<double>> table(t1.size(), std::vector<double>(t2.size()));
  for (size_t i = 0; i < t1.size(); ++i) {
    for (size_t j = 0; j < t2.size(); ++j) table[i][j] = word_sim(t1[i], t2[j], db);
  }
  double sum1 = 0.0;
  for (size_t i = 0; i < t1.size(); ++i) {
    sum1 += *std::max_element(table[i].begin(), table[i].end());
  }
  double sum2 = 0.0;
  for (size_t j = 0; j < t2.size(); ++j) {
    double best = 0.0;
    for (size_t i = 0; i < t1.size(); ++i) best = std::max(best, table[i][j]);
    sum2 += best;
  }
  return 0.5 * (sum1 / static_cast<double>(t1.size()) + sum2 / static_cast<double>(t2.size()));
}

// Co-occurrence cells straight from the corpus rows, bypassing BaselineModel.
// Returns the matrix indexed by the given pattern order.
inline std::vector<std::vector<long long>> cooccurrence(
    const std::vector<dart::DirectedTriple>& corpus, const std::vector<dart::PatternKey>& order,
    bool zeroDiagonal) {
  auto pair_of = [](const dart::DirectedTriple& t) {
    return t.direction == dart::Direction::Forward ? std::make_pair(t.subject, t.object)
                                                   : std::make_pair(t.object, t.subject);
  };
  std::vector<std::map<std::pair<std::string, std::string>, long long>> occ(order.size());
  for (const dart::DirectedTriple& t : corpus) {
    for (size_t i = 0; i < order.size(); ++i) {
      if (order[i].text == t.pattern && order[i].direction == t.direction) {
        occ[i][pair_of(t)] += t.count;
      }
    }
  }
  std::vector<std::vector<long long>> cells(order.size(),
                                            std::vector<long long>(order.size(), 0));
  for (size_t i = 0; i < order.size(); ++i) {
    for (size_t j = 0; j < order.size(); ++j) {
      if (i == j && zeroDiagonal) continue;
      long long sum = 0;
      for (const auto& [pair, ci] : occ[i]) {
        auto jt = occ[j].find(pair);
        if (jt != occ[j].end()) sum += ci + jt->second;
      }
      cells[i][j] = sum;
    }
  }
  return cells;
}

// Eq-style seed weights evaluated directly against one cluster.
inline std::map<std::pair<std::string, std::string>, double> seed_weights(
    const dart::BaselineCluster& cluster, const std::vector<std::vector<double>>& rows,
    const dart::BaselineModel& model) {
  std::map<std::pair<std::string, std::string>, double> weights;
  for (int row : cluster.memberRows) {
    double sq = 0.0;
    for (size_t d = 0; d < rows[row].size(); ++d) {
      double diff = rows[row][d] - cluster.centroid[d];
      sq += diff * diff;
    }
    double sd = std::sqrt(sq);
    for (const auto& [pairIdx, count] : model.occ[row]) {
      weights[model.pairs[pairIdx]] += static_cast<double>(count) / (1.0 + sd);
    }
  }
  return weights;
}

}  // namespace oracle
