#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dart/corpus.hpp"
#include "dart/embed.hpp"
#include "dart/io.hpp"
#include "dart/lexsim.hpp"

namespace dart {

struct RelationCluster {
  int id = 0;
  std::vector<PatternKey> members;
  size_t representative = 0;

  const PatternKey& rep() const { return members[representative]; }
};

// One line of the clustering audit trail: which cluster the pattern went to,
// the best representative similarity seen at that moment, and how the
// representative changed.
struct TraceEvent {
  size_t seq = 0;
  PatternKey pattern;
  bool joined = false;  // false: opened a new cluster
  int clusterId = 0;
  std::optional<double> maxSim;  // empty for the very first pattern
  std::optional<PatternKey> repBefore;
  PatternKey repAfter;
};

// Processing order for clustering: frequent patterns first, ties by text,
// Forward before Reverse.
inline bool processing_order(const PatternKey& a, const PatternKey& b) {
  if (a.frequency != b.frequency) return a.frequency > b.frequency;
  if (a.text != b.text) return a.text < b.text;
  return a.direction == Direction::Forward && b.direction == Direction::Reverse;
}

inline void sort_for_processing(std::vector<PatternKey>& patterns) {
  std::stable_sort(patterns.begin(), patterns.end(), processing_order);
}

// The member with the highest average similarity to the rest of the cluster.
// Ties fall to the higher frequency, then lexicographic text, then Forward.
template <class SimFn>
size_t recompute_representative(const std::vector<PatternKey>& members, SimFn&& sim) {
  if (members.size() <= 1) return 0;
  size_t best = 0;
  double bestAvg = -1.0;
  for (size_t i = 0; i < members.size(); ++i) {
    double total = 0.0;
    for (size_t j = 0; j < members.size(); ++j) {
      if (j != i) total += sim(members[i], members[j]);
    }
    double avg = total / static_cast<double>(members.size() - 1);
    bool better = avg > bestAvg;
    if (!better && avg == bestAvg) {
      const PatternKey& cand = members[i];
      const PatternKey& cur = members[best];
      if (cand.frequency != cur.frequency) {
        better = cand.frequency > cur.frequency;
      } else if (cand.text != cur.text) {
        better = cand.text < cur.text;
      } else {
        better = cand.direction == Direction::Forward && cur.direction == Direction::Reverse;
      }
    }
    if (better) {
      best = i;
      bestAvg = avg;
    }
  }
  return best;
}

// Single pass over patterns already in processing order: each pattern joins
// the cluster whose current representative it resembles most, if that clears
// the threshold, and otherwise opens a new cluster. Joining a cluster
// re-elects its representative. Ties between clusters go to the earliest.
template <class SimFn>
std::vector<RelationCluster> single_pass_cluster(const std::vector<PatternKey>& ordered,
                                                 double sThreshold, SimFn&& sim,
                                                 std::vector<TraceEvent>* trace = nullptr) {
  std::vector<RelationCluster> clusters;
  size_t seq = 0;
  for (const PatternKey& p : ordered) {
    TraceEvent ev;
    ev.seq = seq++;
    ev.pattern = p;
    std::optional<double> best;
    size_t bestIdx = 0;
    for (size_t c = 0; c < clusters.size(); ++c) {
      double s = sim(p, clusters[c].rep());
      if (!best || s > *best) {
        best = s;
        bestIdx = c;
      }
    }
    ev.maxSim = best;
    if (best && *best >= sThreshold) {
      RelationCluster& cl = clusters[bestIdx];
      ev.joined = true;
      ev.clusterId = cl.id;
      ev.repBefore = cl.rep();
      cl.members.push_back(p);
      cl.representative = recompute_representative(cl.members, sim);
      ev.repAfter = cl.rep();
    } else {
      RelationCluster cl;
      cl.id = static_cast<int>(clusters.size());
      cl.members.push_back(p);
      cl.representative = 0;
      ev.joined = false;
      ev.clusterId = cl.id;
      ev.repAfter = p;
      clusters.push_back(std::move(cl));
    }
    if (trace) trace->push_back(std::move(ev));
  }
  return clusters;
}

struct DiscoveryResult {
  std::vector<PatternKey> filtered;  // survivors of the contextual filter, in processing order
  std::vector<RelationCluster> clusters;
  std::vector<TraceEvent> trace;
};

// Full discovery stage: contextual filter, ordering, clustering.
inline DiscoveryResult discover_relations(std::vector<PatternKey> patterns,
                                          const std::string& dname, const FunctionWordList& fw,
                                          const EmbeddingStore& store, const TextSimilarity& sim,
                                          double cThreshold, double sThreshold,
                                          bool useRawTokens = false) {
  annotate_patterns(patterns, fw);
  DiscoveryResult result;
  result.filtered = contextual_filter(patterns, dname, fw, store, cThreshold);
  sort_for_processing(result.filtered);
  PatternSimilarity psim{&sim, useRawTokens};
  result.clusters = single_pass_cluster(result.filtered, sThreshold, psim, &result.trace);
  return result;
}

// ------------------------------------------------------------------ artifacts

inline nlohmann::json pattern_to_json(const PatternKey& p) {
  return {{"text", p.text},
          {"direction", direction_name(p.direction)},
          {"frequency", p.frequency}};
}

inline PatternKey pattern_from_json(const nlohmann::json& j) {
  PatternKey p;
  p.text = j.at("text").get<std::string>();
  p.direction = parse_direction(j.at("direction").get<std::string>());
  p.frequency = j.at("frequency").get<long long>();
  return p;
}

inline void write_clusters_json(const std::string& path,
                                const std::vector<RelationCluster>& clusters,
                                const std::string& dname, double cThreshold, double sThreshold) {
  nlohmann::json j;
  j["dname"] = dname;
  j["cthreshold"] = cThreshold;
  j["sthreshold"] = sThreshold;
  j["clusters"] = nlohmann::json::array();
  for (const RelationCluster& c : clusters) {
    nlohmann::json jc;
    jc["id"] = c.id;
    jc["representative"] = pattern_to_json(c.rep());
    jc["members"] = nlohmann::json::array();
    for (const PatternKey& m : c.members) jc["members"].push_back(pattern_to_json(m));
    j["clusters"].push_back(std::move(jc));
  }
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
}

inline std::vector<RelationCluster> read_clusters_json(const std::string& path) {
  std::ifstream in = open_input(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  std::vector<RelationCluster> clusters;
  for (const nlohmann::json& jc : j.at("clusters")) {
    RelationCluster c;
    c.id = jc.at("id").get<int>();
    PatternKey rep = pattern_from_json(jc.at("representative"));
    for (const nlohmann::json& jm : jc.at("members")) {
      c.members.push_back(pattern_from_json(jm));
      if (c.members.back().same_key(rep)) c.representative = c.members.size() - 1;
    }
    clusters.push_back(std::move(c));
  }
  return clusters;
}

inline void write_trace_log(const std::string& path, const std::vector<TraceEvent>& trace) {
  std::ofstream out = open_output(path);
  out.precision(std::numeric_limits<double>::max_digits10);
  for (const TraceEvent& ev : trace) {
    out << ev.seq << '\t' << ev.pattern.text << '\t' << direction_name(ev.pattern.direction)
        << '\t' << ev.pattern.frequency << '\t' << (ev.joined ? "join" : "new") << '\t'
        << ev.clusterId << '\t';
    if (ev.maxSim) {
      out << *ev.maxSim;
    } else {
      out << '-';
    }
    out << '\t';
    if (ev.repBefore) {
      out << ev.repBefore->text << '\t' << direction_name(ev.repBefore->direction);
    } else {
      out << '-' << '\t' << '-';
    }
    out << '\t' << ev.repAfter.text << '\t' << direction_name(ev.repAfter.direction) << '\n';
  }
}

inline std::vector<TraceEvent> read_trace_log(const std::string& path) {
  std::vector<TraceEvent> trace;
  size_t lineno = 0;
  for (const std::string& line : read_lines(path)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f = split(line, '\t');
    if (f.size() != 11) throw DataError(path + ":" + std::to_string(lineno) + ": expected 11 fields");
    TraceEvent ev;
    ev.seq = std::stoull(f[0]);
    ev.pattern.text = f[1];
    ev.pattern.direction = parse_direction(f[2]);
    ev.pattern.frequency = std::stoll(f[3]);
    ev.joined = f[4] == "join";
    ev.clusterId = std::stoi(f[5]);
    if (f[6] != "-") ev.maxSim = std::stod(f[6]);
    if (f[7] != "-") {
      PatternKey rb;
      rb.text = f[7];
      rb.direction = parse_direction(f[8]);
      ev.repBefore = rb;
    }
    ev.repAfter.text = f[9];
    ev.repAfter.direction = parse_direction(f[10]);
    trace.push_back(std::move(ev));
  }
  return trace;
}

}  // namespace dart
