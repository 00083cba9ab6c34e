#pragma once

#include <algorithm>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dart/corpus.hpp"
#include "dart/discover.hpp"
#include "dart/schema.hpp"

namespace dart {

enum class Verdict { New, Equivalent, SubProperty, Inverse, Discard };

inline std::string verdict_name(Verdict v, bool inverseViaSubclass = false) {
  switch (v) {
    case Verdict::New: return "new";
    case Verdict::Equivalent: return "equivalent";
    case Verdict::SubProperty: return "subproperty";
    case Verdict::Inverse: return inverseViaSubclass ? "inverse(sub)" : "inverse";
    case Verdict::Discard: return "discard";
  }
  return "?";
}

inline std::pair<Verdict, bool> parse_verdict(const std::string& s) {
  if (s == "new") return {Verdict::New, false};
  if (s == "equivalent") return {Verdict::Equivalent, false};
  if (s == "subproperty") return {Verdict::SubProperty, false};
  if (s == "inverse") return {Verdict::Inverse, false};
  if (s == "inverse(sub)") return {Verdict::Inverse, true};
  if (s == "discard") return {Verdict::Discard, false};
  throw DataError("bad verdict value: " + s);
}

struct GroundingDecision {
  PatternKey relation;  // cluster representative
  std::optional<std::string> matched;
  double repSimilarity = 0.0;
  double memberSupport = 0.0;
  Verdict verdict = Verdict::New;
  bool inverseViaSubclass = false;
  std::string relationDomain;
  std::string relationRange;
};

// Forward relations run from the first class to the second; Reverse
// relations swap the two.
inline std::pair<std::string, std::string> relation_signature(const PatternKey& rep,
                                                              const std::string& d1Id,
                                                              const std::string& d2Id) {
  if (rep.direction == Direction::Forward) return {d1Id, d2Id};
  return {d2Id, d1Id};
}

struct PropertyMatch {
  const PropertySignature* property = nullptr;
  double repSimilarity = 0.0;
  double memberSupport = 0.0;
};

// A property matches when the representative resembles its name at the
// grounding threshold and more than half of the cluster members do too.
// Among several such properties the highest representative similarity wins,
// then the higher support, then the lexicographically smallest IRI.
template <class SimFn>
std::optional<PropertyMatch> match_property(const RelationCluster& cluster,
                                            const OntologySchema& schema, double gThreshold,
                                            SimFn&& sim) {
  std::optional<PropertyMatch> best;
  for (const PropertySignature& prop : schema.properties) {
    double repSim = sim(cluster.rep(), prop.labelTokens);
    if (repSim < gThreshold) continue;
    size_t supporting = 0;
    for (const PatternKey& m : cluster.members) {
      if (sim(m, prop.labelTokens) >= gThreshold) ++supporting;
    }
    double support = static_cast<double>(supporting) / static_cast<double>(cluster.members.size());
    if (!(support > 0.5)) continue;
    PropertyMatch cand{&prop, repSim, support};
    bool better = !best || cand.repSimilarity > best->repSimilarity ||
                  (cand.repSimilarity == best->repSimilarity &&
                   (cand.memberSupport > best->memberSupport ||
                    (cand.memberSupport == best->memberSupport && prop.iri < best->property->iri)));
    if (better) best = cand;
  }
  return best;
}

// Signature comparison between a discovered relation and a schema property,
// checked in order: same signature, swapped signature, subclass on both
// sides, subclass on the swapped signature, and otherwise Discard.
inline std::pair<Verdict, bool> classify_grounding(const std::string& dR, const std::string& rR,
                                                   const PropertySignature& prop,
                                                   const OntologySchema& schema) {
  if (dR == prop.domain && rR == prop.range) return {Verdict::Equivalent, false};
  if (dR == prop.range && rR == prop.domain) return {Verdict::Inverse, false};
  if (schema.is_subclass_of(dR, prop.domain) && schema.is_subclass_of(rR, prop.range)) {
    return {Verdict::SubProperty, false};
  }
  if (schema.is_subclass_of(dR, prop.range) && schema.is_subclass_of(rR, prop.domain)) {
    return {Verdict::Inverse, true};
  }
  return {Verdict::Discard, false};
}

template <class SimFn>
GroundingDecision ground_cluster(const RelationCluster& cluster, const OntologySchema& schema,
                                 const std::string& d1Id, const std::string& d2Id,
                                 double gThreshold, SimFn&& sim) {
  GroundingDecision d;
  d.relation = cluster.rep();
  auto [dR, rR] = relation_signature(cluster.rep(), d1Id, d2Id);
  d.relationDomain = dR;
  d.relationRange = rR;
  std::optional<PropertyMatch> match = match_property(cluster, schema, gThreshold, sim);
  if (!match) {
    d.verdict = Verdict::New;
    return d;
  }
  d.matched = match->property->iri;
  d.repSimilarity = match->repSimilarity;
  d.memberSupport = match->memberSupport;
  auto [verdict, viaSub] = classify_grounding(dR, rR, *match->property, schema);
  d.verdict = verdict;
  d.inverseViaSubclass = viaSub;
  return d;
}

template <class SimFn>
std::vector<GroundingDecision> ground_all(const std::vector<RelationCluster>& clusters,
                                          const OntologySchema& schema, const std::string& d1Id,
                                          const std::string& d2Id, double gThreshold, SimFn&& sim) {
  std::vector<GroundingDecision> out;
  out.reserve(clusters.size());
  for (const RelationCluster& c : clusters) {
    out.push_back(ground_cluster(c, schema, d1Id, d2Id, gThreshold, sim));
  }
  return out;
}

// ------------------------------------------------------------------ artifacts

inline void write_decisions_tsv(const std::string& path,
                                const std::vector<GroundingDecision>& decisions) {
  std::ofstream out = open_output(path);
  for (const GroundingDecision& d : decisions) {
    out << d.relation.text << '\t' << direction_name(d.relation.direction) << '\t'
        << verdict_name(d.verdict, d.inverseViaSubclass) << '\t' << (d.matched ? *d.matched : "-")
        << '\t' << std::fixed << std::setprecision(4) << d.memberSupport << '\n';
  }
}

inline std::vector<GroundingDecision> read_decisions_tsv(const std::string& path) {
  std::vector<GroundingDecision> out;
  size_t lineno = 0;
  for (const std::string& line : read_lines(path)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f = split(line, '\t');
    if (f.size() != 5) throw DataError(path + ":" + std::to_string(lineno) + ": expected 5 fields");
    GroundingDecision d;
    d.relation.text = f[0];
    d.relation.direction = parse_direction(f[1]);
    auto [verdict, viaSub] = parse_verdict(f[2]);
    d.verdict = verdict;
    d.inverseViaSubclass = viaSub;
    if (f[3] != "-") d.matched = f[3];
    d.memberSupport = std::stod(f[4]);
    out.push_back(std::move(d));
  }
  return out;
}

// Schema axioms implied by non-New grounded relations.
inline void write_axioms_tsv(const std::string& path,
                             const std::vector<GroundingDecision>& decisions) {
  std::ofstream out = open_output(path);
  for (const GroundingDecision& d : decisions) {
    const char* kind = nullptr;
    switch (d.verdict) {
      case Verdict::Equivalent: kind = "equivalent-to"; break;
      case Verdict::SubProperty: kind = "sub-property-of"; break;
      case Verdict::Inverse: kind = "inverse-of"; break;
      default: break;
    }
    if (!kind) continue;
    out << d.relation.text << '\t' << direction_name(d.relation.direction) << '\t' << kind << '\t'
        << *d.matched << '\n';
  }
}

}  // namespace dart
