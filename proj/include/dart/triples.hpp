#pragma once

#include <map>
#include <string>
#include <vector>

#include "dart/corpus.hpp"
#include "dart/discover.hpp"
#include "dart/ground.hpp"

namespace dart {

struct GeneratedTriple {
  std::string subject;
  PatternKey relation;  // the cluster representative
  std::string object;
  std::optional<std::string> matched;  // grounded property IRI, when any
  long long sourceCount = 0;
  // one record per member pattern that contributed, with its share
  std::vector<std::pair<PatternKey, long long>> provenance;
};

// Subject/object order for a member's corpus triple: kept as-is when the
// member was extracted in the representative's direction, swapped otherwise.
inline std::pair<std::string, std::string> orient(const std::string& subject,
                                                  const std::string& object, Direction member,
                                                  Direction representative) {
  if (member == representative) return {subject, object};
  return {object, subject};
}

// Materializes triples for every relation that survived grounding. Each
// corpus triple of each cluster member is restated under the representative,
// swapping subject and object for members extracted in the opposite
// direction. Rows are merged on (subject, relation text, object).
inline std::vector<GeneratedTriple> generate_triples(
    const std::vector<RelationCluster>& clusters, const std::vector<GroundingDecision>& decisions,
    const std::vector<DirectedTriple>& corpus) {
  std::map<std::pair<std::string, Direction>, std::vector<const DirectedTriple*>> byPattern;
  for (const DirectedTriple& t : corpus) {
    byPattern[{t.pattern, t.direction}].push_back(&t);
  }
  std::map<std::pair<std::string, Direction>, const GroundingDecision*> byRelation;
  for (const GroundingDecision& d : decisions) {
    byRelation[{d.relation.text, d.relation.direction}] = &d;
  }

  std::vector<GeneratedTriple> out;
  std::map<std::tuple<std::string, std::string, std::string>, size_t> index;
  for (const RelationCluster& c : clusters) {
    const PatternKey& rep = c.rep();
    auto dit = byRelation.find({rep.text, rep.direction});
    if (dit == byRelation.end() || dit->second->verdict == Verdict::Discard) continue;
    for (const PatternKey& m : c.members) {
      auto tit = byPattern.find({m.text, m.direction});
      if (tit == byPattern.end()) continue;
      for (const DirectedTriple* t : tit->second) {
        auto [s, o] = orient(t->subject, t->object, m.direction, rep.direction);
        auto key = std::make_tuple(s, rep.text, o);
        auto iit = index.find(key);
        if (iit == index.end()) {
          GeneratedTriple g;
          g.subject = s;
          g.relation = rep;
          g.object = o;
          g.matched = dit->second->matched;
          index.emplace(key, out.size());
          out.push_back(std::move(g));
          iit = index.find(key);
        }
        GeneratedTriple& g = out[iit->second];
        g.sourceCount += t->count;
        bool found = false;
        for (auto& [prov, cnt] : g.provenance) {
          if (prov.same_key(m)) {
            cnt += t->count;
            found = true;
            break;
          }
        }
        if (!found) g.provenance.emplace_back(m, t->count);
      }
    }
  }
  return out;
}

// "flows through" -> flowsThrough; used when minting IRIs.
inline std::string camel_slug(const std::string& text) {
  std::string out;
  bool upper_next = false;
  for (char c : normalize(text)) {
    if (c == ' ') {
      upper_next = true;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80) {
      out += (upper_next && c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
      upper_next = false;
    }
  }
  return out;
}

inline void write_triples_tsv(const std::string& path, const std::vector<GeneratedTriple>& triples) {
  std::ofstream out = open_output(path);
  for (const GeneratedTriple& g : triples) {
    out << g.subject << '\t' << g.relation.text << '\t' << g.object << '\t'
        << direction_name(g.relation.direction) << '\t' << g.sourceCount << '\t'
        << (g.matched ? *g.matched : "-") << '\n';
  }
}

inline void write_provenance_tsv(const std::string& path,
                                 const std::vector<GeneratedTriple>& triples) {
  std::ofstream out = open_output(path);
  for (const GeneratedTriple& g : triples) {
    for (const auto& [prov, cnt] : g.provenance) {
      out << g.subject << '\t' << g.relation.text << '\t' << g.object << '\t' << prov.text << '\t'
          << direction_name(prov.direction) << '\t' << cnt << '\n';
    }
  }
}

// N-Triples-style export with relation and entity IRIs minted under the
// given namespace prefix.
inline void write_ntriples(const std::string& path, const std::vector<GeneratedTriple>& triples,
                           const std::string& ns) {
  std::ofstream out = open_output(path);
  for (const GeneratedTriple& g : triples) {
    out << '<' << ns << camel_slug(g.subject) << "> <" << ns << camel_slug(g.relation.text)
        << "> <" << ns << camel_slug(g.object) << "> .\n";
  }
}

}  // namespace dart
