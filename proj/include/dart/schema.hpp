#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dart/embed.hpp"
#include "dart/errors.hpp"
#include "dart/io.hpp"
#include "dart/text.hpp"

namespace dart {

struct PropertySignature {
  std::string iri;
  std::vector<std::string> labelTokens;
  std::string domain;
  std::string range;
};

struct SchemaOverrides {
  std::map<std::string, std::string> domain;  // property IRI -> class IRI
  std::map<std::string, std::string> range;
};

struct OntologySchema {
  std::vector<PropertySignature> properties;  // ordered by IRI
  std::set<std::pair<std::string, std::string>> subclassClosure;
  std::set<std::string> classes;
  std::vector<std::string> warnings;

  // Reflexive-transitive subclass test. Classes never mentioned in the
  // schema are still subclasses of themselves.
  bool is_subclass_of(const std::string& a, const std::string& b) const {
    if (a == b) return true;
    return subclassClosure.count({a, b}) > 0;
  }

  const PropertySignature* find_property(const std::string& iri) const {
    for (const PropertySignature& p : properties) {
      if (p.iri == iri) return &p;
    }
    return nullptr;
  }
};

inline std::string iri_local_name(const std::string& iri) {
  size_t pos = iri.find_last_of("#/");
  return pos == std::string::npos ? iri : iri.substr(pos + 1);
}

// Lowercased name pieces with function words removed; the explicit label
// wins over the IRI local name when both exist.
inline std::vector<std::string> property_label_tokens(const std::string& iri,
                                                      const std::optional<std::string>& label,
                                                      const FunctionWordList& fw) {
  std::vector<std::string> raw =
      label ? camel_split(normalize(*label)) : camel_split(iri_local_name(iri));
  std::vector<std::string> out;
  for (const std::string& t : raw) {
    if (!fw.contains(t)) out.push_back(t);
  }
  return out;
}

namespace detail {

struct NtTriple {
  std::string subject;
  std::string predicate;
  std::string object;
  bool objectIsLiteral = false;
};

// Minimal N-Triples line reader: <s> <p> <o> . or <s> <p> "literal"@lang .
inline std::optional<NtTriple> parse_nt_line(const std::string& line) {
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  };
  auto read_iri = [&]() -> std::optional<std::string> {
    if (i >= line.size() || line[i] != '<') return std::nullopt;
    size_t end = line.find('>', i + 1);
    if (end == std::string::npos) return std::nullopt;
    std::string iri = line.substr(i + 1, end - i - 1);
    i = end + 1;
    return iri;
  };
  NtTriple t;
  skip_ws();
  auto s = read_iri();
  if (!s) return std::nullopt;
  t.subject = *s;
  skip_ws();
  auto p = read_iri();
  if (!p) return std::nullopt;
  t.predicate = *p;
  skip_ws();
  if (i < line.size() && line[i] == '"') {
    size_t end = i + 1;
    while (end < line.size() && (line[end] != '"' || line[end - 1] == '\\')) ++end;
    if (end >= line.size()) return std::nullopt;
    t.object = line.substr(i + 1, end - i - 1);
    t.objectIsLiteral = true;
    i = end + 1;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '.') ++i;  // @lang / ^^type
  } else {
    auto o = read_iri();
    if (!o) return std::nullopt;
    t.object = *o;
  }
  skip_ws();
  if (i >= line.size() || line[i] != '.') return std::nullopt;
  return t;
}

}  // namespace detail

// Reads the rdfs:domain / rdfs:range / rdfs:subClassOf / rdfs:label subset of
// an N-Triples file. Properties need both a domain and a range (overrides can
// supply either); the rest are excluded with a warning. Subclass cycles are
// tolerated with a warning.
inline OntologySchema parse_schema(const std::string& path, const FunctionWordList& fw,
                                   const SchemaOverrides& overrides = SchemaOverrides{}) {
  static const std::string kDomain = "http://www.w3.org/2000/01/rdf-schema#domain";
  static const std::string kRange = "http://www.w3.org/2000/01/rdf-schema#range";
  static const std::string kSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
  static const std::string kLabel = "http://www.w3.org/2000/01/rdf-schema#label";

  OntologySchema schema;
  std::map<std::string, std::string> domains = overrides.domain;
  std::map<std::string, std::string> ranges = overrides.range;
  std::map<std::string, std::string> labels;
  std::set<std::string> propertyIris;
  std::map<std::string, std::set<std::string>> edges;
  size_t lineno = 0;
  for (const std::string& line : read_lines(path)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::optional<detail::NtTriple> t = detail::parse_nt_line(line);
    if (!t) {
      schema.warnings.push_back(path + ":" + std::to_string(lineno) + ": skipped invalid line");
      continue;
    }
    if (t->predicate == kDomain && !t->objectIsLiteral) {
      if (!domains.count(t->subject)) domains[t->subject] = t->object;
      propertyIris.insert(t->subject);
      schema.classes.insert(t->object);
    } else if (t->predicate == kRange && !t->objectIsLiteral) {
      if (!ranges.count(t->subject)) ranges[t->subject] = t->object;
      propertyIris.insert(t->subject);
      schema.classes.insert(t->object);
    } else if (t->predicate == kSubClassOf && !t->objectIsLiteral) {
      edges[t->subject].insert(t->object);
      schema.classes.insert(t->subject);
      schema.classes.insert(t->object);
    } else if (t->predicate == kLabel && t->objectIsLiteral) {
      labels[t->subject] = t->object;
    }
  }
  for (const auto& [prop, cls] : overrides.domain) {
    propertyIris.insert(prop);
    schema.classes.insert(cls);
  }
  for (const auto& [prop, cls] : overrides.range) {
    propertyIris.insert(prop);
    schema.classes.insert(cls);
  }

  // reflexive-transitive closure over the subclass graph
  for (const std::string& c : schema.classes) schema.subclassClosure.insert({c, c});
  for (const auto& [from, tos] : edges) {
    std::set<std::string> reach;
    std::vector<std::string> stack(tos.begin(), tos.end());
    while (!stack.empty()) {
      std::string cur = stack.back();
      stack.pop_back();
      if (!reach.insert(cur).second) continue;
      if (cur == from) {
        schema.warnings.push_back("subclass cycle through " + from);
        continue;
      }
      auto it = edges.find(cur);
      if (it != edges.end()) stack.insert(stack.end(), it->second.begin(), it->second.end());
    }
    for (const std::string& to : reach) schema.subclassClosure.insert({from, to});
  }

  for (const std::string& iri : propertyIris) {
    auto dit = domains.find(iri);
    auto rit = ranges.find(iri);
    if (dit == domains.end() || rit == ranges.end()) {
      schema.warnings.push_back("property excluded (missing domain or range): " + iri);
      continue;
    }
    std::optional<std::string> label;
    auto lit = labels.find(iri);
    if (lit != labels.end()) label = lit->second;
    PropertySignature sig;
    sig.iri = iri;
    sig.labelTokens = property_label_tokens(iri, label, fw);
    sig.domain = dit->second;
    sig.range = rit->second;
    if (sig.labelTokens.empty()) {
      schema.warnings.push_back("property excluded (no content tokens in name): " + iri);
      continue;
    }
    schema.properties.push_back(std::move(sig));
  }
  return schema;
}

}  // namespace dart
