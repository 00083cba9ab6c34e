#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dart/errors.hpp"
#include "dart/io.hpp"
#include "dart/text.hpp"

namespace dart {

enum class Direction { Forward, Reverse };

inline std::string direction_name(Direction d) {
  return d == Direction::Forward ? "forward" : "reverse";
}

inline Direction parse_direction(const std::string& s) {
  if (s == "forward") return Direction::Forward;
  if (s == "reverse") return Direction::Reverse;
  throw DataError("bad direction value: " + s);
}

struct RawTriple {
  std::string subject;
  std::string predicate;
  std::string object;
  std::optional<double> confidence;
};

struct ParseStats {
  size_t records = 0;
  size_t malformed = 0;
};

struct ClassSpec {
  std::string id;     // schema IRI used for grounding signatures
  std::string label;  // short display name, e.g. "Rivers"
  std::set<std::string> instances;
};

// One merged corpus record: subject belongs to the first class when the
// direction is Forward, to the second when Reverse.
struct DirectedTriple {
  std::string subject;
  std::string pattern;
  std::string object;
  Direction direction = Direction::Forward;
  long long count = 0;

  bool operator==(const DirectedTriple&) const = default;
};

// Identity of a relation phrase: its normalized text plus the direction it
// was extracted with. Token fields are filled in by annotate_patterns once a
// function-word list is available.
struct PatternKey {
  std::string text;
  Direction direction = Direction::Forward;
  long long frequency = 0;
  std::vector<std::string> tokens;
  std::vector<std::string> contentWords;

  bool same_key(const PatternKey& o) const {
    return text == o.text && direction == o.direction;
  }
};

struct Corpus {
  std::vector<DirectedTriple> triples;  // sorted by (subject, pattern, object, direction)
  std::vector<PatternKey> patterns;     // sorted by (text, direction)
};

enum class CorpusFormat { SimpleTsv, Rce };

// Column layout for tab-separated open-IE exports that carry extra fields
// around the triple itself. Indices are zero-based.
struct RceColumns {
  int subject = 1;
  int predicate = 2;
  int object = 3;
  int confidence = 8;
};

namespace detail {

inline std::optional<RawTriple> parse_simple_line(const std::string& line) {
  std::vector<std::string> f = split(line, '\t');
  if (f.size() < 3 || f.size() > 4) return std::nullopt;
  RawTriple t{f[0], f[1], f[2], std::nullopt};
  if (f.size() == 4) {
    try {
      t.confidence = std::stod(f[3]);
    } catch (...) {
      return std::nullopt;
    }
  }
  return t;
}

inline std::optional<RawTriple> parse_rce_line(const std::string& line, const RceColumns& cols) {
  std::vector<std::string> f = split(line, '\t');
  int needed = std::max({cols.subject, cols.predicate, cols.object});
  if (static_cast<int>(f.size()) <= needed) return std::nullopt;
  RawTriple t{f[cols.subject], f[cols.predicate], f[cols.object], std::nullopt};
  if (cols.confidence >= 0 && cols.confidence < static_cast<int>(f.size())) {
    try {
      t.confidence = std::stod(f[cols.confidence]);
    } catch (...) {
      // leave confidence unset; the triple fields themselves are fine
    }
  }
  return t;
}

}  // namespace detail

// Streams raw extraction records to `sink`, counting lines it had to skip.
// Blank lines are ignored silently; lines that do not fit the requested
// format are counted as malformed.
template <class Sink>
ParseStats parse_extraction_file(const std::string& path, CorpusFormat format, Sink&& sink,
                                 const RceColumns& cols = RceColumns{}) {
  std::ifstream in = open_input(path);
  ParseStats stats;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::optional<RawTriple> t = format == CorpusFormat::SimpleTsv
                                     ? detail::parse_simple_line(line)
                                     : detail::parse_rce_line(line, cols);
    if (!t) {
      ++stats.malformed;
      continue;
    }
    ++stats.records;
    sink(*t);
  }
  return stats;
}

inline std::vector<RawTriple> read_extraction_file(const std::string& path, CorpusFormat format,
                                                   ParseStats* stats = nullptr,
                                                   const RceColumns& cols = RceColumns{}) {
  std::vector<RawTriple> out;
  ParseStats s = parse_extraction_file(
      path, format, [&](const RawTriple& t) { out.push_back(t); }, cols);
  if (stats) *stats = s;
  return out;
}

inline ClassSpec load_class_instances(const std::string& path, const std::string& label,
                                      const std::string& id = "") {
  ClassSpec spec;
  spec.label = label;
  spec.id = id.empty() ? label : id;
  for (const std::string& line : read_lines(path)) {
    std::string n = normalize(line);
    if (!n.empty()) spec.instances.insert(n);
  }
  if (spec.instances.empty()) throw DataError("class '" + label + "' has no instances: " + path);
  return spec;
}

// Keeps records whose endpoints both belong to the class pair, assigns a
// direction and merges duplicates. A record consistent with both assignments
// (possible when the classes share instances) is emitted once, Forward.
inline Corpus build_corpus(const std::vector<RawTriple>& raw, const ClassSpec& d1,
                           const ClassSpec& d2) {
  std::map<std::tuple<std::string, std::string, std::string, Direction>, long long> merged;
  for (const RawTriple& t : raw) {
    std::string s = normalize(t.subject);
    std::string p = normalize(t.predicate);
    std::string o = normalize(t.object);
    if (s.empty() || p.empty() || o.empty()) continue;
    bool fwd = d1.instances.count(s) && d2.instances.count(o);
    bool rev = d2.instances.count(s) && d1.instances.count(o);
    if (!fwd && !rev) continue;
    Direction dir = fwd ? Direction::Forward : Direction::Reverse;
    merged[{s, p, o, dir}] += 1;
  }
  Corpus corpus;
  std::map<std::pair<std::string, Direction>, long long> freq;
  for (const auto& [key, count] : merged) {
    const auto& [s, p, o, dir] = key;
    corpus.triples.push_back({s, p, o, dir, count});
    freq[{p, dir}] += count;
  }
  for (const auto& [key, f] : freq) {
    PatternKey pk;
    pk.text = key.first;
    pk.direction = key.second;
    pk.frequency = f;
    corpus.patterns.push_back(std::move(pk));
  }
  return corpus;
}

inline void write_corpus_tsv(const std::string& path, const std::vector<DirectedTriple>& triples) {
  std::ofstream out = open_output(path);
  for (const DirectedTriple& t : triples) {
    out << t.subject << '\t' << t.pattern << '\t' << t.object << '\t'
        << direction_name(t.direction) << '\t' << t.count << '\n';
  }
}

inline std::vector<DirectedTriple> read_corpus_tsv(const std::string& path) {
  std::vector<DirectedTriple> out;
  size_t lineno = 0;
  for (const std::string& line : read_lines(path)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f = split(line, '\t');
    if (f.size() != 5) throw DataError(path + ":" + std::to_string(lineno) + ": expected 5 fields");
    out.push_back({f[0], f[1], f[2], parse_direction(f[3]), std::stoll(f[4])});
  }
  return out;
}

inline void write_patterns_tsv(const std::string& path, const std::vector<PatternKey>& patterns) {
  std::ofstream out = open_output(path);
  for (const PatternKey& p : patterns) {
    out << p.text << '\t' << direction_name(p.direction) << '\t' << p.frequency << '\n';
  }
}

inline std::vector<PatternKey> read_patterns_tsv(const std::string& path) {
  std::vector<PatternKey> out;
  size_t lineno = 0;
  for (const std::string& line : read_lines(path)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f = split(line, '\t');
    if (f.size() != 3) throw DataError(path + ":" + std::to_string(lineno) + ": expected 3 fields");
    PatternKey p;
    p.text = f[0];
    p.direction = parse_direction(f[1]);
    p.frequency = std::stoll(f[2]);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace dart
