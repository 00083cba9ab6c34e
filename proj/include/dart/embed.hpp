#pragma once

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "dart/corpus.hpp"
#include "dart/errors.hpp"
#include "dart/io.hpp"
#include "dart/text.hpp"

namespace dart {

struct FunctionWordList {
  std::set<std::string> words;

  bool contains(const std::string& w) const { return words.count(w) > 0; }
};

// One word per line; blank lines and '#' comments are skipped.
inline FunctionWordList load_function_words(const std::string& path) {
  FunctionWordList fw;
  for (const std::string& line : read_lines(path)) {
    if (line.empty() || line[0] == '#') continue;
    std::string w = normalize(line);
    if (!w.empty()) fw.words.insert(w);
  }
  return fw;
}

inline std::vector<std::string> content_words(const std::string& text, const FunctionWordList& fw) {
  std::vector<std::string> out;
  for (const std::string& t : tokenize(normalize(text))) {
    if (!fw.contains(t)) out.push_back(t);
  }
  return out;
}

// Fills the token fields of each pattern from its text.
inline void annotate_patterns(std::vector<PatternKey>& patterns, const FunctionWordList& fw) {
  for (PatternKey& p : patterns) {
    p.tokens = tokenize(normalize(p.text));
    p.contentWords.clear();
    for (const std::string& t : p.tokens) {
      if (!fw.contains(t)) p.contentWords.push_back(t);
    }
  }
}

struct EmbeddingStore {
  size_t dim = 0;
  std::unordered_map<std::string, std::vector<double>> vectors;
  size_t duplicates = 0;

  const std::vector<double>* find(const std::string& token) const {
    auto it = vectors.find(token);
    return it == vectors.end() ? nullptr : &it->second;
  }
};

// Text format: first line "<vocab> <dim>", then one token and <dim>
// space-separated values per line. Duplicate tokens keep the last vector.
inline EmbeddingStore load_embeddings(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty embedding file: " + path);
  std::istringstream header(line);
  long long vocab = 0, dim = 0;
  if (!(header >> vocab >> dim) || vocab <= 0 || dim <= 0) {
    throw DataError(path + ":1: bad embedding header");
  }
  EmbeddingStore store;
  store.dim = static_cast<size_t>(dim);
  store.vectors.reserve(static_cast<size_t>(vocab));
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string token;
    ss >> token;
    std::vector<double> v(store.dim);
    for (size_t i = 0; i < store.dim; ++i) {
      if (!(ss >> v[i])) {
        throw DataError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(dim) + " vector components");
      }
    }
    double extra;
    if (ss >> extra) {
      throw DataError(path + ":" + std::to_string(lineno) + ": expected " +
                      std::to_string(dim) + " vector components");
    }
    if (store.vectors.count(token)) ++store.duplicates;
    store.vectors[token] = std::move(v);
  }
  return store;
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::logic_error("cosine: dimension mismatch");
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Largest cosine between any content word of the pattern and any content
// word of the domain name; words without a vector contribute nothing.
// Returns false when the pattern has no usable word at all.
inline bool max_domain_similarity(const PatternKey& pattern,
                                  const std::vector<const std::vector<double>*>& dnameVecs,
                                  const EmbeddingStore& store, double* best) {
  bool any = false;
  double m = 0.0;
  for (const std::string& w : pattern.contentWords) {
    const std::vector<double>* v = store.find(w);
    if (!v) continue;
    for (const std::vector<double>* dv : dnameVecs) {
      double c = cosine(*v, *dv);
      if (!any || c > m) m = c;
      any = true;
    }
  }
  *best = m;
  return any;
}

// Keeps patterns whose best content-word cosine against the domain name
// reaches the threshold. Patterns with no content words, or none of them in
// vocabulary, are dropped. The domain name itself must have at least one
// in-vocabulary content word.
inline std::vector<PatternKey> contextual_filter(const std::vector<PatternKey>& patterns,
                                                 const std::string& dname,
                                                 const FunctionWordList& fw,
                                                 const EmbeddingStore& store, double cThreshold) {
  std::vector<const std::vector<double>*> dnameVecs;
  for (const std::string& w : content_words(dname, fw)) {
    if (const std::vector<double>* v = store.find(w)) dnameVecs.push_back(v);
  }
  if (dnameVecs.empty()) {
    throw ConfigError("domain name '" + dname + "' has no in-vocabulary content word");
  }
  std::vector<PatternKey> kept;
  for (const PatternKey& p : patterns) {
    double best = 0.0;
    if (max_domain_similarity(p, dnameVecs, store, &best) && best >= cThreshold) {
      kept.push_back(p);
    }
  }
  return kept;
}

}  // namespace dart
