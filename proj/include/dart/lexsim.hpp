#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "dart/embed.hpp"
#include "dart/errors.hpp"
#include "dart/io.hpp"
#include "dart/text.hpp"

namespace dart {

struct Sense {
  std::string id;
  std::string pos;
  std::vector<std::string> gloss;  // normalized, function words removed
};

struct LexicalDatabase {
  std::unordered_map<std::string, std::vector<Sense>> senses;
  size_t malformed = 0;

  const std::vector<Sense>* find(const std::string& lemma) const {
    auto it = senses.find(lemma);
    return it == senses.end() ? nullptr : &it->second;
  }
};

// Gloss file: lemma <TAB> pos <TAB> sense id <TAB> gloss text. Gloss tokens
// are lowercased and stripped of function words at load time.
inline LexicalDatabase load_lexical_db(const std::string& path, const FunctionWordList& fw) {
  LexicalDatabase db;
  for (const std::string& line : read_lines(path)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f = split(line, '\t');
    if (f.size() != 4) {
      ++db.malformed;
      continue;
    }
    Sense s;
    s.id = f[2];
    s.pos = f[1];
    for (const std::string& t : tokenize(normalize(f[3]))) {
      if (!fw.contains(t)) s.gloss.push_back(t);
    }
    db.senses[normalize(f[0])].push_back(std::move(s));
  }
  if (db.senses.empty()) throw DataError("lexical database is empty: " + path);
  return db;
}

namespace detail {

// Multiset intersection size of two token lists.
inline int gloss_overlap(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::map<std::string, int> counts;
  for (const std::string& t : a) ++counts[t];
  int overlap = 0;
  for (const std::string& t : b) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return overlap;
}

}  // namespace detail

// Identical words score 1. Otherwise the best Dice-normalized gloss overlap
// over all sense pairs; words without senses score 0. Part of speech is kept
// in the database but plays no role here.
inline double word_similarity(const std::string& w1, const std::string& w2,
                              const LexicalDatabase& db) {
  if (w1 == w2) return 1.0;
  const std::vector<Sense>* s1 = db.find(w1);
  const std::vector<Sense>* s2 = db.find(w2);
  if (!s1 || !s2 || s1->empty() || s2->empty()) return 0.0;
  double best = 0.0;
  for (const Sense& a : *s1) {
    for (const Sense& b : *s2) {
      size_t denom = a.gloss.size() + b.gloss.size();
      if (denom == 0) continue;
      double sim = 2.0 * detail::gloss_overlap(a.gloss, b.gloss) / static_cast<double>(denom);
      best = std::max(best, sim);
    }
  }
  return best;
}

struct TextSimilarityParams {
  double sThreshold = 0.5;   // clustering gate
  double gThreshold = 0.75;  // grounding gate

  void validate() const {
    if (!(sThreshold >= 0.0 && sThreshold <= gThreshold && gThreshold <= 1.0)) {
      throw ConfigError("thresholds must satisfy 0 <= sthreshold <= gthreshold <= 1");
    }
  }
};

// Word-pair similarities with a symmetric memo cache. Caching only
// short-circuits recomputation; values are identical with or without it.
class TextSimilarity {
 public:
  explicit TextSimilarity(const LexicalDatabase& db) : db_(db) {}

  double word(const std::string& w1, const std::string& w2) const {
    if (w1 == w2) return 1.0;
    const std::string& lo = w1 < w2 ? w1 : w2;
    const std::string& hi = w1 < w2 ? w2 : w1;
    std::string key = lo + '\x1f' + hi;
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    double sim = word_similarity(lo, hi, db_);
    cache_.emplace(std::move(key), sim);
    return sim;
  }

  // Mean of the best word alignments in both directions. Either side empty
  // scores 0; a list against itself scores exactly 1.
  double operator()(const std::vector<std::string>& t1, const std::vector<std::string>& t2) const {
    if (t1.empty() || t2.empty()) return 0.0;
    double sum1 = 0.0;
    for (const std::string& w : t1) {
      double best = 0.0;
      for (const std::string& v : t2) best = std::max(best, word(w, v));
      sum1 += best;
    }
    double sum2 = 0.0;
    for (const std::string& w : t2) {
      double best = 0.0;
      for (const std::string& v : t1) best = std::max(best, word(w, v));
      sum2 += best;
    }
    return 0.5 * (sum1 / static_cast<double>(t1.size()) + sum2 / static_cast<double>(t2.size()));
  }

 private:
  const LexicalDatabase& db_;
  mutable std::unordered_map<std::string, double> cache_;
};

inline double text_similarity(const std::vector<std::string>& t1,
                              const std::vector<std::string>& t2, const LexicalDatabase& db) {
  return TextSimilarity(db)(t1, t2);
}

// Pattern-level similarity used by clustering and grounding. Compares
// content words by default; raw token lists when configured to.
struct PatternSimilarity {
  const TextSimilarity* sim = nullptr;
  bool useRawTokens = false;

  const std::vector<std::string>& tokens_of(const PatternKey& p) const {
    return useRawTokens ? p.tokens : p.contentWords;
  }
  double operator()(const PatternKey& a, const PatternKey& b) const {
    return (*sim)(tokens_of(a), tokens_of(b));
  }
  double operator()(const PatternKey& a, const std::vector<std::string>& propTokens) const {
    return (*sim)(tokens_of(a), propTokens);
  }
};

}  // namespace dart
