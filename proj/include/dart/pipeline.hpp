#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dart/corpus.hpp"
#include "dart/discover.hpp"
#include "dart/embed.hpp"
#include "dart/errors.hpp"
#include "dart/ground.hpp"
#include "dart/lexsim.hpp"
#include "dart/schema.hpp"
#include "dart/triples.hpp"

namespace dart {

enum class Stage { Ingest, Discover, Ground, Triples };

inline const std::vector<std::pair<Stage, std::string>>& stage_order() {
  static const std::vector<std::pair<Stage, std::string>> order = {
      {Stage::Ingest, "ingest"},
      {Stage::Discover, "discover"},
      {Stage::Ground, "ground"},
      {Stage::Triples, "triples"},
  };
  return order;
}

inline Stage parse_stage(const std::string& name) {
  for (const auto& [stage, n] : stage_order()) {
    if (n == name) return stage;
  }
  throw ConfigError("unknown stage: " + name);
}

struct PipelineConfig {
  std::string corpusPath;
  CorpusFormat corpusFormat = CorpusFormat::SimpleTsv;
  RceColumns rceColumns;
  std::string d1InstancesPath, d1Label, d1Class;
  std::string d2InstancesPath, d2Label, d2Class;
  std::string dname;
  std::string embeddingsPath;
  std::string lexdbPath;
  std::string functionWordsPath;
  std::string schemaPath;
  SchemaOverrides schemaOverrides;
  std::string ns = "http://example.org/discovered#";
  std::string outDir = "out";
  double cThreshold = 0.2;
  TextSimilarityParams simParams;  // sThreshold 0.5, gThreshold 0.75
  bool useRawTokens = false;
  std::set<Stage> stages = {Stage::Ingest, Stage::Discover, Stage::Ground, Stage::Triples};

  std::string d1_id() const { return d1Class.empty() ? d1Label : d1Class; }
  std::string d2_id() const { return d2Class.empty() ? d2Label : d2Class; }

  void validate() const {
    if (cThreshold < 0.0 || cThreshold > 1.0) throw ConfigError("cthreshold must be in [0, 1]");
    simParams.validate();
    auto need = [](const std::string& v, const std::string& key) {
      if (v.empty()) throw ConfigError("missing required setting: " + key);
    };
    if (stages.count(Stage::Ingest)) {
      need(corpusPath, "corpus");
      need(d1InstancesPath, "d1_instances");
      need(d2InstancesPath, "d2_instances");
      need(d1Label, "d1_label");
      need(d2Label, "d2_label");
    }
    if (stages.count(Stage::Discover)) {
      need(dname, "dname");
      need(embeddingsPath, "embeddings");
      need(lexdbPath, "lexdb");
      need(functionWordsPath, "function_words");
    }
    if (stages.count(Stage::Ground)) {
      need(schemaPath, "schema");
      need(lexdbPath, "lexdb");
      need(functionWordsPath, "function_words");
      if (d1_id().empty() || d2_id().empty()) {
        throw ConfigError("grounding needs d1_class/d2_class (or labels)");
      }
    }
  }
};

// Flat key=value file; '#' starts a comment line.
inline std::map<std::string, std::string> load_config_map(const std::string& path) {
  std::map<std::string, std::string> out;
  size_t lineno = 0;
  for (const std::string& line : read_lines(path)) {
    ++lineno;
    std::string trimmed = line;
    size_t b = trimmed.find_first_not_of(" \t");
    if (b == std::string::npos || trimmed[b] == '#') continue;
    size_t eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    auto strip = [](std::string s) {
      size_t x = s.find_first_not_of(" \t");
      if (x == std::string::npos) return std::string();
      size_t y = s.find_last_not_of(" \t");
      return s.substr(x, y - x + 1);
    };
    std::string key = strip(trimmed.substr(0, eq));
    std::string value = strip(trimmed.substr(eq + 1));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    out[key] = value;
  }
  return out;
}

namespace detail {

inline bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

inline double parse_double(const std::string& v, const std::string& key) {
  try {
    size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (...) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
}

inline int parse_int(const std::string& v, const std::string& key) {
  try {
    size_t used = 0;
    int i = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (...) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
}

// "prop=Class,prop2=Class2" -> map
inline std::map<std::string, std::string> parse_overrides(const std::string& v,
                                                          const std::string& key) {
  std::map<std::string, std::string> out;
  if (v.empty()) return out;
  for (const std::string& entry : split(v, ',')) {
    size_t eq = entry.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= entry.size()) {
      throw ConfigError(key + ": expected property=class entries, got '" + entry + "'");
    }
    out[entry.substr(0, eq)] = entry.substr(eq + 1);
  }
  return out;
}

}  // namespace detail

inline PipelineConfig config_from_map(const std::map<std::string, std::string>& m) {
  PipelineConfig cfg;
  for (const auto& [key, value] : m) {
    if (key == "corpus") cfg.corpusPath = value;
    else if (key == "corpus_format") {
      if (value == "tsv") cfg.corpusFormat = CorpusFormat::SimpleTsv;
      else if (value == "rce") cfg.corpusFormat = CorpusFormat::Rce;
      else throw ConfigError("corpus_format must be tsv or rce");
    }
    else if (key == "rce_subject_col") cfg.rceColumns.subject = detail::parse_int(value, key);
    else if (key == "rce_predicate_col") cfg.rceColumns.predicate = detail::parse_int(value, key);
    else if (key == "rce_object_col") cfg.rceColumns.object = detail::parse_int(value, key);
    else if (key == "rce_confidence_col") cfg.rceColumns.confidence = detail::parse_int(value, key);
    else if (key == "d1_instances") cfg.d1InstancesPath = value;
    else if (key == "d1_label") cfg.d1Label = value;
    else if (key == "d1_class") cfg.d1Class = value;
    else if (key == "d2_instances") cfg.d2InstancesPath = value;
    else if (key == "d2_label") cfg.d2Label = value;
    else if (key == "d2_class") cfg.d2Class = value;
    else if (key == "dname") cfg.dname = value;
    else if (key == "embeddings") cfg.embeddingsPath = value;
    else if (key == "lexdb") cfg.lexdbPath = value;
    else if (key == "function_words") cfg.functionWordsPath = value;
    else if (key == "schema") cfg.schemaPath = value;
    else if (key == "domain_override") cfg.schemaOverrides.domain = detail::parse_overrides(value, key);
    else if (key == "range_override") cfg.schemaOverrides.range = detail::parse_overrides(value, key);
    else if (key == "namespace") cfg.ns = value;
    else if (key == "out") cfg.outDir = value;
    else if (key == "cthreshold") cfg.cThreshold = detail::parse_double(value, key);
    else if (key == "sthreshold") cfg.simParams.sThreshold = detail::parse_double(value, key);
    else if (key == "gthreshold") cfg.simParams.gThreshold = detail::parse_double(value, key);
    else if (key == "raw_similarity") cfg.useRawTokens = detail::parse_bool(value, key);
    else if (key == "stages") {
      cfg.stages.clear();
      for (const std::string& s : split(value, ',')) {
        if (!s.empty()) cfg.stages.insert(parse_stage(s));
      }
      if (cfg.stages.empty()) throw ConfigError("stages: empty stage list");
    }
    else throw ConfigError("unknown setting: " + key);
  }
  return cfg;
}

struct StageReport {
  nlohmann::json counts = nlohmann::json::object();
  double timeMs = 0.0;
};

struct RunReport {
  nlohmann::json json = nlohmann::json::object();
};

// Orchestrates the requested stages in canonical order. Outputs of stages
// that did not run in-process are loaded back from the out directory, so any
// suffix of the pipeline can be re-run from persisted artifacts.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

  RunReport run() {
    RunReport report;
    report.json["class_pair"] = {{"d1_label", cfg_.d1Label},
                                 {"d1_class", cfg_.d1_id()},
                                 {"d2_label", cfg_.d2Label},
                                 {"d2_class", cfg_.d2_id()}};
    report.json["thresholds"] = {{"cthreshold", cfg_.cThreshold},
                                 {"sthreshold", cfg_.simParams.sThreshold},
                                 {"gthreshold", cfg_.simParams.gThreshold}};
    report.json["stages"] = nlohmann::json::object();
    for (const auto& [stage, name] : stage_order()) {
      if (!cfg_.stages.count(stage)) continue;
      auto t0 = std::chrono::steady_clock::now();
      nlohmann::json counts;
      try {
        switch (stage) {
          case Stage::Ingest: counts = run_ingest(); break;
          case Stage::Discover: counts = run_discover(); break;
          case Stage::Ground: counts = run_ground(); break;
          case Stage::Triples: counts = run_triples(); break;
        }
      } catch (const ConfigError& e) {
        throw ConfigError("stage " + name + ": " + e.what());
      } catch (const DataError& e) {
        throw DataError("stage " + name + ": " + e.what());
      }
      auto t1 = std::chrono::steady_clock::now();
      counts["time_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
      report.json["stages"][name] = std::move(counts);
    }
    for (const std::string& w : warnings_) report.json["warnings"].push_back(w);
    std::ofstream out = open_output(artifact("report.json"));
    out << report.json.dump(2) << '\n';
    return report;
  }

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::string artifact(const std::string& name) const {
    return (std::filesystem::path(cfg_.outDir) / name).string();
  }

  const FunctionWordList& function_words() {
    if (!fw_) fw_ = load_function_words(cfg_.functionWordsPath);
    return *fw_;
  }

  const TextSimilarity& text_sim() {
    if (!lexdb_) lexdb_ = load_lexical_db(cfg_.lexdbPath, function_words());
    if (!sim_) sim_.emplace(*lexdb_);
    return *sim_;
  }

  nlohmann::json run_ingest() {
    ClassSpec d1 = load_class_instances(cfg_.d1InstancesPath, cfg_.d1Label, cfg_.d1Class);
    ClassSpec d2 = load_class_instances(cfg_.d2InstancesPath, cfg_.d2Label, cfg_.d2Class);
    ParseStats stats;
    std::vector<RawTriple> raw =
        read_extraction_file(cfg_.corpusPath, cfg_.corpusFormat, &stats, cfg_.rceColumns);
    corpus_ = build_corpus(raw, d1, d2);
    write_corpus_tsv(artifact("corpus.tsv"), corpus_->triples);
    write_patterns_tsv(artifact("patterns.tsv"), corpus_->patterns);
    long long total = 0;
    for (const DirectedTriple& t : corpus_->triples) total += t.count;
    return {{"raw_records", stats.records},
            {"malformed", stats.malformed},
            {"triples", corpus_->triples.size()},
            {"patterns", corpus_->patterns.size()},
            {"total_count", total}};
  }

  nlohmann::json run_discover() {
    std::vector<PatternKey> patterns =
        corpus_ ? corpus_->patterns : read_patterns_tsv(artifact("patterns.tsv"));
    EmbeddingStore store = load_embeddings(cfg_.embeddingsPath);
    if (store.duplicates) {
      warnings_.push_back("embeddings: " + std::to_string(store.duplicates) +
                          " duplicate tokens (last kept)");
    }
    discovery_ = discover_relations(patterns, cfg_.dname, function_words(), store, text_sim(),
                                    cfg_.cThreshold, cfg_.simParams.sThreshold, cfg_.useRawTokens);
    write_clusters_json(artifact("clusters.json"), discovery_->clusters, cfg_.dname,
                        cfg_.cThreshold, cfg_.simParams.sThreshold);
    write_trace_log(artifact("trace.log"), discovery_->trace);
    return {{"patterns_in", patterns.size()},
            {"patterns_kept", discovery_->filtered.size()},
            {"clusters", discovery_->clusters.size()}};
  }

  std::vector<RelationCluster> clusters_for_downstream() {
    if (discovery_) return discovery_->clusters;
    std::vector<RelationCluster> clusters = read_clusters_json(artifact("clusters.json"));
    for (RelationCluster& c : clusters) annotate_patterns(c.members, function_words());
    return clusters;
  }

  nlohmann::json run_ground() {
    std::vector<RelationCluster> clusters = clusters_for_downstream();
    OntologySchema schema = parse_schema(cfg_.schemaPath, function_words(), cfg_.schemaOverrides);
    for (const std::string& w : schema.warnings) warnings_.push_back("schema: " + w);
    PatternSimilarity psim{&text_sim(), cfg_.useRawTokens};
    decisions_ = ground_all(clusters, schema, cfg_.d1_id(), cfg_.d2_id(),
                            cfg_.simParams.gThreshold, psim);
    write_decisions_tsv(artifact("decisions.tsv"), *decisions_);
    write_axioms_tsv(artifact("axioms.tsv"), *decisions_);
    std::map<std::string, int> tally;
    int axioms = 0;
    for (const GroundingDecision& d : *decisions_) {
      ++tally[verdict_name(d.verdict, false)];
      if (d.verdict == Verdict::Equivalent || d.verdict == Verdict::SubProperty ||
          d.verdict == Verdict::Inverse) {
        ++axioms;
      }
    }
    return {{"decisions", decisions_->size()},
            {"new", tally["new"]},
            {"equivalent", tally["equivalent"]},
            {"subproperty", tally["subproperty"]},
            {"inverse", tally["inverse"]},
            {"discard", tally["discard"]},
            {"axioms", axioms}};
  }

  nlohmann::json run_triples() {
    std::vector<RelationCluster> clusters = clusters_for_downstream();
    std::vector<GroundingDecision> decisions =
        decisions_ ? *decisions_ : read_decisions_tsv(artifact("decisions.tsv"));
    std::vector<DirectedTriple> triples =
        corpus_ ? corpus_->triples : read_corpus_tsv(artifact("corpus.tsv"));
    std::vector<GeneratedTriple> generated = generate_triples(clusters, decisions, triples);
    write_triples_tsv(artifact("triples.tsv"), generated);
    write_provenance_tsv(artifact("provenance.tsv"), generated);
    write_ntriples(artifact("triples.nt"), generated, cfg_.ns);
    long long total = 0;
    for (const GeneratedTriple& g : generated) total += g.sourceCount;
    return {{"triples", generated.size()}, {"total_source_count", total}};
  }

  PipelineConfig cfg_;
  std::optional<FunctionWordList> fw_;
  std::optional<LexicalDatabase> lexdb_;
  std::optional<TextSimilarity> sim_;
  std::optional<Corpus> corpus_;
  std::optional<DiscoveryResult> discovery_;
  std::optional<std::vector<GroundingDecision>> decisions_;
  std::vector<std::string> warnings_;
};

inline RunReport run_pipeline(const PipelineConfig& cfg) { return Pipeline(cfg).run(); }

}  // namespace dart
