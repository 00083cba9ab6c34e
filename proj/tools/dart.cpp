// Command line front end for the relation discovery pipeline and the
// co-occurrence baseline. Exit codes: 0 ok, 1 bad configuration, 2 bad data.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dart/baseline.hpp"
#include "dart/evaluate.hpp"
#include "dart/pipeline.hpp"

namespace {

// Collects only the options the user actually passed, as config key=value
// entries, so CLI flags override the config file without clobbering defaults.
struct OptionBag {
  CLI::App* cmd = nullptr;
  std::map<std::string, std::string> values;
  std::string configPath;

  void add(const std::string& flag, const std::string& key, const std::string& desc) {
    cmd->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values[key] = v; }, desc);
  }
  void add_flag(const std::string& flag, const std::string& key, const std::string& desc) {
    cmd->add_flag_callback(
        flag, [this, key]() { values[key] = "true"; }, desc);
  }
  void add_overrides(const std::string& flag, const std::string& key, const std::string& desc) {
    cmd->add_option_function<std::vector<std::string>>(
        flag,
        [this, key](const std::vector<std::string>& entries) {
          std::string joined;
          for (const std::string& e : entries) {
            if (!joined.empty()) joined += ',';
            joined += e;
          }
          values[key] = joined;
        },
        desc);
  }
  void add_config() {
    cmd->add_option("--config", configPath, "flat key=value configuration file");
  }
  void add_common() {
    add_config();
    add("--out", "out", "output directory for stage artifacts");
  }
  void add_thresholds() {
    add("--cthreshold", "cthreshold", "contextual filter threshold");
    add("--sthreshold", "sthreshold", "clustering similarity threshold");
    add("--gthreshold", "gthreshold", "grounding similarity threshold");
  }
  void add_ingest_inputs() {
    add("--corpus", "corpus", "extraction corpus file");
    add("--format", "corpus_format", "corpus format: tsv or rce");
    add("--rce-subject-col", "rce_subject_col", "subject column for rce format");
    add("--rce-predicate-col", "rce_predicate_col", "predicate column for rce format");
    add("--rce-object-col", "rce_object_col", "object column for rce format");
    add("--rce-confidence-col", "rce_confidence_col", "confidence column for rce format");
    add("--d1-instances", "d1_instances", "instance list for the first class");
    add("--d1-label", "d1_label", "label of the first class");
    add("--d1-class", "d1_class", "ontology class IRI for the first class");
    add("--d2-instances", "d2_instances", "instance list for the second class");
    add("--d2-label", "d2_label", "label of the second class");
    add("--d2-class", "d2_class", "ontology class IRI for the second class");
  }
  void add_discover_inputs() {
    add("--dname", "dname", "domain name driving the contextual filter");
    add("--embeddings", "embeddings", "word embeddings, text format");
    add("--lexdb", "lexdb", "lemma/sense gloss database");
    add("--function-words", "function_words", "function word list");
    add_flag("--raw-similarity", "raw_similarity", "compare raw tokens instead of content words");
  }
  void add_ground_inputs() {
    add("--schema", "schema", "ontology schema, N-Triples");
    add_overrides("--domain-override", "domain_override", "property=class domain override");
    add_overrides("--range-override", "range_override", "property=class range override");
  }

  dart::PipelineConfig build(const std::string& forcedStages = "") const {
    std::map<std::string, std::string> merged;
    if (!configPath.empty()) merged = dart::load_config_map(configPath);
    for (const auto& [k, v] : values) merged[k] = v;
    if (!forcedStages.empty()) merged["stages"] = forcedStages;
    return dart::config_from_map(merged);
  }
};

void print_stage_counts(const dart::RunReport& report) {
  for (const auto& [name, counts] : report.json["stages"].items()) {
    std::cout << name << ":";
    for (const auto& [k, v] : counts.items()) {
      if (k == "time_ms") continue;
      std::cout << ' ' << k << '=' << v.dump();
    }
    std::cout << '\n';
  }
  if (report.json.contains("warnings")) {
    for (const auto& w : report.json["warnings"]) {
      std::cerr << "warning: " << w.get<std::string>() << '\n';
    }
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in = dart::open_input(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw dart::DataError(path + ": " + e.what());
  }
  return j;
}

std::string class_pair_of(const nlohmann::json& report, const std::string& path) {
  if (!report.contains("class_pair")) throw dart::DataError(path + ": no class_pair field");
  const nlohmann::json& cp = report["class_pair"];
  return cp.value("d1_label", "") + "/" + cp.value("d2_label", "");
}

struct BaselineArgs {
  OptionBag bag;
  size_t kMin = 3, kMax = 29, maxIterations = 100, topSeeds = 50;
  bool zeroDiagonal = false;
};

int run_baseline_command(BaselineArgs& args) {
  std::map<std::string, std::string> merged;
  if (!args.bag.configPath.empty()) merged = dart::load_config_map(args.bag.configPath);
  for (const auto& [k, v] : args.bag.values) merged[k] = v;
  merged.erase("stages");
  dart::PipelineConfig cfg = dart::config_from_map(merged);

  std::vector<dart::DirectedTriple> triples;
  std::string d1Label = cfg.d1Label, d2Label = cfg.d2Label;
  if (!cfg.d1InstancesPath.empty() && !cfg.d2InstancesPath.empty()) {
    // Raw extraction file plus instance lists: share the pipeline's ingestion.
    if (cfg.corpusPath.empty()) throw dart::ConfigError("missing required setting: corpus");
    dart::ClassSpec d1 = dart::load_class_instances(cfg.d1InstancesPath, cfg.d1Label, cfg.d1Class);
    dart::ClassSpec d2 = dart::load_class_instances(cfg.d2InstancesPath, cfg.d2Label, cfg.d2Class);
    std::vector<dart::RawTriple> raw =
        dart::read_extraction_file(cfg.corpusPath, cfg.corpusFormat, nullptr, cfg.rceColumns);
    triples = dart::build_corpus(raw, d1, d2).triples;
  } else {
    // Otherwise the corpus argument is an ingested corpus.tsv artifact.
    std::string path = !cfg.corpusPath.empty()
                           ? cfg.corpusPath
                           : (std::filesystem::path(cfg.outDir) / "corpus.tsv").string();
    triples = dart::read_corpus_tsv(path);
    if (d1Label.empty()) {
      // Pick the pair labels up from an earlier run's report when present.
      std::string reportPath = (std::filesystem::path(cfg.outDir) / "report.json").string();
      if (std::filesystem::exists(reportPath)) {
        nlohmann::json j = read_json_file(reportPath);
        if (j.contains("class_pair")) {
          d1Label = j["class_pair"].value("d1_label", "");
          d2Label = j["class_pair"].value("d2_label", "");
        }
      }
    }
  }

  dart::BaselineParams params;
  params.kMin = args.kMin;
  params.kMax = args.kMax;
  params.maxIterations = args.maxIterations;
  params.topSeeds = args.topSeeds;
  params.zeroDiagonal = args.zeroDiagonal;

  auto t0 = std::chrono::steady_clock::now();
  dart::BaselineResult result = dart::run_baseline(triples, params);
  auto t1 = std::chrono::steady_clock::now();

  std::filesystem::path out(cfg.outDir);
  dart::write_baseline_relations_tsv((out / "baseline_relations.tsv").string(), result);
  dart::write_baseline_seeds_tsv((out / "baseline_seeds.tsv").string(), result);

  nlohmann::json report;
  report["system"] = "baseline";
  report["class_pair"] = {{"d1_label", d1Label}, {"d2_label", d2Label}};
  report["stages"]["baseline"] = {
      {"patterns", result.model.patterns.size()},
      {"k", result.k},
      {"clusters", result.clusters.size()},
      {"skipped", result.skipped},
      {"time_ms", std::chrono::duration<double, std::milli>(t1 - t0).count()}};
  for (const std::string& w : result.warnings) report["warnings"].push_back(w);
  std::ofstream rep = dart::open_output((out / "baseline_report.json").string());
  rep << report.dump(2) << '\n';

  for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';
  if (result.skipped) {
    std::cout << "baseline: skipped (patterns=" << result.model.patterns.size() << ")\n";
  } else {
    std::cout << "baseline: patterns=" << result.model.patterns.size() << " k=" << result.k
              << " clusters=" << result.clusters.size() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relation discovery over open-domain extraction corpora"};
  app.require_subcommand(1);

  OptionBag ingest{app.add_subcommand("ingest", "read a corpus and type its triples")};
  ingest.add_common();
  ingest.add_ingest_inputs();

  OptionBag discover{app.add_subcommand("discover", "filter patterns and cluster relations")};
  discover.add_common();
  discover.add_thresholds();
  discover.add_discover_inputs();

  OptionBag ground{app.add_subcommand("ground", "match discovered relations to schema properties")};
  ground.add_common();
  ground.add_thresholds();
  ground.add_discover_inputs();
  ground.add_ground_inputs();
  ground.add("--d1-label", "d1_label", "label of the first class");
  ground.add("--d1-class", "d1_class", "ontology class IRI for the first class");
  ground.add("--d2-label", "d2_label", "label of the second class");
  ground.add("--d2-class", "d2_class", "ontology class IRI for the second class");

  OptionBag triples{app.add_subcommand("triples", "materialize triples for kept relations")};
  triples.add_common();
  triples.add("--namespace", "namespace", "IRI prefix for exported triples");

  OptionBag pipe{app.add_subcommand("pipeline", "run all stages")};
  pipe.add_common();
  pipe.add_thresholds();
  pipe.add_ingest_inputs();
  pipe.add_discover_inputs();
  pipe.add_ground_inputs();
  pipe.add("--namespace", "namespace", "IRI prefix for exported triples");
  pipe.add("--stages", "stages", "comma-separated stage subset to run");

  BaselineArgs bl;
  bl.bag.cmd = app.add_subcommand("baseline", "co-occurrence matrix baseline");
  bl.bag.add_common();
  bl.bag.add_ingest_inputs();
  bl.bag.cmd->add_option("--kmin", bl.kMin, "smallest k for the elbow search");
  bl.bag.cmd->add_option("--kmax", bl.kMax, "largest k for the elbow search");
  bl.bag.cmd->add_option("--max-iterations", bl.maxIterations, "k-means iteration cap");
  bl.bag.cmd->add_option("--top-seeds", bl.topSeeds, "seed pairs emitted per relation");
  bl.bag.cmd->add_flag("--zero-diagonal", bl.zeroDiagonal, "zero the matrix diagonal");

  CLI::App* evalCmd = app.add_subcommand("evaluate", "score a judged relation sheet");
  std::string sheetPath;
  evalCmd->add_option("--sheet", sheetPath, "relation sheet with three verdict columns")
      ->required();

  CLI::App* compareCmd = app.add_subcommand("compare", "accuracy table for two runs");
  std::vector<std::string> reportPaths, sheetPaths, systemNames;
  compareCmd->add_option("--report", reportPaths, "run report (give twice)")
      ->expected(2)
      ->required();
  compareCmd->add_option("--sheet", sheetPaths, "judged sheet per run (give twice)")
      ->expected(2)
      ->required();
  compareCmd->add_option("--name", systemNames, "system names (give twice)")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 1;
  }

  try {
    if (ingest.cmd->parsed()) {
      print_stage_counts(dart::run_pipeline(ingest.build("ingest")));
    } else if (discover.cmd->parsed()) {
      print_stage_counts(dart::run_pipeline(discover.build("discover")));
    } else if (ground.cmd->parsed()) {
      print_stage_counts(dart::run_pipeline(ground.build("ground")));
    } else if (triples.cmd->parsed()) {
      print_stage_counts(dart::run_pipeline(triples.build("triples")));
    } else if (pipe.cmd->parsed()) {
      print_stage_counts(dart::run_pipeline(pipe.build()));
    } else if (bl.bag.cmd->parsed()) {
      return run_baseline_command(bl);
    } else if (evalCmd->parsed()) {
      dart::AccuracyResult r = dart::evaluate_accuracy(dart::load_sheet(sheetPath));
      std::cout << "correct=" << r.numCorrect << " total=" << r.total
                << " accuracy=" << dart::format_accuracy(r.accuracy) << '\n';
    } else if (compareCmd->parsed()) {
      std::vector<std::string> names =
          systemNames.empty() ? std::vector<std::string>{"dart", "baseline"} : systemNames;
      std::vector<dart::ComparisonRow> rows;
      std::string firstPair;
      for (size_t i = 0; i < 2; ++i) {
        nlohmann::json rj = read_json_file(reportPaths[i]);
        std::string pair = class_pair_of(rj, reportPaths[i]);
        if (i == 0) {
          firstPair = pair;
        } else if (pair != firstPair) {
          throw dart::DataError("class pair mismatch: '" + firstPair + "' vs '" + pair + "'");
        }
        dart::ComparisonRow row;
        row.system = names[i];
        row.classPair = pair;
        row.result = dart::evaluate_accuracy(dart::load_sheet(sheetPaths[i]));
        rows.push_back(std::move(row));
      }
      std::cout << dart::format_comparison(rows);
    }
  } catch (const dart::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const dart::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
