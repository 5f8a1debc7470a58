#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lmrank/corpus.hpp"
#include "lmrank/eval.hpp"
#include "lmrank/graph.hpp"
#include "lmrank/rerank.hpp"

namespace lmrank {

// One re-ranking criterion from the algorithm family.
struct AlgorithmSpec {
  enum class Family { graph_influx, graph_recursive, hits, prior };

  std::string name;
  Family family = Family::graph_influx;
  GraphKind graph_kind = GraphKind::uniform;  // influx/recursive families
  bool combine_lm = false;                    // multiply by query likelihood
  bool hits_authority = true;                 // hits family
  PriorKind prior = PriorKind::uniform;       // prior family

  bool needs_alpha() const { return family != Family::prior; }
  bool needs_lambda(bool hits_smoothed) const {
    return family == Family::graph_recursive || (family == Family::hits && hits_smoothed);
  }
};

// Known algorithm names, in report order.
const std::vector<std::string>& known_algorithms();
std::optional<AlgorithmSpec> parse_algorithm(const std::string& name);

struct ExperimentConfig {
  enum class Mode { rerank, full_corpus };

  std::filesystem::path corpus_path;
  CorpusFormat format = CorpusFormat::jsonl;
  std::filesystem::path queries_path;
  std::filesystem::path qrels_path;
  std::filesystem::path out_dir;

  int dinit = 50;
  std::vector<double> mu_grid = {250, 500, 1000, 2000, 3000, 5000};
  std::vector<int> alpha_grid = {4, 9, 19, 29, 39, 49};
  std::vector<double> lambda_grid = {0.0, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5,
                                     0.6,  0.7,  0.8, 0.9, 0.95};
  std::vector<std::string> algorithms;  // empty = the eight graph methods
  LinkMode link_mode = LinkMode::lm_generation;
  Metric sweep_metric = Metric::prec5;
  Mode mode = Mode::rerank;
  int full_corpus_cap = 2000;
  std::string hits_graph = "weighted";  // graph the HITS variants run on
  bool hits_smoothed = false;
  bool dump_graphs = false;
  int threads = 0;  // 0 = hardware concurrency
  std::uint64_t seed = 0;  // reserved for randomized diagnostics; unused by the pipeline

  // Expanded algorithm list ("all" and defaults resolved), in report order.
  std::vector<AlgorithmSpec> algorithm_specs() const;

  // Sorts grids, resolves algorithm names; throws ConfigError on problems.
  void validate();
};

// `key = value` lines; '#' starts a comment. Keys match the struct fields.
ExperimentConfig load_config_file(const std::filesystem::path& path);

// Applies one key/value pair (shared by the file parser and CLI overrides).
void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value);

}  // namespace lmrank
