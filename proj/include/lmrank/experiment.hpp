#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "lmrank/config.hpp"
#include "lmrank/eval.hpp"
#include "lmrank/ranking.hpp"

namespace lmrank {

struct AlgorithmResult {
  std::string name;
  int alpha = -1;       // -1 when not applicable
  double lambda = -1.0; // -1 when not applicable
  std::array<MetricReport, 3> metrics;  // prec@5, prec@10, MRR
  std::vector<RankedList> rankings;     // per evaluated query
};

struct ExperimentResult {
  double mu = 0.0;                    // tuned by average precision at 1000
  std::array<double, 3> baseline_mu{};
  std::vector<std::string> eval_qids; // queries with relevant judgments
  int excluded_queries = 0;
  int dinit_size = 0;

  std::array<MetricReport, 3> initial_metrics;
  std::array<MetricReport, 3> upper_bound_metrics;
  std::array<MetricReport, 3> opt_baseline_metrics;
  std::vector<AlgorithmResult> algorithms;

  std::string report_text;
  std::string report_tsv;
};

// Runs the full protocol: tune mu, retrieve, sweep (alpha, lambda) per
// algorithm on the sweep metric, evaluate all three metrics at the selected
// settings, test significance against the initial ranking and the
// per-metric optimized baselines, and write reports plus run files into
// cfg.out_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr);

// Same pipeline with the re-ranking set widened to the whole corpus
// (refused above cfg.full_corpus_cap).
ExperimentResult run_full_corpus(const ExperimentConfig& cfg, std::ostream* log = nullptr);

}  // namespace lmrank
