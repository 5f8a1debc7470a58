#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lmrank/config.hpp"
#include "lmrank/errors.hpp"
#include "lmrank/experiment.hpp"
#include "lmrank/synthetic.hpp"

namespace {

int run_with_exit_codes(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const lmrank::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const lmrank::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structural re-ranking of language-model retrieval results"};
  app.require_subcommand(1);

  // ---- run ----
  auto* run = app.add_subcommand("run", "run a re-ranking experiment");
  std::string config_path, corpus, format, queries, qrels, algorithms, mode, out, link_mode;
  int dinit = -1, threads = -1;
  bool dump_graphs = false;
  run->add_option("--config", config_path, "configuration file (key = value lines)");
  run->add_option("--corpus", corpus, "corpus file");
  run->add_option("--format", format, "corpus format: jsonl or trec-sgml");
  run->add_option("--queries", queries, "TSV queries file (qid<TAB>text)");
  run->add_option("--qrels", qrels, "TREC qrels file");
  run->add_option("--algorithms", algorithms, "comma-separated algorithm list, or 'all'");
  run->add_option("--dinit", dinit, "size of the re-ranking set (default 50)");
  run->add_option("--mode", mode, "rerank or full-corpus");
  run->add_option("--link-mode", link_mode, "lm-generation or cosine-log-tfidf");
  run->add_option("--out", out, "output directory");
  run->add_option("--threads", threads, "worker threads (0 = auto)");
  run->add_flag("--dump-graphs", dump_graphs, "write per-query graph TSV dumps");

  // ---- synth ----
  auto* synth = app.add_subcommand("synth", "generate the bundled synthetic dataset");
  std::string synth_out;
  int topics = 15, core = 8, distractors = 50, background = 30;
  std::uint64_t seed = 20050815ULL;
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--topics", topics, "number of topics/queries");
  synth->add_option("--core-per-topic", core, "relevant documents per topic");
  synth->add_option("--distractors", distractors, "distractor documents");
  synth->add_option("--background", background, "background documents");
  synth->add_option("--seed", seed, "generator seed");

  // ---- algorithms ----
  auto* list = app.add_subcommand("algorithms", "list known algorithm names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // flag problems are config errors
  }

  if (run->parsed()) {
    return run_with_exit_codes([&]() {
      lmrank::ExperimentConfig cfg;
      if (!config_path.empty()) cfg = lmrank::load_config_file(config_path);
      if (!corpus.empty()) lmrank::apply_config_entry(cfg, "corpus", corpus);
      if (!format.empty()) lmrank::apply_config_entry(cfg, "format", format);
      if (!queries.empty()) lmrank::apply_config_entry(cfg, "queries", queries);
      if (!qrels.empty()) lmrank::apply_config_entry(cfg, "qrels", qrels);
      if (!algorithms.empty()) lmrank::apply_config_entry(cfg, "algorithms", algorithms);
      if (!mode.empty()) lmrank::apply_config_entry(cfg, "mode", mode);
      if (!link_mode.empty()) lmrank::apply_config_entry(cfg, "link_mode", link_mode);
      if (!out.empty()) lmrank::apply_config_entry(cfg, "out", out);
      if (dinit >= 0) lmrank::apply_config_entry(cfg, "dinit", std::to_string(dinit));
      if (threads >= 0) lmrank::apply_config_entry(cfg, "threads", std::to_string(threads));
      if (dump_graphs) lmrank::apply_config_entry(cfg, "dump_graphs", "true");

      lmrank::ExperimentResult result = lmrank::run_experiment(cfg, &std::cerr);
      std::cout << result.report_text;
    });
  }

  if (synth->parsed()) {
    return run_with_exit_codes([&]() {
      lmrank::SyntheticSpec spec;
      spec.topics = topics;
      spec.core_per_topic = core;
      spec.distractors = distractors;
      spec.background = background;
      spec.seed = seed;
      lmrank::write_synthetic(spec, synth_out);
      std::cout << "wrote corpus.jsonl, queries.tsv, qrels.txt, experiment.conf to "
                << synth_out << "\n";
    });
  }

  if (list->parsed()) {
    for (const std::string& name : lmrank::known_algorithms()) std::cout << name << "\n";
    return 0;
  }
  return 0;
}
