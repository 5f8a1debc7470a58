#include "lmrank/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "lmrank/centrality.hpp"
#include "lmrank/errors.hpp"
#include "lmrank/graph.hpp"
#include "lmrank/language_model.hpp"
#include "lmrank/parallel.hpp"
#include "lmrank/rerank.hpp"
#include "lmrank/retrieval.hpp"
#include "lmrank/synthetic.hpp"

namespace lmrank {

namespace {

constexpr std::array<Metric, 3> kMetrics = {Metric::prec5, Metric::prec10, Metric::mrr};

struct QueryContext {
  const Query* query = nullptr;
  std::unordered_set<int> relevant;
  RankedList full_ranking;  // initial ranking at report depth
  RankedList dinit;         // the re-ranking set
  Matrix link_scores;       // pairwise generator scores over dinit
};

// Indexes a (possibly degenerate) alpha x lambda sweep for one algorithm.
struct SweepCell {
  double mean = -1.0;
  int alpha = -1;
  double lambda = -1.0;
};

std::string format_double(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

CentralityScores centrality_for(const AlgorithmSpec& spec, const QueryContext& qc,
                                const GenerationGraph& g_uniform,
                                const GenerationGraph& g_weighted, double lambda,
                                const ExperimentConfig& cfg, const Corpus& corpus) {
  switch (spec.family) {
    case AlgorithmSpec::Family::graph_influx:
      return influx(spec.graph_kind == GraphKind::uniform ? g_uniform : g_weighted);
    case AlgorithmSpec::Family::graph_recursive: {
      const GenerationGraph& base =
          spec.graph_kind == GraphKind::uniform ? g_uniform : g_weighted;
      return recursive_influx(smooth(base, lambda));
    }
    case AlgorithmSpec::Family::hits: {
      const GenerationGraph& base =
          cfg.hits_graph == "uniform" ? g_uniform : g_weighted;
      HitsScores h = cfg.hits_smoothed ? hits(smooth(base, lambda)) : hits(base);
      return spec.hits_authority ? std::move(h.authority) : std::move(h.hub);
    }
    case AlgorithmSpec::Family::prior:
      return prior_scores(corpus, qc.dinit, spec.prior);
  }
  throw ComputeError("unreachable algorithm family");
}

RankedList apply_algorithm(const AlgorithmSpec& spec, const QueryContext& qc,
                           const CentralityScores& scores) {
  return spec.combine_lm ? rerank_combined(qc.dinit, scores)
                         : rerank_by_centrality(qc.dinit, scores);
}

RankedList rerank_for(const AlgorithmSpec& spec, const QueryContext& qc, int alpha,
                      double lambda, const ExperimentConfig& cfg, const Corpus& corpus) {
  if (qc.dinit.entries.size() < 2) {
    RankedList empty;
    empty.qid = qc.dinit.qid;
    empty.cutoff = qc.dinit.cutoff;
    return empty;
  }
  std::vector<int> ids;
  ids.reserve(qc.dinit.entries.size());
  for (const ScoredDoc& e : qc.dinit.entries) ids.push_back(e.doc_id);

  GenerationGraph g_uniform, g_weighted;
  if (spec.family != AlgorithmSpec::Family::prior) {
    g_uniform = build_graph(ids, qc.link_scores, alpha, GraphKind::uniform, cfg.link_mode);
    g_weighted = build_graph(ids, qc.link_scores, alpha, GraphKind::weighted, cfg.link_mode);
  }
  CentralityScores scores =
      centrality_for(spec, qc, g_uniform, g_weighted, lambda, cfg, corpus);
  return apply_algorithm(spec, qc, scores);
}

std::string sanitize_filename(std::string name) {
  for (char& c : name)
    if (c == '+' || c == '@' || c == '/') c = '_';
  return name;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg_in, std::ostream* log) {
  ExperimentConfig cfg = cfg_in;
  cfg.validate();

  Corpus corpus = load_corpus(cfg.corpus_path, cfg.format, log);
  if (corpus.size() < 2) throw DataError("corpus must contain at least 2 documents");
  std::vector<Query> queries = load_queries(cfg.queries_path);
  Qrels qrels = load_qrels(cfg.qrels_path);

  ExperimentResult result;

  // Queries with no relevant judgments are excluded from every mean.
  std::vector<const Query*> eval_queries;
  for (const Query& q : queries)
    if (qrels.total_relevant(q.qid) > 0) eval_queries.push_back(&q);
  result.excluded_queries = static_cast<int>(queries.size() - eval_queries.size());
  if (eval_queries.empty()) throw DataError("no query has relevant judgments");
  for (const Query* q : eval_queries) result.eval_qids.push_back(q->qid);

  int dinit_size;
  if (cfg.mode == ExperimentConfig::Mode::full_corpus) {
    if (corpus.size() > cfg.full_corpus_cap)
      throw DataError("full-corpus mode refused: corpus has " + std::to_string(corpus.size()) +
                      " documents, cap is " + std::to_string(cfg.full_corpus_cap));
    dinit_size = corpus.size();
  } else {
    dinit_size = std::min(cfg.dinit, corpus.size());
    if (dinit_size < cfg.dinit && log)
      *log << "note: dinit reduced to corpus size (" << dinit_size << ")\n";
  }
  if (dinit_size < 2) throw DataError("re-ranking set must contain at least 2 documents");
  result.dinit_size = dinit_size;

  std::vector<int> alpha_grid;
  for (int a : cfg.alpha_grid)
    if (a < dinit_size) alpha_grid.push_back(a);
  if (alpha_grid.empty())
    throw ConfigError("no alpha grid value is smaller than the re-ranking set size");

  // ---- stage 1: tune mu, retrieve, prepare per-query state ----
  result.mu = tune_mu(queries, corpus, qrels, cfg.mu_grid, 1000, cfg.threads);
  if (log) *log << "tuned mu = " << result.mu << "\n";

  const int report_depth = std::max(dinit_size, std::min(1000, corpus.size()));
  const int n_queries = static_cast<int>(eval_queries.size());
  std::vector<QueryContext> contexts(n_queries);
  parallel_for(n_queries, cfg.threads, [&](int i) {
    QueryContext& qc = contexts[i];
    qc.query = eval_queries[i];
    qc.relevant = qrels.relevant_ids(qc.query->qid, corpus);
    qc.full_ranking = initial_rank(*qc.query, corpus, result.mu, report_depth);
    qc.dinit = qc.full_ranking;
    qc.dinit.cutoff = dinit_size;
    if (qc.dinit.entries.size() > static_cast<std::size_t>(dinit_size))
      qc.dinit.entries.resize(dinit_size);
    if (qc.dinit.entries.size() >= 2) {
      std::vector<int> ids;
      ids.reserve(qc.dinit.entries.size());
      for (const ScoredDoc& e : qc.dinit.entries) ids.push_back(e.doc_id);
      qc.link_scores = pairwise_link_scores(corpus, ids, cfg.link_mode, result.mu);
    }
  });

  // ---- stage 2: reference rows ----
  for (std::size_t mi = 0; mi < kMetrics.size(); ++mi) {
    MetricReport& init = result.initial_metrics[mi];
    MetricReport& upper = result.upper_bound_metrics[mi];
    init.metric = metric_name(kMetrics[mi]);
    upper.metric = metric_name(kMetrics[mi]);
    for (const QueryContext& qc : contexts) {
      init.per_query.push_back(metric_value(kMetrics[mi], qc.full_ranking, qc.relevant));
      upper.per_query.push_back(rerank_upper_bound(qc.dinit, qc.relevant, kMetrics[mi]));
    }
  }
  std::array<BaselineRun, 3> baselines;
  for (std::size_t mi = 0; mi < kMetrics.size(); ++mi) {
    baselines[mi] =
        optimized_baseline(queries, corpus, qrels, kMetrics[mi], cfg.mu_grid, cfg.threads);
    result.baseline_mu[mi] = baselines[mi].mu;
    result.opt_baseline_metrics[mi].metric = metric_name(kMetrics[mi]);
    result.opt_baseline_metrics[mi].per_query = baselines[mi].per_query;
    if (log)
      *log << "optimized baseline mu for " << metric_name(kMetrics[mi]) << " = "
           << baselines[mi].mu << "\n";
  }

  // ---- stage 3: (alpha, lambda) sweep on the sweep metric ----
  std::vector<AlgorithmSpec> specs = cfg.algorithm_specs();
  std::vector<SweepCell> selected(specs.size());

  for (std::size_t si = 0; si < specs.size(); ++si) {
    const AlgorithmSpec& spec = specs[si];
    std::vector<int> alphas = spec.needs_alpha() ? alpha_grid : std::vector<int>{-1};
    std::vector<double> lambdas = spec.needs_lambda(cfg.hits_smoothed)
                                      ? cfg.lambda_grid
                                      : std::vector<double>{-1.0};

    // mean sweep-metric per (alpha, lambda), queries accumulated in parallel
    std::vector<std::vector<double>> cell_sums(
        alphas.size(), std::vector<double>(lambdas.size(), 0.0));
    std::vector<std::vector<std::vector<double>>> per_thread(
        n_queries, std::vector<std::vector<double>>(
                       alphas.size(), std::vector<double>(lambdas.size(), 0.0)));
    parallel_for(n_queries, cfg.threads, [&](int qi) {
      const QueryContext& qc = contexts[qi];
      for (std::size_t ai = 0; ai < alphas.size(); ++ai)
        for (std::size_t li = 0; li < lambdas.size(); ++li) {
          RankedList reranked = rerank_for(spec, qc, alphas[ai], lambdas[li], cfg, corpus);
          per_thread[qi][ai][li] = metric_value(cfg.sweep_metric, reranked, qc.relevant);
        }
    });
    for (int qi = 0; qi < n_queries; ++qi)
      for (std::size_t ai = 0; ai < alphas.size(); ++ai)
        for (std::size_t li = 0; li < lambdas.size(); ++li)
          cell_sums[ai][li] += per_thread[qi][ai][li];

    SweepCell best;
    for (std::size_t ai = 0; ai < alphas.size(); ++ai)
      for (std::size_t li = 0; li < lambdas.size(); ++li) {
        double mean = cell_sums[ai][li] / n_queries;
        if (mean > best.mean) {  // grids ascend, so ties keep smaller alpha/lambda
          best.mean = mean;
          best.alpha = alphas[ai];
          best.lambda = lambdas[li];
        }
      }
    selected[si] = best;
  }

  // ---- stage 4: final rankings and all three metrics at selected settings ----
  for (std::size_t si = 0; si < specs.size(); ++si) {
    const AlgorithmSpec& spec = specs[si];
    AlgorithmResult ar;
    ar.name = spec.name;
    ar.alpha = selected[si].alpha;
    ar.lambda = selected[si].lambda;
    ar.rankings.resize(n_queries);
    parallel_for(n_queries, cfg.threads, [&](int qi) {
      ar.rankings[qi] =
          rerank_for(spec, contexts[qi], selected[si].alpha, selected[si].lambda, cfg, corpus);
    });
    for (std::size_t mi = 0; mi < kMetrics.size(); ++mi) {
      MetricReport& rep = ar.metrics[mi];
      rep.metric = metric_name(kMetrics[mi]);
      for (int qi = 0; qi < n_queries; ++qi)
        rep.per_query.push_back(
            metric_value(kMetrics[mi], ar.rankings[qi], contexts[qi].relevant));
      rep.sig_vs_initial =
          wilcoxon_two_sided(rep.per_query, result.initial_metrics[mi].per_query).significant;
      rep.sig_vs_opt_baseline =
          wilcoxon_two_sided(rep.per_query, result.opt_baseline_metrics[mi].per_query)
              .significant;
    }
    result.algorithms.push_back(std::move(ar));
  }

  // ---- stage 5: reports and output files ----
  std::filesystem::create_directories(cfg.out_dir);
  std::filesystem::create_directories(cfg.out_dir / "runs");

  {
    std::ostringstream tsv, txt;
    tsv << "algorithm\talpha\tlambda\tprec@5\tsig@5\tprec@10\tsig@10\tMRR\tsigMRR\n";

    txt << "re-ranking experiment over " << corpus.size() << " documents, " << n_queries
        << " evaluated queries (" << result.excluded_queries
        << " excluded for lack of relevant judgments)\n";
    txt << "mode: " << (cfg.mode == ExperimentConfig::Mode::full_corpus ? "full-corpus" : "rerank")
        << ", |D_init| = " << dinit_size << ", link mode: "
        << (cfg.link_mode == LinkMode::lm_generation ? "lm-generation" : "cosine-log-tfidf")
        << "\n";
    txt << "mu (avg-precision tuned) = " << format_double(result.mu, "%g")
        << "; optimized-baseline mu per metric:";
    for (std::size_t mi = 0; mi < kMetrics.size(); ++mi)
      txt << " " << metric_name(kMetrics[mi]) << "=" << format_double(result.baseline_mu[mi], "%g");
    txt << "\nsignificance (two-sided Wilcoxon at 95%): i = vs initial ranking, o = vs "
           "optimized baseline\n\n";

    auto txt_row = [&](const std::string& name, const std::string& alpha,
                       const std::string& lambda, const std::array<MetricReport, 3>& reports,
                       bool mark) {
      char row[256];
      std::array<std::string, 3> cells;
      for (std::size_t mi = 0; mi < 3; ++mi) {
        cells[mi] = format_double(reports[mi].mean(), "%.4f");
        if (mark) {
          std::string marks;
          if (reports[mi].sig_vs_initial) marks += "i";
          if (reports[mi].sig_vs_opt_baseline) marks += "o";
          cells[mi] += marks.empty() ? "  " : (marks.size() == 1 ? marks + " " : marks);
        } else {
          cells[mi] += "  ";
        }
      }
      std::snprintf(row, sizeof(row), "%-22s %6s %7s %10s %10s %10s\n", name.c_str(),
                    alpha.c_str(), lambda.c_str(), cells[0].c_str(), cells[1].c_str(),
                    cells[2].c_str());
      txt << row;
    };
    auto tsv_row = [&](const std::string& name, const std::string& alpha,
                       const std::string& lambda, const std::array<MetricReport, 3>& reports,
                       bool mark) {
      tsv << name << '\t' << alpha << '\t' << lambda;
      for (std::size_t mi = 0; mi < 3; ++mi) {
        std::string marks;
        if (mark) {
          if (reports[mi].sig_vs_initial) marks += "i";
          if (reports[mi].sig_vs_opt_baseline) marks += "o";
        }
        tsv << '\t' << format_double(reports[mi].mean(), "%.6f") << '\t' << marks;
      }
      tsv << '\n';
    };

    char header[256];
    std::snprintf(header, sizeof(header), "%-22s %6s %7s %10s %10s %10s\n", "algorithm", "alpha",
                  "lambda", "prec@5", "prec@10", "MRR");
    txt << header;

    auto emit = [&](const std::string& name, int alpha, double lambda,
                    const std::array<MetricReport, 3>& reports, bool mark) {
      std::string a = alpha < 0 ? "-" : std::to_string(alpha);
      std::string l = lambda < 0 ? "-" : format_double(lambda, "%.2f");
      txt_row(name, a, l, reports, mark);
      tsv_row(name, a, l, reports, mark);
    };

    emit("initial", -1, -1.0, result.initial_metrics, false);
    emit("upper-bound", -1, -1.0, result.upper_bound_metrics, false);
    emit("opt-baseline", -1, -1.0, result.opt_baseline_metrics, false);
    for (const AlgorithmResult& ar : result.algorithms)
      emit(ar.name, ar.alpha, ar.lambda, ar.metrics, true);

    result.report_text = txt.str();
    result.report_tsv = tsv.str();
  }

  write_text_file(cfg.out_dir / "report.txt", result.report_text);
  write_text_file(cfg.out_dir / "report.tsv", result.report_tsv);

  {
    std::ostringstream params;
    params << "algorithm\talpha\tlambda\tmu\n";
    params << "initial\t-\t-\t" << format_double(result.mu, "%g") << "\n";
    for (std::size_t mi = 0; mi < kMetrics.size(); ++mi)
      params << "opt-baseline[" << metric_name(kMetrics[mi]) << "]\t-\t-\t"
             << format_double(result.baseline_mu[mi], "%g") << "\n";
    for (const AlgorithmResult& ar : result.algorithms) {
      params << ar.name << '\t' << (ar.alpha < 0 ? "-" : std::to_string(ar.alpha)) << '\t'
             << (ar.lambda < 0 ? "-" : format_double(ar.lambda, "%.2f")) << '\t'
             << format_double(result.mu, "%g") << "\n";
    }
    write_text_file(cfg.out_dir / "params.tsv", params.str());
  }

  {
    std::ostringstream run;
    for (const QueryContext& qc : contexts)
      write_run_file(run, qc.full_ranking, corpus, "initial");
    write_text_file(cfg.out_dir / "runs" / "initial.run", run.str());
  }
  for (std::size_t mi = 0; mi < kMetrics.size(); ++mi) {
    std::ostringstream run;
    std::string tag = std::string("opt-baseline-") + metric_name(kMetrics[mi]);
    for (const RankedList& rl : baselines[mi].rankings)
      write_run_file(run, rl, corpus, tag);
    write_text_file(
        cfg.out_dir / "runs" / (sanitize_filename(tag) + ".run"), run.str());
  }
  for (const AlgorithmResult& ar : result.algorithms) {
    std::ostringstream run;
    for (const RankedList& rl : ar.rankings) write_run_file(run, rl, corpus, ar.name);
    write_text_file(cfg.out_dir / "runs" / (sanitize_filename(ar.name) + ".run"), run.str());
  }

  if (cfg.dump_graphs) {
    std::filesystem::create_directories(cfg.out_dir / "graphs");
    for (std::size_t si = 0; si < specs.size(); ++si) {
      if (!specs[si].needs_alpha()) continue;
      std::filesystem::path dir = cfg.out_dir / "graphs" / sanitize_filename(specs[si].name);
      std::filesystem::create_directories(dir);
      for (const QueryContext& qc : contexts) {
        if (qc.dinit.entries.size() < 2) continue;
        std::vector<int> ids;
        for (const ScoredDoc& e : qc.dinit.entries) ids.push_back(e.doc_id);
        GraphKind kind = specs[si].family == AlgorithmSpec::Family::hits
                             ? (cfg.hits_graph == "uniform" ? GraphKind::uniform
                                                            : GraphKind::weighted)
                             : specs[si].graph_kind;
        GenerationGraph g =
            build_graph(ids, qc.link_scores, selected[si].alpha, kind, cfg.link_mode);
        std::ofstream out(dir / (qc.query->qid + ".tsv"));
        dump_graph_tsv(out, g, corpus);
      }
    }
  }

  if (log) *log << "report written to " << (cfg.out_dir / "report.txt").string() << "\n";
  return result;
}

ExperimentResult run_full_corpus(const ExperimentConfig& cfg_in, std::ostream* log) {
  ExperimentConfig cfg = cfg_in;
  cfg.mode = ExperimentConfig::Mode::full_corpus;
  return run_experiment(cfg, log);
}

}  // namespace lmrank
