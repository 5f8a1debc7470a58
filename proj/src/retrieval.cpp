#include "lmrank/retrieval.hpp"

#include <cmath>
#include <ostream>

#include "lmrank/errors.hpp"
#include "lmrank/language_model.hpp"
#include "lmrank/parallel.hpp"

namespace lmrank {

RankedList initial_rank(const Query& q, const Corpus& corpus, double mu, int k,
                        std::ostream* warnings) {
  if (!(mu > 0.0)) throw ComputeError("initial_rank requires mu > 0");
  if (k < 1) throw ComputeError("initial_rank requires k >= 1");

  std::vector<TermId> terms = vocab_filter(corpus, q.tokens);
  if (terms.empty()) {
    if (warnings)
      *warnings << "warning: query " << q.qid
                << " has no in-vocabulary terms; returning empty ranking\n";
    RankedList empty;
    empty.qid = q.qid;
    empty.cutoff = k;
    return empty;
  }

  TermDistribution qdist = mle(terms);
  std::vector<ScoredDoc> scored;
  scored.reserve(corpus.size());
  for (const Document& d : corpus.documents()) {
    double kl = kl_divergence(qdist, SmoothedModel(corpus, d, mu));
    scored.push_back({d.id, std::exp(-kl)});
  }
  return make_ranked_list(q.qid, std::move(scored), k);
}

namespace {

struct GridSearchResult {
  double best_param = 0.0;
  int best_index = -1;
  std::vector<double> best_per_query;
  std::vector<RankedList> best_rankings;
};

// Evaluates each mu over the judged queries with `score_query`, keeping the
// mu with the highest mean (ties toward the earlier, i.e. smaller, value).
template <typename ScoreFn>
GridSearchResult grid_search_mu(const std::vector<Query>& queries, const Corpus& corpus,
                                const Qrels& qrels, const std::vector<double>& grid,
                                int depth, int threads, ScoreFn score_query,
                                std::vector<std::string>* qids_out) {
  if (grid.empty()) throw ConfigError("mu grid must be nonempty");

  std::vector<int> judged;
  for (std::size_t i = 0; i < queries.size(); ++i)
    if (qrels.total_relevant(queries[i].qid) > 0) judged.push_back(static_cast<int>(i));
  if (judged.empty())
    throw DataError("no query has relevant judgments; cannot tune mu");
  if (qids_out) {
    qids_out->clear();
    for (int qi : judged) qids_out->push_back(queries[qi].qid);
  }

  GridSearchResult result;
  double best_mean = -1.0;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    double mu = grid[gi];
    if (!(mu > 0.0)) throw ConfigError("mu grid values must be > 0");
    std::vector<double> per_query(judged.size());
    std::vector<RankedList> rankings(judged.size());
    parallel_for(static_cast<int>(judged.size()), threads, [&](int j) {
      const Query& q = queries[judged[j]];
      RankedList ranked = initial_rank(q, corpus, mu, depth);
      per_query[j] = score_query(q, ranked);
      rankings[j] = std::move(ranked);
    });
    double mean = 0.0;
    for (double v : per_query) mean += v;
    mean /= static_cast<double>(per_query.size());
    if (mean > best_mean) {
      best_mean = mean;
      result.best_param = mu;
      result.best_index = static_cast<int>(gi);
      result.best_per_query = std::move(per_query);
      result.best_rankings = std::move(rankings);
    }
  }
  return result;
}

}  // namespace

double tune_mu(const std::vector<Query>& queries, const Corpus& corpus, const Qrels& qrels,
               const std::vector<double>& grid, int depth, int threads) {
  auto r = grid_search_mu(
      queries, corpus, qrels, grid, depth, threads,
      [&](const Query& q, const RankedList& ranked) {
        return avg_prec(ranked, qrels.relevant_ids(q.qid, corpus),
                        qrels.total_relevant(q.qid), depth);
      },
      nullptr);
  return r.best_param;
}

BaselineRun optimized_baseline(const std::vector<Query>& queries, const Corpus& corpus,
                               const Qrels& qrels, Metric target,
                               const std::vector<double>& grid, int threads) {
  BaselineRun run;
  int depth = std::min(1000, std::max(corpus.size(), 10));
  auto r = grid_search_mu(
      queries, corpus, qrels, grid, depth, threads,
      [&](const Query& q, const RankedList& ranked) {
        return metric_value(target, ranked, qrels.relevant_ids(q.qid, corpus));
      },
      &run.qids);
  run.mu = r.best_param;
  run.per_query = std::move(r.best_per_query);
  run.rankings = std::move(r.best_rankings);
  return run;
}

}  // namespace lmrank
