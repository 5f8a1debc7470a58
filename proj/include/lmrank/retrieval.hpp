#pragma once

#include <iosfwd>
#include <vector>

#include "lmrank/corpus.hpp"
#include "lmrank/eval.hpp"
#include "lmrank/ranking.hpp"

namespace lmrank {

// Scores every corpus document by gen_prob(d, q, mu) and keeps the top k.
// A query with no in-vocabulary terms yields an empty list plus a warning.
RankedList initial_rank(const Query& q, const Corpus& corpus, double mu, int k,
                        std::ostream* warnings = nullptr);

// Smallest mu in `grid` maximizing mean non-interpolated average precision
// at `depth`. Queries without relevant judgments are skipped; if none
// remain, throws DataError.
double tune_mu(const std::vector<Query>& queries, const Corpus& corpus, const Qrels& qrels,
               const std::vector<double>& grid, int depth = 1000, int threads = 1);

struct BaselineRun {
  double mu = 0.0;
  std::vector<double> per_query;       // target metric, queries with judgments only
  std::vector<std::string> qids;       // aligned with per_query
  std::vector<RankedList> rankings;    // aligned with per_query
};

// Full-corpus ranking with mu tuned directly on the target metric
// (ties toward smaller mu).
BaselineRun optimized_baseline(const std::vector<Query>& queries, const Corpus& corpus,
                               const Qrels& qrels, Metric target,
                               const std::vector<double>& grid, int threads = 1);

}  // namespace lmrank
