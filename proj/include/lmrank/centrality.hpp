#pragma once

#include <string>
#include <vector>

#include "lmrank/graph.hpp"

namespace lmrank {

struct CentralityScores {
  std::vector<int> node_ids;
  std::vector<double> scores;  // parallel to node_ids, all >= 0
  std::string method;
  bool converged = true;
  int iterations = 0;

  // Throws DataError when the document is not covered.
  double score_of(int doc_id) const;
};

// Weighted in-degree (column sums). Requires an unsmoothed graph.
CentralityScores influx(const GenerationGraph& g);

// Stationary distribution pi(d) = sum_o wt(o->d) pi(o), sum pi = 1, by
// power iteration from the uniform vector. Requires a smoothed
// (row-stochastic, strictly positive) graph.
CentralityScores recursive_influx(const GenerationGraph& g, double tol = 1e-10,
                                  int max_iter = 10000);

struct HitsScores {
  CentralityScores authority;
  CentralityScores hub;
};

// Kleinberg's iteration with L2 normalization after every step; authority
// converges to the principal eigenvector direction of W^T W, hub of W W^T.
HitsScores hits(const GenerationGraph& g, double tol = 1e-10, int max_iter = 10000);

}  // namespace lmrank
