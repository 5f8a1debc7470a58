#include "lmrank/centrality.hpp"

#include <cmath>

#include "lmrank/errors.hpp"

namespace lmrank {

double CentralityScores::score_of(int doc_id) const {
  for (std::size_t i = 0; i < node_ids.size(); ++i)
    if (node_ids[i] == doc_id) return scores[i];
  throw DataError("no centrality score for document id " + std::to_string(doc_id));
}

CentralityScores influx(const GenerationGraph& g) {
  if (g.kind == GraphKind::smoothed)
    throw ComputeError("influx is defined on unsmoothed graphs");
  const int n = g.size();
  CentralityScores c;
  c.node_ids = g.node_ids;
  c.scores.resize(n);
  for (int d = 0; d < n; ++d) c.scores[d] = g.weights.col_sum(d);
  c.method = (g.kind == GraphKind::uniform) ? "U-In" : "W-In";
  return c;
}

CentralityScores recursive_influx(const GenerationGraph& g, double tol, int max_iter) {
  if (g.kind != GraphKind::smoothed)
    throw ComputeError("recursive influx requires a smoothed graph");
  const int n = g.size();
  for (int o = 0; o < n; ++o) {
    if (std::fabs(g.weights.row_sum(o) - 1.0) > 1e-9)
      throw ComputeError("recursive influx requires a row-stochastic graph");
    for (int d = 0; d < n; ++d)
      if (!(g.weights(o, d) > 0.0))
        throw ComputeError("recursive influx requires strictly positive edge weights");
  }

  CentralityScores c;
  c.node_ids = g.node_ids;
  c.method = (g.base_kind == GraphKind::uniform) ? "R-U-In" : "R-W-In";
  c.converged = false;

  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);
  for (int iter = 1; iter <= max_iter; ++iter) {
    for (int d = 0; d < n; ++d) {
      double s = 0.0;
      for (int o = 0; o < n; ++o) s += g.weights(o, d) * pi[o];
      next[d] = s;
    }
    // renormalize to hold sum(pi) = 1 against drift
    double total = 0.0;
    for (double v : next) total += v;
    for (double& v : next) v /= total;

    double diff = 0.0;
    for (int d = 0; d < n; ++d) diff += std::fabs(next[d] - pi[d]);
    c.iterations = iter;
    if (diff < tol) {
      // pi already satisfies the fixed-point equation within tol; returning
      // it (not `next`) keeps the lambda = 0 case exactly uniform.
      c.converged = true;
      break;
    }
    std::swap(pi, next);
  }
  c.scores = std::move(pi);
  return c;
}

HitsScores hits(const GenerationGraph& g, double tol, int max_iter) {
  const int n = g.size();
  bool any_edge = false;
  for (int o = 0; o < n && !any_edge; ++o)
    for (int d = 0; d < n && !any_edge; ++d)
      if (g.weights(o, d) > 0.0) any_edge = true;
  if (!any_edge) throw ComputeError("HITS requires at least one positive edge");

  auto l2_normalize = [](std::vector<double>& v) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 0.0)
      for (double& x : v) x /= norm;
  };

  std::vector<double> auth(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> hub(auth);
  std::vector<double> new_auth(n), new_hub(n);

  bool converged = false;
  int iterations = 0;
  for (int iter = 1; iter <= max_iter; ++iter) {
    for (int d = 0; d < n; ++d) {
      double s = 0.0;
      for (int o = 0; o < n; ++o) s += g.weights(o, d) * hub[o];
      new_auth[d] = s;
    }
    l2_normalize(new_auth);
    for (int o = 0; o < n; ++o) {
      double s = 0.0;
      for (int d = 0; d < n; ++d) s += g.weights(o, d) * new_auth[d];
      new_hub[o] = s;
    }
    l2_normalize(new_hub);

    double diff = 0.0;
    for (int i = 0; i < n; ++i) {
      diff += (new_auth[i] - auth[i]) * (new_auth[i] - auth[i]);
      diff += (new_hub[i] - hub[i]) * (new_hub[i] - hub[i]);
    }
    auth = new_auth;
    hub = new_hub;
    iterations = iter;
    if (std::sqrt(diff) < tol) {
      converged = true;
      break;
    }
  }

  HitsScores result;
  result.authority.node_ids = g.node_ids;
  result.authority.scores = std::move(auth);
  result.authority.method = "hits-auth";
  result.authority.converged = converged;
  result.authority.iterations = iterations;
  result.hub.node_ids = g.node_ids;
  result.hub.scores = std::move(hub);
  result.hub.method = "hits-hub";
  result.hub.converged = converged;
  result.hub.iterations = iterations;
  return result;
}

}  // namespace lmrank
