#include "lmrank/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lmrank/errors.hpp"
#include "lmrank/language_model.hpp"
#include "lmrank/parallel.hpp"

namespace lmrank {

std::optional<LinkMode> parse_link_mode(std::string_view name) {
  if (name == "lm-generation") return LinkMode::lm_generation;
  if (name == "cosine-log-tfidf") return LinkMode::cosine_log_tfidf;
  return std::nullopt;
}

namespace {

// Sparse log-tf.idf vector, sorted by term id.
std::vector<std::pair<TermId, double>> tfidf_vector(const Document& d, const Corpus& corpus) {
  std::vector<std::pair<TermId, double>> v;
  v.reserve(d.counts.size());
  const double n_docs = static_cast<double>(corpus.size());
  for (const auto& [t, c] : d.counts) {
    double idf = std::log(n_docs / static_cast<double>(corpus.doc_freq(t)));
    double w = (1.0 + std::log(static_cast<double>(c))) * idf;
    if (w != 0.0) v.emplace_back(t, w);
  }
  return v;
}

double sparse_dot(const std::vector<std::pair<TermId, double>>& a,
                  const std::vector<std::pair<TermId, double>>& b) {
  double dot = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) ++i;
    else if (a[i].first > b[j].first) ++j;
    else dot += a[i++].second * b[j++].second;
  }
  return dot;
}

double norm(const std::vector<std::pair<TermId, double>>& v) {
  return std::sqrt(sparse_dot(v, v));
}

}  // namespace

double cosine_score(const Document& a, const Document& b, const Corpus& corpus,
                    std::ostream* warnings) {
  if (a.length() == 0 || b.length() == 0)
    throw ComputeError("cosine_score of empty document");
  auto va = tfidf_vector(a, corpus);
  auto vb = tfidf_vector(b, corpus);
  double na = norm(va), nb = norm(vb);
  if (na == 0.0 || nb == 0.0) {
    if (warnings)
      *warnings << "warning: zero-norm tf.idf vector (doc "
                << (na == 0.0 ? a.external_name : b.external_name) << "); cosine set to 0\n";
    return 0.0;
  }
  return sparse_dot(va, vb) / (na * nb);
}

Matrix pairwise_link_scores(const Corpus& corpus, const std::vector<int>& node_ids,
                            LinkMode mode, double mu, int threads) {
  const int n = static_cast<int>(node_ids.size());
  Matrix scores(n, n, 0.0);
  if (mode == LinkMode::lm_generation) {
    // Row g: the model of doc g scoring every other doc's text.
    std::vector<TermDistribution> mles;
    mles.reserve(n);
    for (int j = 0; j < n; ++j) mles.push_back(mle(corpus.doc(node_ids[j])));
    parallel_for(n, threads, [&](int g) {
      SmoothedModel model(corpus, corpus.doc(node_ids[g]), mu);
      for (int o = 0; o < n; ++o) {
        if (o == g) continue;
        scores(g, o) = std::exp(-kl_divergence(mles[o], model));
      }
    });
  } else {
    parallel_for(n, threads, [&](int g) {
      for (int o = 0; o < n; ++o) {
        if (o == g) continue;
        scores(g, o) =
            cosine_score(corpus.doc(node_ids[g]), corpus.doc(node_ids[o]), corpus);
      }
    });
  }
  return scores;
}

std::vector<int> top_generator_positions(const Matrix& scores, const std::vector<int>& node_ids,
                                         int offspring_pos, int alpha) {
  const int n = static_cast<int>(node_ids.size());
  if (alpha >= n)
    throw ComputeError("alpha (" + std::to_string(alpha) +
                       ") must be smaller than the re-ranking set (" + std::to_string(n) + ")");
  if (alpha < 1) throw ComputeError("alpha must be >= 1");

  std::vector<int> candidates;
  candidates.reserve(n - 1);
  for (int g = 0; g < n; ++g)
    if (g != offspring_pos) candidates.push_back(g);
  std::partial_sort(candidates.begin(), candidates.begin() + alpha, candidates.end(),
                    [&](int a, int b) {
                      double sa = scores(a, offspring_pos), sb = scores(b, offspring_pos);
                      if (sa != sb) return sa > sb;
                      return node_ids[a] < node_ids[b];
                    });
  candidates.resize(alpha);
  return candidates;
}

std::vector<int> top_generators(const Corpus& corpus, int doc_id, const std::vector<int>& dinit,
                                int alpha, LinkMode mode, double mu) {
  auto it = std::find(dinit.begin(), dinit.end(), doc_id);
  if (it == dinit.end()) throw ComputeError("document not in the re-ranking set");
  Matrix scores = pairwise_link_scores(corpus, dinit, mode, mu);
  std::vector<int> pos =
      top_generator_positions(scores, dinit, static_cast<int>(it - dinit.begin()), alpha);
  std::vector<int> ids;
  ids.reserve(pos.size());
  for (int p : pos) ids.push_back(dinit[p]);
  return ids;
}

GenerationGraph build_graph(const std::vector<int>& node_ids, const Matrix& scores, int alpha,
                            GraphKind kind, LinkMode link) {
  if (kind == GraphKind::smoothed)
    throw ComputeError("build_graph constructs unsmoothed graphs; call smooth() after");
  const int n = static_cast<int>(node_ids.size());
  GenerationGraph g;
  g.node_ids = node_ids;
  g.weights = Matrix(n, n, 0.0);
  g.kind = kind;
  g.base_kind = kind;
  g.link = link;
  g.alpha = alpha;
  for (int o = 0; o < n; ++o) {
    for (int gen : top_generator_positions(scores, node_ids, o, alpha))
      g.weights(o, gen) = (kind == GraphKind::uniform) ? 1.0 : scores(gen, o);
  }
  return g;
}

GenerationGraph smooth(const GenerationGraph& g, double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0))
    throw ComputeError("smoothing factor must lie in [0, 1)");
  const int n = g.size();
  GenerationGraph out;
  out.node_ids = g.node_ids;
  out.weights = Matrix(n, n, 0.0);
  out.kind = GraphKind::smoothed;
  out.base_kind = g.kind == GraphKind::smoothed ? g.base_kind : g.kind;
  out.link = g.link;
  out.alpha = g.alpha;
  out.lambda = lambda;

  const double teleport = (1.0 - lambda) / static_cast<double>(n);
  for (int o = 0; o < n; ++o) {
    double row_sum = g.weights.row_sum(o);
    if (!(row_sum > 0.0))
      throw ComputeError("cannot smooth a graph with a zero-weight row (node " +
                         std::to_string(g.node_ids[o]) + ")");
    for (int gen = 0; gen < n; ++gen)
      out.weights(o, gen) = teleport + lambda * (g.weights(o, gen) / row_sum);
  }
  return out;
}

void dump_graph_tsv(std::ostream& out, const GenerationGraph& g, const Corpus& corpus) {
  char buf[64];
  for (int o = 0; o < g.size(); ++o) {
    for (int gen = 0; gen < g.size(); ++gen) {
      double w = g.weights(o, gen);
      if (w == 0.0) continue;
      std::snprintf(buf, sizeof(buf), "%.12g", w);
      out << corpus.doc(g.node_ids[o]).external_name << '\t'
          << corpus.doc(g.node_ids[gen]).external_name << '\t' << buf << '\n';
    }
  }
}

}  // namespace lmrank
