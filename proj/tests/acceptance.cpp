// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Oracles (dense linear solves, eigensolver, sign-pattern
// enumeration) are independent of the library's iterative paths.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "lmrank/centrality.hpp"
#include "lmrank/config.hpp"
#include "lmrank/corpus.hpp"
#include "lmrank/eval.hpp"
#include "lmrank/experiment.hpp"
#include "lmrank/graph.hpp"
#include "lmrank/language_model.hpp"
#include "lmrank/rerank.hpp"
#include "lmrank/retrieval.hpp"
#include "lmrank/synthetic.hpp"

using namespace lmrank;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, const char* what, bool ok, const std::string& detail = "") {
  std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Env {
  fs::path dir;
  Corpus corpus;
  std::vector<Query> queries;
  Qrels qrels;
};

Env load_env() {
  Env env;
  env.dir = fs::temp_directory_path() / "lmrank_acceptance";
  SyntheticSpec spec;  // full-size defaults: 200 docs, 15 queries
  write_synthetic(spec, env.dir);
  env.corpus = load_corpus(env.dir / "corpus.jsonl", CorpusFormat::jsonl);
  env.queries = load_queries(env.dir / "queries.tsv");
  env.qrels = load_qrels(env.dir / "qrels.txt");
  return env;
}

std::vector<int> iota_ids(int n) {
  std::vector<int> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = i;
  return ids;
}

double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Matrix random_scores(std::mt19937_64& rng, int n) {
  Matrix m(n, n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) m(i, j) = 0.05 + unit_real(rng);
  return m;
}

Eigen::VectorXd stationary_by_solve(const GenerationGraph& g) {
  const int n = g.size();
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g.weights(j, i);
  a -= Eigen::MatrixXd::Identity(n, n);
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  return a.fullPivLu().solve(b);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- criteria ----

void criterion_1_decomposition(const Env& env) {
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  const std::vector<double> mus = {250, 1000, 5000};
  double worst = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const Document& d = env.corpus.doc(static_cast<int>(rng() % env.corpus.size()));
    const Document& s = env.corpus.doc(static_cast<int>(rng() % env.corpus.size()));
    double mu = mus[trial % mus.size()];
    double value = gen_prob(env.corpus, d, s.tokens, mu);

    SmoothedModel model(env.corpus, d, mu);
    double log_product = 0.0;
    for (TermId t : s.tokens) log_product += model.log_prob(t);
    double term_a = std::exp(log_product / static_cast<double>(s.tokens.size()));
    double term_b = std::exp(entropy(mle(s)));

    double rel = std::fabs(value - term_a * term_b) / value;
    worst = std::max(worst, rel);
    if (!(rel < 1e-9)) ok = false;
  }
  double secs = elapsed_s(start);
  char detail[128];
  std::snprintf(detail, sizeof(detail), "1000 pairs, worst rel err %.2e, %.2fs", worst, secs);
  report(1, "gen_prob equals geometric-mean times entropy decomposition", ok && secs < 10.0,
         detail);
}

void criterion_2_stationary_oracle() {
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(202);
  const std::vector<int> sizes = {5, 10, 50};
  const std::vector<double> lambdas = {0.0, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5,
                                       0.6, 0.7,  0.8, 0.9, 0.95};
  double worst = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    int n = sizes[trial % sizes.size()];
    double lambda = lambdas[trial % lambdas.size()];
    int alpha = 1 + static_cast<int>(rng() % (n - 1));
    GraphKind kind = (trial % 2 == 0) ? GraphKind::weighted : GraphKind::uniform;
    GenerationGraph s =
        smooth(build_graph(iota_ids(n), random_scores(rng, n), alpha, kind,
                           LinkMode::lm_generation),
               lambda);
    CentralityScores pi = recursive_influx(s, 1e-10, 10000);
    Eigen::VectorXd oracle = stationary_by_solve(s);
    double l1 = 0.0;
    for (int i = 0; i < n; ++i) l1 += std::fabs(pi.scores[i] - oracle(i));
    worst = std::max(worst, l1);
    if (!(pi.converged && l1 < 1e-8)) ok = false;
  }
  double secs = elapsed_s(start);
  char detail[128];
  std::snprintf(detail, sizeof(detail), "50 graphs, worst L1 %.2e, %.2fs", worst, secs);
  report(2, "power iteration matches direct stationary solve", ok && secs < 30.0, detail);
}

void criterion_3_stochasticity() {
  std::mt19937_64 rng(303);
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    int n = 4 + static_cast<int>(rng() % 40);
    int alpha = 1 + static_cast<int>(rng() % (n - 1));
    double lambda = std::vector<double>{0.0, 0.05, 0.5, 0.95}[trial % 4];
    GenerationGraph s =
        smooth(build_graph(iota_ids(n), random_scores(rng, n), alpha, GraphKind::weighted,
                           LinkMode::lm_generation),
               lambda);
    for (int o = 0; o < n; ++o) {
      if (std::fabs(s.weights.row_sum(o) - 1.0) > 1e-12) ok = false;
      for (int g = 0; g < n; ++g)
        if (s.weights(o, g) < (1.0 - lambda) / n) ok = false;
    }
    if (lambda == 0.0) {
      CentralityScores pi = recursive_influx(s);
      for (double v : pi.scores)
        if (v != 1.0 / n) ok = false;  // exact, not approximate
    }
  }
  report(3, "smoothed rows are stochastic with teleport floor; lambda=0 pi is uniform", ok);
}

void criterion_4_influx_integer() {
  std::mt19937_64 rng(404);
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    int n = 5 + static_cast<int>(rng() % 30);
    int alpha = 1 + static_cast<int>(rng() % (n - 1));
    Matrix scores = random_scores(rng, n);
    std::vector<int> ids = iota_ids(n);
    GenerationGraph gu =
        build_graph(ids, scores, alpha, GraphKind::uniform, LinkMode::lm_generation);
    CentralityScores flux = influx(gu);
    for (int d = 0; d < n; ++d) {
      int count = 0;
      for (int o = 0; o < n; ++o) {
        if (o == d) continue;
        auto top = top_generator_positions(scores, ids, o, alpha);
        if (std::find(top.begin(), top.end(), d) != top.end()) ++count;
      }
      if (flux.scores[d] != static_cast<double>(count)) ok = false;
    }
  }
  report(4, "uniform-graph influx equals brute-force top-generator counts exactly", ok);
}

void criterion_5_entropy_cancellation(const Env& env) {
  bool ok = true;
  Query q = env.queries[2];
  RankedList dinit = initial_rank(q, env.corpus, 1000.0, 50);
  std::vector<int> ids;
  for (const ScoredDoc& e : dinit.entries) ids.push_back(e.doc_id);
  Matrix scores = pairwise_link_scores(env.corpus, ids, LinkMode::lm_generation, 1000.0);
  GenerationGraph gw =
      build_graph(ids, scores, 9, GraphKind::weighted, LinkMode::lm_generation);

  GenerationGraph rescaled = gw;
  for (int o = 0; o < rescaled.size(); ++o) {
    double factor = std::exp(entropy(mle(env.corpus.doc(ids[o]))));
    for (int g = 0; g < rescaled.size(); ++g) rescaled.weights(o, g) *= factor;
  }
  for (double lambda : {0.05, 0.5, 0.95}) {
    GenerationGraph a = smooth(gw, lambda);
    GenerationGraph b = smooth(rescaled, lambda);
    for (int o = 0; o < a.size(); ++o)
      for (int g = 0; g < a.size(); ++g)
        if (std::fabs(a.weights(o, g) - b.weights(o, g)) > 1e-12) ok = false;
  }
  report(5, "per-offspring entropy factor cancels in the smoothed weighted graph", ok);
}

bool run_pipeline_once(const Env& env, const fs::path& out, ExperimentResult* result) {
  ExperimentConfig cfg;
  cfg.corpus_path = env.dir / "corpus.jsonl";
  cfg.queries_path = env.dir / "queries.tsv";
  cfg.qrels_path = env.dir / "qrels.txt";
  cfg.out_dir = out;
  cfg.dinit = 50;
  cfg.algorithms = {"r-w-in+lm"};
  cfg.threads = 0;
  ExperimentResult r = run_experiment(cfg);
  if (result) *result = std::move(r);
  return true;
}

void criterion_6_tie_break_determinism(const Env& env) {
  // forced-equal scores -> the alpha lowest doc ids
  bool ok = true;
  std::vector<int> ids = {17, 3, 29, 11, 5, 23};
  Matrix equal(6, 6, 0.125);
  for (int d = 0; d < 6; ++d) {
    auto top = top_generator_positions(equal, ids, d, 3);
    std::vector<int> got;
    for (int p : top) got.push_back(ids[p]);
    std::vector<int> expect;
    for (int id : {3, 5, 11, 17, 23, 29})
      if (id != ids[d] && expect.size() < 3) expect.push_back(id);
    if (got != expect) ok = false;
  }

  // repeated full-pipeline runs, byte-identical outputs
  fs::path out1 = env.dir / "det1", out2 = env.dir / "det2";
  run_pipeline_once(env, out1, nullptr);
  run_pipeline_once(env, out2, nullptr);
  for (const char* name : {"report.tsv", "report.txt", "params.tsv"})
    if (slurp(out1 / name) != slurp(out2 / name)) ok = false;
  for (const auto& entry : fs::directory_iterator(out1 / "runs"))
    if (slurp(entry.path()) != slurp(out2 / "runs" / entry.path().filename())) ok = false;

  report(6, "tie-breaking is by document id and the pipeline is byte-deterministic", ok);
}

void criterion_7_eq3_degeneracy(const Env& env) {
  bool ok = true;
  for (int qi = 0; qi < 3; ++qi) {
    RankedList dinit = initial_rank(env.queries[qi], env.corpus, 1000.0, 50);
    CentralityScores uniform;
    CentralityScores varied;
    std::mt19937_64 rng(707 + qi);
    for (const ScoredDoc& e : dinit.entries) {
      uniform.node_ids.push_back(e.doc_id);
      uniform.scores.push_back(0.42);
      varied.node_ids.push_back(e.doc_id);
      varied.scores.push_back(0.01 + unit_real(rng));
    }
    // uniform centrality reproduces the initial ranking
    RankedList a = rerank_combined(dinit, uniform);
    for (std::size_t i = 0; i < a.entries.size(); ++i)
      if (a.entries[i].doc_id != dinit.entries[i].doc_id) ok = false;
    // uniform query likelihood reproduces the centrality-only ranking
    std::vector<double> flat(dinit.entries.size(), 0.37);
    RankedList b = rerank_combined(dinit, varied, flat);
    RankedList c = rerank_by_centrality(dinit, varied);
    for (std::size_t i = 0; i < b.entries.size(); ++i)
      if (b.entries[i].doc_id != c.entries[i].doc_id) ok = false;
  }
  report(7, "combined score degenerates correctly at uniform factors", ok);
}

void criterion_8_wilcoxon_exact() {
  std::mt19937_64 rng(808);
  bool ok = true;
  double worst = 0.0;
  int tested = 0;
  while (tested < 200) {
    int n = 5 + static_cast<int>(rng() % 8);  // 5..12 after zero-drop filtering
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rng() % 6);
      y[i] = static_cast<double>(rng() % 6);
    }
    std::vector<double> diffs;
    for (int i = 0; i < n; ++i)
      if (x[i] != y[i]) diffs.push_back(x[i] - y[i]);
    if (diffs.size() < 5) continue;
    ++tested;

    WilcoxonResult r = wilcoxon_two_sided(x, y);

    // enumeration oracle over 2^m sign patterns
    const int m = static_cast<int>(diffs.size());
    std::vector<double> ranks(m);
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::fabs(diffs[a]) < std::fabs(diffs[b]);
    });
    int i = 0;
    while (i < m) {
      int j = i;
      while (j < m && std::fabs(diffs[order[j]]) == std::fabs(diffs[order[i]])) ++j;
      for (int k = i; k < j; ++k) ranks[order[k]] = (i + 1 + j) / 2.0;
      i = j;
    }
    double total = 0.0, observed = 0.0;
    for (int k = 0; k < m; ++k) {
      total += ranks[k];
      if (diffs[k] > 0.0) observed += ranks[k];
    }
    double threshold = std::fabs(observed - total / 2.0);
    long long favorable = 0;
    for (long long mask = 0; mask < (1LL << m); ++mask) {
      double w = 0.0;
      for (int k = 0; k < m; ++k)
        if (mask & (1LL << k)) w += ranks[k];
      if (std::fabs(w - total / 2.0) >= threshold) ++favorable;
    }
    double oracle = static_cast<double>(favorable) / static_cast<double>(1LL << m);
    worst = std::max(worst, std::fabs(r.p_value - oracle));
    if (!(std::fabs(r.p_value - oracle) < 1e-12)) ok = false;
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "200 samples, worst |dp| %.2e", worst);
  report(8, "exact Wilcoxon p-values equal sign-pattern enumeration", ok, detail);
}

void criterion_9_upper_bound_dominance(const Env& env) {
  std::mt19937_64 rng(909);
  bool ok = true;
  for (const Query& q : env.queries) {
    if (env.qrels.total_relevant(q.qid) == 0) continue;
    RankedList dinit = initial_rank(q, env.corpus, 1000.0, 50);
    auto rel = env.qrels.relevant_ids(q.qid, env.corpus);
    for (Metric m : {Metric::prec5, Metric::prec10, Metric::mrr}) {
      double bound = rerank_upper_bound(dinit, rel, m);
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<ScoredDoc> perm = dinit.entries;
        for (std::size_t i = perm.size(); i > 1; --i)
          std::swap(perm[i - 1], perm[rng() % i]);
        RankedList shuffled;
        shuffled.qid = dinit.qid;
        shuffled.cutoff = dinit.cutoff;
        double score = static_cast<double>(perm.size());
        for (ScoredDoc& e : perm) shuffled.entries.push_back({e.doc_id, score--});
        if (metric_value(m, shuffled, rel) > bound + 1e-12) ok = false;
      }
    }
  }
  report(9, "re-ranking upper bound dominates 100 random permutations per query", ok);
}

void criterion_10_directional(const Env& env) {
  auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  run_pipeline_once(env, env.dir / "directional", &result);
  double init = result.initial_metrics[0].mean();
  double upper = result.upper_bound_metrics[0].mean();
  double reranked = result.algorithms[0].metrics[0].mean();
  double secs = elapsed_s(start);
  bool ok = reranked >= init - 1e-12 && reranked <= upper + 1e-12 && secs < 120.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "prec@5 init %.4f <= R-W-In+LM %.4f <= bound %.4f (alpha=%d lambda=%.2f), %.1fs",
                init, reranked, upper, result.algorithms[0].alpha,
                result.algorithms[0].lambda, secs);
  report(10, "swept R-W-In+LM improves on the initial ranking within the bound", ok, detail);
}

void criterion_11_hits_oracle() {
  std::mt19937_64 rng(1111);
  bool ok = true;
  double worst = 1.0;
  for (int trial = 0; trial < 20; ++trial) {
    int n = 6 + static_cast<int>(rng() % 20);
    int alpha = 1 + static_cast<int>(rng() % (n - 1));
    GenerationGraph g = build_graph(iota_ids(n), random_scores(rng, n), alpha,
                                    GraphKind::weighted, LinkMode::lm_generation);
    HitsScores h = hits(g);

    Eigen::MatrixXd w(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w(i, j) = g.weights(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w.transpose() * w);
    Eigen::VectorXd principal = es.eigenvectors().col(n - 1);

    double dot = 0.0, na = 0.0, nb = 0.0;
    for (int i = 0; i < n; ++i) {
      dot += h.authority.scores[i] * principal(i);
      na += h.authority.scores[i] * h.authority.scores[i];
      nb += principal(i) * principal(i);
    }
    double cosine = std::fabs(dot) / std::sqrt(na * nb);
    worst = std::min(worst, cosine);
    if (!(cosine > 1.0 - 1e-8)) ok = false;
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail), "20 graphs, worst cosine 1 - %.2e", 1.0 - worst);
  report(11, "HITS authority matches the principal eigenvector of W^T W", ok, detail);
}

}  // namespace

int main() {
  Env env = load_env();
  criterion_1_decomposition(env);
  criterion_2_stationary_oracle();
  criterion_3_stochasticity();
  criterion_4_influx_integer();
  criterion_5_entropy_cancellation(env);
  criterion_6_tie_break_determinism(env);
  criterion_7_eq3_degeneracy(env);
  criterion_8_wilcoxon_exact();
  criterion_9_upper_bound_dominance(env);
  criterion_10_directional(env);
  criterion_11_hits_oracle();

  if (failures == 0)
    std::printf("all 11 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
