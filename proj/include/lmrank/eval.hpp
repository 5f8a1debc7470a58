#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lmrank/corpus.hpp"
#include "lmrank/ranking.hpp"

namespace lmrank {

// TREC relevance judgments; binary relevance at grade >= 1.
class Qrels {
 public:
  void add(const std::string& qid, const std::string& doc_name, int grade);

  bool is_relevant(const std::string& qid, const std::string& doc_name) const;
  // Number of judged-relevant documents for the query (retrieved or not).
  int total_relevant(const std::string& qid) const;
  bool has_judgments(const std::string& qid) const;

  // Relevant doc ids restricted to documents present in the corpus.
  std::unordered_set<int> relevant_ids(const std::string& qid, const Corpus& corpus) const;

  std::size_t size() const { return total_; }

 private:
  std::unordered_map<std::string, std::unordered_map<std::string, int>> by_qid_;
  std::size_t total_ = 0;
};

// Lines `qid 0 docname grade`. Duplicate (qid, docname) pairs are an error.
Qrels load_qrels(const std::filesystem::path& path);

enum class Metric { prec5, prec10, mrr };
const char* metric_name(Metric m);

// Relevant among the first min(k, len) entries, divided by k.
double prec_at_k(const RankedList& ranked, const std::unordered_set<int>& relevant, int k);

// 1/rank of the first relevant entry; 0 when none is present.
double reciprocal_rank(const RankedList& ranked, const std::unordered_set<int>& relevant);

// Non-interpolated average precision over the top `depth` entries,
// normalized by `total_relevant` (trec_eval semantics). total_relevant = 0
// is the caller's signal to exclude the query; here it throws.
double avg_prec(const RankedList& ranked, const std::unordered_set<int>& relevant,
                int total_relevant, int depth);

double metric_value(Metric m, const RankedList& ranked, const std::unordered_set<int>& relevant);

// The list with every relevant document moved to the front; ties (within the
// relevant and non-relevant blocks) ordered by ascending doc id.
RankedList upper_bound_ranking(const RankedList& dinit, const std::unordered_set<int>& relevant);
double rerank_upper_bound(const RankedList& dinit, const std::unordered_set<int>& relevant,
                          Metric m);

struct WilcoxonResult {
  double p_value = 1.0;
  double statistic = 0.0;  // W+ = rank sum of positive differences
  int n = 0;               // pairs remaining after dropping zero differences
  bool determinate = false;
  bool significant = false;  // two-sided at 95%, only when determinate
};

// Paired two-sided Wilcoxon signed-rank test. Zero differences dropped,
// average ranks for tied |differences|. Exact sign-flip null distribution
// for n <= 25; normal approximation with tie and continuity corrections
// beyond. Fewer than 5 nonzero differences -> indeterminate.
WilcoxonResult wilcoxon_two_sided(std::span<const double> x, std::span<const double> y);

struct MetricReport {
  std::string metric;
  std::vector<double> per_query;
  bool sig_vs_initial = false;
  bool sig_vs_opt_baseline = false;

  double mean() const;
};

}  // namespace lmrank
