#include "lmrank/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lmrank/errors.hpp"

namespace lmrank {

void Qrels::add(const std::string& qid, const std::string& doc_name, int grade) {
  if (grade < 0) throw DataError("negative relevance grade for " + qid + "/" + doc_name);
  auto& m = by_qid_[qid];
  if (!m.emplace(doc_name, grade).second)
    throw DataError("duplicate qrels pair (" + qid + ", " + doc_name + ")");
  ++total_;
}

bool Qrels::is_relevant(const std::string& qid, const std::string& doc_name) const {
  auto it = by_qid_.find(qid);
  if (it == by_qid_.end()) return false;
  auto jt = it->second.find(doc_name);
  return jt != it->second.end() && jt->second >= 1;
}

int Qrels::total_relevant(const std::string& qid) const {
  auto it = by_qid_.find(qid);
  if (it == by_qid_.end()) return 0;
  int n = 0;
  for (const auto& [name, grade] : it->second)
    if (grade >= 1) ++n;
  return n;
}

bool Qrels::has_judgments(const std::string& qid) const { return by_qid_.count(qid) > 0; }

std::unordered_set<int> Qrels::relevant_ids(const std::string& qid, const Corpus& corpus) const {
  std::unordered_set<int> ids;
  auto it = by_qid_.find(qid);
  if (it == by_qid_.end()) return ids;
  for (const Document& d : corpus.documents()) {
    auto jt = it->second.find(d.external_name);
    if (jt != it->second.end() && jt->second >= 1) ids.insert(d.id);
  }
  return ids;
}

Qrels load_qrels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open qrels file: " + path.string());
  Qrels qrels;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string qid, iter, name;
    int grade;
    if (!(ss >> qid >> iter >> name >> grade))
      throw DataError("malformed qrels line " + std::to_string(lineno));
    try {
      qrels.add(qid, name, grade);
    } catch (const DataError& e) {
      throw DataError(std::string(e.what()) + " at line " + std::to_string(lineno));
    }
  }
  return qrels;
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::prec5: return "prec@5";
    case Metric::prec10: return "prec@10";
    case Metric::mrr: return "MRR";
  }
  return "?";
}

double prec_at_k(const RankedList& ranked, const std::unordered_set<int>& relevant, int k) {
  if (k < 1) throw ComputeError("prec@k requires k >= 1");
  int hits = 0;
  int limit = std::min<int>(k, static_cast<int>(ranked.entries.size()));
  for (int i = 0; i < limit; ++i)
    if (relevant.count(ranked.entries[i].doc_id)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(k);
}

double reciprocal_rank(const RankedList& ranked, const std::unordered_set<int>& relevant) {
  for (std::size_t i = 0; i < ranked.entries.size(); ++i)
    if (relevant.count(ranked.entries[i].doc_id))
      return 1.0 / static_cast<double>(i + 1);
  return 0.0;
}

double avg_prec(const RankedList& ranked, const std::unordered_set<int>& relevant,
                int total_relevant, int depth) {
  if (depth < 1) throw ComputeError("avg_prec requires depth >= 1");
  if (total_relevant <= 0)
    throw ComputeError("avg_prec undefined for a query with no relevant documents");
  double sum = 0.0;
  int hits = 0;
  int limit = std::min<int>(depth, static_cast<int>(ranked.entries.size()));
  for (int i = 0; i < limit; ++i) {
    if (relevant.count(ranked.entries[i].doc_id)) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(total_relevant);
}

double metric_value(Metric m, const RankedList& ranked, const std::unordered_set<int>& relevant) {
  switch (m) {
    case Metric::prec5: return prec_at_k(ranked, relevant, 5);
    case Metric::prec10: return prec_at_k(ranked, relevant, 10);
    case Metric::mrr: return reciprocal_rank(ranked, relevant);
  }
  return 0.0;
}

RankedList upper_bound_ranking(const RankedList& dinit, const std::unordered_set<int>& relevant) {
  std::vector<int> rel, nonrel;
  for (const ScoredDoc& e : dinit.entries)
    (relevant.count(e.doc_id) ? rel : nonrel).push_back(e.doc_id);
  std::sort(rel.begin(), rel.end());
  std::sort(nonrel.begin(), nonrel.end());

  RankedList out;
  out.qid = dinit.qid;
  out.cutoff = dinit.cutoff;
  out.entries.reserve(dinit.entries.size());
  double score = static_cast<double>(dinit.entries.size());
  for (int id : rel) out.entries.push_back({id, score--});
  for (int id : nonrel) out.entries.push_back({id, score--});
  return out;
}

double rerank_upper_bound(const RankedList& dinit, const std::unordered_set<int>& relevant,
                          Metric m) {
  return metric_value(m, upper_bound_ranking(dinit, relevant), relevant);
}

namespace {

// Two-sided exact p-value by counting sign assignments whose rank sum is at
// least as far from the null mean as observed. Rank sums are tracked in
// half-rank units so average ranks stay integral.
double exact_sign_flip_pvalue(const std::vector<long long>& ranks2, long long w2) {
  long long total2 = 0;
  for (long long r : ranks2) total2 += r;

  // counts[s] = number of subsets with doubled rank sum s
  std::vector<double> counts(static_cast<std::size_t>(total2) + 1, 0.0);
  counts[0] = 1.0;
  for (long long r : ranks2)
    for (long long s = total2; s >= r; --s)
      counts[static_cast<std::size_t>(s)] += counts[static_cast<std::size_t>(s - r)];

  const long long observed = std::llabs(2 * w2 - total2);
  double favorable = 0.0;
  double all = 0.0;
  for (long long s = 0; s <= total2; ++s) {
    all += counts[static_cast<std::size_t>(s)];
    if (std::llabs(2 * s - total2) >= observed) favorable += counts[static_cast<std::size_t>(s)];
  }
  return favorable / all;
}

double normal_approx_pvalue(double w, int n, const std::vector<int>& tie_sizes) {
  const double mean = n * (n + 1) / 4.0;
  double var = n * (n + 1) * (2.0 * n + 1.0) / 24.0;
  for (int t : tie_sizes) var -= (static_cast<double>(t) * t * t - t) / 48.0;
  if (var <= 0.0) return 1.0;
  double z = (std::fabs(w - mean) - 0.5) / std::sqrt(var);
  if (z < 0.0) z = 0.0;
  return std::erfc(z / std::sqrt(2.0));
}

}  // namespace

WilcoxonResult wilcoxon_two_sided(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw ComputeError("wilcoxon: paired samples must have equal length");

  std::vector<double> diffs;
  diffs.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - y[i];
    if (d != 0.0) diffs.push_back(d);
  }

  WilcoxonResult result;
  result.n = static_cast<int>(diffs.size());
  if (result.n < 5) return result;  // indeterminate, flagged via determinate=false
  result.determinate = true;

  // Rank |d| ascending with average ranks for ties; doubled to stay integral.
  std::vector<std::size_t> order(diffs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(diffs[a]) < std::fabs(diffs[b]);
  });

  std::vector<long long> ranks2(diffs.size());
  std::vector<int> tie_sizes;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && std::fabs(diffs[order[j]]) == std::fabs(diffs[order[i]])) ++j;
    // average of ranks i+1 .. j, doubled: (i+1 + j)
    long long avg2 = static_cast<long long>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks2[order[k]] = avg2;
    if (j - i > 1) tie_sizes.push_back(static_cast<int>(j - i));
    i = j;
  }

  long long w2 = 0;
  for (std::size_t k = 0; k < diffs.size(); ++k)
    if (diffs[k] > 0.0) w2 += ranks2[k];
  result.statistic = static_cast<double>(w2) / 2.0;

  if (result.n <= 25) {
    result.p_value = exact_sign_flip_pvalue(ranks2, w2);
  } else {
    result.p_value = normal_approx_pvalue(result.statistic, result.n, tie_sizes);
  }
  result.significant = result.p_value < 0.05;
  return result;
}

double MetricReport::mean() const {
  if (per_query.empty()) return 0.0;
  double s = 0.0;
  for (double v : per_query) s += v;
  return s / static_cast<double>(per_query.size());
}

}  // namespace lmrank
