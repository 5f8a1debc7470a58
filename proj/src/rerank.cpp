#include "lmrank/rerank.hpp"

#include <algorithm>
#include <cmath>

#include "lmrank/errors.hpp"
#include "lmrank/language_model.hpp"

namespace lmrank {

namespace {

RankedList order_by(const RankedList& dinit, const std::vector<double>& keys) {
  std::vector<std::size_t> idx(dinit.entries.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] > keys[b];
    double ia = dinit.entries[a].score, ib = dinit.entries[b].score;
    if (ia != ib) return ia > ib;
    return dinit.entries[a].doc_id < dinit.entries[b].doc_id;
  });
  RankedList out;
  out.qid = dinit.qid;
  out.cutoff = dinit.cutoff;
  out.entries.reserve(idx.size());
  for (std::size_t i : idx) out.entries.push_back({dinit.entries[i].doc_id, keys[i]});
  return out;
}

std::vector<double> centrality_keys(const RankedList& dinit, const CentralityScores& scores) {
  std::vector<double> keys;
  keys.reserve(dinit.entries.size());
  for (const ScoredDoc& e : dinit.entries) keys.push_back(scores.score_of(e.doc_id));
  return keys;
}

}  // namespace

RankedList rerank_by_centrality(const RankedList& dinit, const CentralityScores& scores) {
  return order_by(dinit, centrality_keys(dinit, scores));
}

RankedList rerank_combined(const RankedList& dinit, const CentralityScores& scores,
                           std::span<const double> query_likelihood) {
  if (query_likelihood.size() != dinit.entries.size())
    throw DataError("query likelihood vector does not match the re-ranking set");
  std::vector<double> keys = centrality_keys(dinit, scores);
  for (std::size_t i = 0; i < keys.size(); ++i) keys[i] *= query_likelihood[i];
  return order_by(dinit, keys);
}

RankedList rerank_combined(const RankedList& dinit, const CentralityScores& scores) {
  std::vector<double> likelihood;
  likelihood.reserve(dinit.entries.size());
  for (const ScoredDoc& e : dinit.entries) likelihood.push_back(e.score);
  return rerank_combined(dinit, scores, likelihood);
}

std::optional<PriorKind> parse_prior_kind(std::string_view name) {
  if (name == "uniform") return PriorKind::uniform;
  if (name == "tokens") return PriorKind::tokens;
  if (name == "log-tokens") return PriorKind::log_tokens;
  if (name == "types") return PriorKind::types;
  if (name == "log-types") return PriorKind::log_types;
  if (name == "entropy") return PriorKind::entropy;
  return std::nullopt;
}

double document_prior(const Document& d, PriorKind kind) {
  if (d.length() == 0) throw ComputeError("document prior of empty document");
  switch (kind) {
    case PriorKind::uniform: return 1.0;
    case PriorKind::tokens: return static_cast<double>(d.length());
    case PriorKind::log_tokens: return std::log1p(static_cast<double>(d.length()));
    case PriorKind::types: return static_cast<double>(d.type_count());
    case PriorKind::log_types: return std::log1p(static_cast<double>(d.type_count()));
    case PriorKind::entropy: return entropy(mle(d));
  }
  return 1.0;
}

CentralityScores prior_scores(const Corpus& corpus, const RankedList& dinit, PriorKind kind) {
  CentralityScores c;
  c.node_ids.reserve(dinit.entries.size());
  c.scores.reserve(dinit.entries.size());
  for (const ScoredDoc& e : dinit.entries) {
    c.node_ids.push_back(e.doc_id);
    c.scores.push_back(document_prior(corpus.doc(e.doc_id), kind));
  }
  c.method = "prior";
  return c;
}

}  // namespace lmrank
