#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "lmrank/centrality.hpp"
#include "lmrank/corpus.hpp"
#include "lmrank/ranking.hpp"

namespace lmrank {

// Orders the re-ranking set by descending centrality; ties fall back to
// descending initial retrieval score, then ascending doc id. Every document
// in `dinit` must be covered by `scores`.
RankedList rerank_by_centrality(const RankedList& dinit, const CentralityScores& scores);

// Orders by centrality * query likelihood, same tie
// chain. `query_likelihood` is parallel to dinit.entries; the overload
// without it uses the initial retrieval scores.
RankedList rerank_combined(const RankedList& dinit, const CentralityScores& scores,
                           std::span<const double> query_likelihood);
RankedList rerank_combined(const RankedList& dinit, const CentralityScores& scores);

enum class PriorKind { uniform, tokens, log_tokens, types, log_types, entropy };

std::optional<PriorKind> parse_prior_kind(std::string_view name);

double document_prior(const Document& d, PriorKind kind);

// Priors packaged as centrality scores so they can drop into the same
// combination rule.
CentralityScores prior_scores(const Corpus& corpus, const RankedList& dinit, PriorKind kind);

}  // namespace lmrank
