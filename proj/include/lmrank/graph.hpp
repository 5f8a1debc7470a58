#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "lmrank/corpus.hpp"
#include "lmrank/matrix.hpp"

namespace lmrank {

enum class LinkMode { lm_generation, cosine_log_tfidf };
enum class GraphKind { uniform, weighted, smoothed };

std::optional<LinkMode> parse_link_mode(std::string_view name);

// Complete weighted digraph over the re-ranking set. weights(o, g) is the
// weight of the edge from offspring o to generator g; indices follow
// node_ids order.
struct GenerationGraph {
  std::vector<int> node_ids;
  Matrix weights;
  GraphKind kind = GraphKind::uniform;
  GraphKind base_kind = GraphKind::uniform;  // pre-smoothing kind
  LinkMode link = LinkMode::lm_generation;
  int alpha = 0;
  double lambda = -1.0;  // set only for kind == smoothed

  int size() const { return static_cast<int>(node_ids.size()); }
};

// Cosine between log tf.idf vectors: v(w) = (1 + log tf(w;d)) * log(N/df(w)).
// Terms occurring in every document contribute zero; a zero-norm vector
// scores 0 with a warning.
double cosine_score(const Document& a, const Document& b, const Corpus& corpus,
                    std::ostream* warnings = nullptr);

// scores(g, o): the link score document g earns as a generator of o's text.
// For lm mode this is gen_prob(g, o); for cosine mode, cosine(g, o).
// Diagonal entries are set to 0 and never consulted.
Matrix pairwise_link_scores(const Corpus& corpus, const std::vector<int>& node_ids,
                            LinkMode mode, double mu, int threads = 1);

// Positions (into node_ids) of the alpha highest-scoring generators of the
// document at position `offspring_pos`, ties by ascending doc id.
std::vector<int> top_generator_positions(const Matrix& scores, const std::vector<int>& node_ids,
                                         int offspring_pos, int alpha);

// Spec-level convenience: the alpha top generators of doc_id within dinit,
// returned as doc ids in selection order.
std::vector<int> top_generators(const Corpus& corpus, int doc_id, const std::vector<int>& dinit,
                                int alpha, LinkMode mode, double mu);

// kind must be uniform or weighted. Uniform: wt(o->g) = 1 for top
// generators; weighted: wt(o->g) = scores(g, o).
GenerationGraph build_graph(const std::vector<int>& node_ids, const Matrix& scores, int alpha,
                            GraphKind kind, LinkMode link);

// wt_lambda(o->g) = (1-lambda)/n + lambda * wt(o->g) / rowsum(o).
GenerationGraph smooth(const GenerationGraph& g, double lambda);

// TSV dump `from_doc<TAB>to_doc<TAB>weight` of nonzero edges.
void dump_graph_tsv(std::ostream& out, const GenerationGraph& g, const Corpus& corpus);

}  // namespace lmrank
