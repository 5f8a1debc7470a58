#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lmrank/corpus.hpp"

namespace lmrank {

struct ScoredDoc {
  int doc_id;
  double score;
};

// Scores non-increasing; ties broken by ascending doc id; ids unique.
struct RankedList {
  std::string qid;
  int cutoff = 0;
  std::vector<ScoredDoc> entries;

  bool contains(int doc_id) const;
};

// Sorts (score desc, doc id asc) and truncates to cutoff.
RankedList make_ranked_list(std::string qid, std::vector<ScoredDoc> scored, int cutoff);

// TREC run format: `qid Q0 docname rank score tag`.
void write_run_file(std::ostream& out, const RankedList& list, const Corpus& corpus,
                    std::string_view tag);
void write_run_file(std::ostream& out, std::span<const RankedList> lists, const Corpus& corpus,
                    std::string_view tag);

}  // namespace lmrank
