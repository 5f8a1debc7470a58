#include "lmrank/ranking.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace lmrank {

bool RankedList::contains(int doc_id) const {
  for (const ScoredDoc& e : entries)
    if (e.doc_id == doc_id) return true;
  return false;
}

RankedList make_ranked_list(std::string qid, std::vector<ScoredDoc> scored, int cutoff) {
  std::sort(scored.begin(), scored.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
  if (cutoff >= 0 && scored.size() > static_cast<std::size_t>(cutoff))
    scored.resize(cutoff);
  RankedList list;
  list.qid = std::move(qid);
  list.cutoff = cutoff;
  list.entries = std::move(scored);
  return list;
}

void write_run_file(std::ostream& out, const RankedList& list, const Corpus& corpus,
                    std::string_view tag) {
  char score_buf[64];
  int rank = 0;
  for (const ScoredDoc& e : list.entries) {
    ++rank;
    std::snprintf(score_buf, sizeof(score_buf), "%.10g", e.score);
    out << list.qid << " Q0 " << corpus.doc(e.doc_id).external_name << ' ' << rank << ' '
        << score_buf << ' ' << tag << '\n';
  }
}

void write_run_file(std::ostream& out, std::span<const RankedList> lists, const Corpus& corpus,
                    std::string_view tag) {
  for (const RankedList& list : lists) write_run_file(out, list, corpus, tag);
}

}  // namespace lmrank
