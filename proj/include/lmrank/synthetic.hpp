#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace lmrank {

// Topic-mixture corpus with planted relevance, used by the test and
// acceptance suites so experiments run without external data.
struct SyntheticSpec {
  int topics = 15;          // one query per topic
  int core_per_topic = 8;   // on-topic (relevant) documents
  int distractors = 50;     // query-term bait without topical substance
  int background = 30;      // filler
  int doc_len_min = 110;
  int doc_len_max = 190;
  std::uint64_t seed = 20050815;
};

struct SyntheticData {
  std::string corpus_jsonl;
  std::string queries_tsv;
  std::string qrels_text;
};

SyntheticData make_synthetic(const SyntheticSpec& spec);

// Writes corpus.jsonl, queries.tsv, qrels.txt and a ready-to-run
// experiment.conf into `dir`.
void write_synthetic(const SyntheticSpec& spec, const std::filesystem::path& dir);

}  // namespace lmrank
