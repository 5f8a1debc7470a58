#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lmrank {

using TermId = std::int32_t;

// Lowercases, splits on non-alphanumeric boundaries, Porter-stems each piece.
// No stopword removal. Empty input yields an empty list.
std::vector<std::string> tokenize(std::string_view raw);

// Exact number of occurrences of `term` in `tokens`.
int count_term(std::string_view term, const std::vector<std::string>& tokens);

struct Document {
  int id = -1;                                 // contiguous, assigned at load
  std::string external_name;
  std::vector<TermId> tokens;                  // stemmed terms in text order
  std::vector<std::pair<TermId, int>> counts;  // sorted by term id

  int length() const { return static_cast<int>(tokens.size()); }
  int type_count() const { return static_cast<int>(counts.size()); }
  int count(TermId t) const;
};

struct Query {
  std::string qid;
  std::vector<std::string> tokens;  // stemmed
};

enum class CorpusFormat { trec_sgml, jsonl };

std::optional<CorpusFormat> parse_corpus_format(std::string_view name);

// Immutable after loading; safe for concurrent reads.
class Corpus {
 public:
  TermId intern(std::string_view term);
  std::optional<TermId> lookup(std::string_view term) const;
  const std::string& term(TermId id) const { return terms_.at(id); }
  std::size_t vocabulary_size() const { return terms_.size(); }

  // Appends a document with the next id; tokens must already be stemmed.
  // Throws DataError on duplicate external name, ComputeError on empty tokens.
  int add_document(std::string external_name, const std::vector<std::string>& stemmed_tokens);

  const std::vector<Document>& documents() const { return docs_; }
  const Document& doc(int id) const { return docs_.at(id); }
  int size() const { return static_cast<int>(docs_.size()); }

  std::int64_t total_tokens() const { return total_tokens_; }
  std::int64_t collection_count(TermId t) const;
  double collection_prob(TermId t) const;  // corpus-wide MLE
  int doc_freq(TermId t) const;

 private:
  std::unordered_map<std::string, TermId> term_ids_;
  std::vector<std::string> terms_;
  std::vector<std::int64_t> coll_counts_;
  std::vector<int> doc_freqs_;
  std::vector<Document> docs_;
  std::unordered_map<std::string, int> name_to_id_;
  std::int64_t total_tokens_ = 0;
};

// Documents that tokenize to nothing are skipped with a note on `warnings`.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                   std::ostream* warnings = nullptr);

// TSV lines `qid<TAB>query text`. A query that stems to nothing is rejected.
std::vector<Query> load_queries(const std::filesystem::path& path);

}  // namespace lmrank
