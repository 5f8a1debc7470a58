#include "lmrank/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "lmrank/errors.hpp"
#include "lmrank/porter.hpp"

namespace lmrank {

std::vector<std::string> tokenize(std::string_view raw) {
  std::vector<std::string> out;
  std::string current;
  for (unsigned char c : raw) {
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      out.push_back(porter_stem(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(porter_stem(current));
  return out;
}

int count_term(std::string_view term, const std::vector<std::string>& tokens) {
  return static_cast<int>(std::count(tokens.begin(), tokens.end(), term));
}

int Document::count(TermId t) const {
  auto it = std::lower_bound(counts.begin(), counts.end(), t,
                             [](const auto& p, TermId v) { return p.first < v; });
  return (it != counts.end() && it->first == t) ? it->second : 0;
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  if (name == "trec-sgml") return CorpusFormat::trec_sgml;
  if (name == "jsonl") return CorpusFormat::jsonl;
  return std::nullopt;
}

TermId Corpus::intern(std::string_view term) {
  auto it = term_ids_.find(std::string(term));
  if (it != term_ids_.end()) return it->second;
  TermId id = static_cast<TermId>(terms_.size());
  terms_.emplace_back(term);
  coll_counts_.push_back(0);
  doc_freqs_.push_back(0);
  term_ids_.emplace(terms_.back(), id);
  return id;
}

std::optional<TermId> Corpus::lookup(std::string_view term) const {
  auto it = term_ids_.find(std::string(term));
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

int Corpus::add_document(std::string external_name,
                         const std::vector<std::string>& stemmed_tokens) {
  if (stemmed_tokens.empty())
    throw ComputeError("document '" + external_name + "' has no tokens");
  if (name_to_id_.count(external_name))
    throw DataError("duplicate document name '" + external_name + "'");

  Document d;
  d.id = static_cast<int>(docs_.size());
  d.external_name = std::move(external_name);
  d.tokens.reserve(stemmed_tokens.size());
  std::map<TermId, int> counts;
  for (const std::string& t : stemmed_tokens) {
    TermId id = intern(t);
    d.tokens.push_back(id);
    ++counts[id];
  }
  d.counts.assign(counts.begin(), counts.end());
  for (const auto& [t, c] : d.counts) {
    coll_counts_[t] += c;
    ++doc_freqs_[t];
  }
  total_tokens_ += d.length();
  name_to_id_.emplace(d.external_name, d.id);
  docs_.push_back(std::move(d));
  return docs_.back().id;
}

std::int64_t Corpus::collection_count(TermId t) const {
  return coll_counts_.at(t);
}

double Corpus::collection_prob(TermId t) const {
  return static_cast<double>(coll_counts_.at(t)) / static_cast<double>(total_tokens_);
}

int Corpus::doc_freq(TermId t) const { return doc_freqs_.at(t); }

namespace {

void add_or_skip(Corpus& corpus, std::string name, const std::string& text,
                 std::ostream* warnings) {
  std::vector<std::string> tokens = tokenize(text);
  if (tokens.empty()) {
    if (warnings)
      *warnings << "warning: document '" << name << "' is empty after tokenization, skipped\n";
    return;
  }
  corpus.add_document(std::move(name), tokens);
}

Corpus load_jsonl(std::istream& in, std::ostream* warnings) {
  Corpus corpus;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("name") ||
        !rec.contains("text") || !rec["name"].is_string() || !rec["text"].is_string())
      throw DataError("malformed jsonl record at line " + std::to_string(lineno) +
                      " (need object with string fields \"name\" and \"text\")");
    add_or_skip(corpus, rec["name"].get<std::string>(), rec["text"].get<std::string>(),
                warnings);
  }
  return corpus;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Finds the next `<tag>` (case-insensitive) at or after `pos` in `hay_lower`.
std::size_t find_tag(const std::string& hay_lower, const std::string& tag, std::size_t pos) {
  return hay_lower.find(tag, pos);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Corpus load_trec_sgml(std::istream& in, std::ostream* warnings) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const std::string low = lower(text);

  Corpus corpus;
  std::size_t pos = 0;
  while (true) {
    std::size_t doc_open = find_tag(low, "<doc>", pos);
    if (doc_open == std::string::npos) break;
    std::size_t doc_close = find_tag(low, "</doc>", doc_open);
    if (doc_close == std::string::npos)
      throw DataError("unterminated <DOC> block at offset " + std::to_string(doc_open));

    std::size_t no_open = find_tag(low, "<docno>", doc_open);
    std::size_t no_close = find_tag(low, "</docno>", doc_open);
    if (no_open == std::string::npos || no_close == std::string::npos ||
        no_open > doc_close || no_close > doc_close || no_close < no_open)
      throw DataError("missing or malformed <DOCNO> in block at offset " +
                      std::to_string(doc_open));
    std::string name = trim(text.substr(no_open + 7, no_close - (no_open + 7)));
    if (name.empty())
      throw DataError("empty DOCNO in block at offset " + std::to_string(doc_open));

    // All TEXT sections inside the block are concatenated.
    std::string body;
    std::size_t tpos = doc_open;
    while (true) {
      std::size_t t_open = find_tag(low, "<text>", tpos);
      if (t_open == std::string::npos || t_open > doc_close) break;
      std::size_t t_close = find_tag(low, "</text>", t_open);
      if (t_close == std::string::npos || t_close > doc_close)
        throw DataError("unterminated <TEXT> in document '" + name + "'");
      body.append(text.substr(t_open + 6, t_close - (t_open + 6)));
      body.push_back('\n');
      tpos = t_close + 7;
    }
    add_or_skip(corpus, std::move(name), body, warnings);
    pos = doc_close + 6;
  }
  return corpus;
}

}  // namespace

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                   std::ostream* warnings) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path.string());
  switch (format) {
    case CorpusFormat::jsonl:
      return load_jsonl(in, warnings);
    case CorpusFormat::trec_sgml:
      return load_trec_sgml(in, warnings);
  }
  throw DataError("unknown corpus format");
}

std::vector<Query> load_queries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open queries file: " + path.string());
  std::vector<Query> queries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw DataError("queries line " + std::to_string(lineno) + ": expected qid<TAB>text");
    Query q;
    q.qid = trim(line.substr(0, tab));
    q.tokens = tokenize(line.substr(tab + 1));
    if (q.qid.empty() || q.tokens.empty())
      throw DataError("queries line " + std::to_string(lineno) +
                      ": empty qid or query text after tokenization");
    queries.push_back(std::move(q));
  }
  return queries;
}

}  // namespace lmrank
