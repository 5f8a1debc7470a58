#include "lmrank/synthetic.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "lmrank/errors.hpp"
#include "lmrank/porter.hpp"

namespace lmrank {
namespace {

// Local samplers over mt19937_64 (std distributions are not guaranteed to
// produce the same stream across standard libraries).
int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double uniform_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Pronounceable letter-only words that are fixed points of the stemmer, so
// re-tokenizing stemmed text is the identity on this corpus.
std::vector<std::string> make_vocabulary(std::mt19937_64& rng, std::size_t count) {
  static const char* onsets[] = {"b", "d", "f", "g", "k", "l", "m", "n",
                                 "p", "r", "t", "v", "z", "br", "dr", "gr",
                                 "kl", "pl", "st", "tr"};
  static const char* nuclei[] = {"a", "e", "i", "o", "u", "ar", "or", "ur"};
  std::set<std::string> seen;
  std::vector<std::string> vocab;
  while (vocab.size() < count) {
    int syllables = uniform_int(rng, 2, 3);
    std::string w;
    for (int s = 0; s < syllables; ++s) {
      w += onsets[uniform_int(rng, 0, 19)];
      w += nuclei[uniform_int(rng, 0, 7)];
    }
    if (uniform_real(rng) < 0.4) w += "k";
    if (porter_stem(w) != w) continue;
    if (seen.insert(w).second) vocab.push_back(w);
  }
  return vocab;
}

std::string json_escape(const std::string& s) {
  // vocabulary is [a-z ] only, so escaping is a formality
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

SyntheticData make_synthetic(const SyntheticSpec& spec) {
  if (spec.topics < 1 || spec.core_per_topic < 1)
    throw ConfigError("synthetic spec needs at least one topic and one core doc");

  std::mt19937_64 rng(spec.seed);

  const int query_terms_per_topic = 4;
  const int topic_term_count = 14;
  const int background_count = 420;
  const int common_count = 30;

  std::vector<std::string> vocab = make_vocabulary(
      rng, static_cast<std::size_t>(spec.topics) * topic_term_count + background_count +
               common_count);

  // Partition: per-topic blocks first, then background, then common glue.
  auto topic_term = [&](int topic, int j) { return vocab[topic * topic_term_count + j]; };
  const int bg_base = spec.topics * topic_term_count;
  const int common_base = bg_base + background_count;

  auto draw_background = [&]() { return vocab[bg_base + uniform_int(rng, 0, background_count - 1)]; };
  auto draw_common = [&]() { return vocab[common_base + uniform_int(rng, 0, common_count - 1)]; };
  auto draw_topic = [&](int topic) {
    return topic_term(topic, uniform_int(rng, 0, topic_term_count - 1));
  };

  struct Draft {
    std::string text;
    int relevant_topic = -1;  // -1: not relevant to any query
    int judged_zero_topic = -1;
  };
  std::vector<Draft> drafts;

  auto doc_length = [&]() { return uniform_int(rng, spec.doc_len_min, spec.doc_len_max); };

  for (int t = 0; t < spec.topics; ++t) {
    for (int c = 0; c < spec.core_per_topic; ++c) {
      Draft d;
      d.relevant_topic = t;
      int len = doc_length();
      std::ostringstream text;
      for (int i = 0; i < len; ++i) {
        double r = uniform_real(rng);
        if (r < 0.55) text << draw_topic(t);
        else if (r < 0.65) text << draw_common();
        else text << draw_background();
        text << ' ';
      }
      d.text = text.str();
      drafts.push_back(std::move(d));
    }
  }

  for (int i = 0; i < spec.distractors; ++i) {
    Draft d;
    int target = uniform_int(rng, 0, spec.topics - 1);
    d.judged_zero_topic = (i % 3 == 0) ? target : -1;
    int len = doc_length();
    // bait: the target topic's query terms at high density, no further
    // topical substance; these outscore core documents on query likelihood
    std::ostringstream text;
    for (int j = 0; j < len; ++j) {
      double r = uniform_real(rng);
      if (r < 0.30) text << topic_term(target, uniform_int(rng, 0, query_terms_per_topic - 1));
      else if (r < 0.40) text << draw_common();
      else text << draw_background();
      text << ' ';
    }
    d.text = text.str();
    drafts.push_back(std::move(d));
  }

  for (int i = 0; i < spec.background; ++i) {
    Draft d;
    int len = doc_length();
    std::ostringstream text;
    for (int j = 0; j < len; ++j) {
      text << (uniform_real(rng) < 0.15 ? draw_common() : draw_background()) << ' ';
    }
    d.text = text.str();
    drafts.push_back(std::move(d));
  }

  // Shuffle so relevant documents are not contiguous id blocks.
  for (std::size_t i = drafts.size(); i > 1; --i)
    std::swap(drafts[i - 1], drafts[uniform_int(rng, 0, static_cast<int>(i) - 1)]);

  SyntheticData data;
  std::ostringstream corpus, qrels;
  std::vector<std::string> names(drafts.size());
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "SYN-%04zu", i + 1);
    names[i] = name;
    corpus << "{\"name\": \"" << name << "\", \"text\": \"" << json_escape(drafts[i].text)
           << "\"}\n";
  }
  data.corpus_jsonl = corpus.str();

  std::ostringstream queries;
  for (int t = 0; t < spec.topics; ++t) {
    char qid[16];
    std::snprintf(qid, sizeof(qid), "q%02d", t + 1);
    queries << qid << '\t' << topic_term(t, 0) << ' ' << topic_term(t, 1) << ' '
            << topic_term(t, 2) << '\n';
    for (std::size_t i = 0; i < drafts.size(); ++i) {
      if (drafts[i].relevant_topic == t)
        qrels << qid << " 0 " << names[i] << " 1\n";
      else if (drafts[i].judged_zero_topic == t)
        qrels << qid << " 0 " << names[i] << " 0\n";
    }
  }
  data.queries_tsv = queries.str();
  data.qrels_text = qrels.str();
  return data;
}

void write_synthetic(const SyntheticSpec& spec, const std::filesystem::path& dir) {
  SyntheticData data = make_synthetic(spec);
  std::filesystem::create_directories(dir);
  auto write = [&](const char* name, const std::string& content) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw DataError("cannot write " + (dir / name).string());
    out << content;
  };
  write("corpus.jsonl", data.corpus_jsonl);
  write("queries.tsv", data.queries_tsv);
  write("qrels.txt", data.qrels_text);

  std::ostringstream conf;
  conf << "# experiment configuration\n"
       << "corpus = " << (dir / "corpus.jsonl").string() << "\n"
       << "format = jsonl\n"
       << "queries = " << (dir / "queries.tsv").string() << "\n"
       << "qrels = " << (dir / "qrels.txt").string() << "\n"
       << "dinit = 50\n"
       << "mode = rerank\n"
       << "algorithms = all\n"
       << "out = " << (dir / "results").string() << "\n";
  write("experiment.conf", conf.str());
}

}  // namespace lmrank
