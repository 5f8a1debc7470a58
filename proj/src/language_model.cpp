#include "lmrank/language_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lmrank/errors.hpp"

namespace lmrank {

double TermDistribution::prob(TermId t) const {
  auto it = std::lower_bound(probs.begin(), probs.end(), t,
                             [](const auto& p, TermId v) { return p.first < v; });
  return (it != probs.end() && it->first == t) ? it->second : 0.0;
}

TermDistribution mle(const std::vector<TermId>& tokens) {
  if (tokens.empty()) throw ComputeError("mle of empty token sequence");
  std::map<TermId, int> counts;
  for (TermId t : tokens) ++counts[t];
  TermDistribution dist;
  dist.probs.reserve(counts.size());
  const double n = static_cast<double>(tokens.size());
  for (const auto& [t, c] : counts) dist.probs.emplace_back(t, c / n);
  return dist;
}

TermDistribution mle(const Document& d) {
  TermDistribution dist;
  dist.probs.reserve(d.counts.size());
  const double n = static_cast<double>(d.length());
  for (const auto& [t, c] : d.counts) dist.probs.emplace_back(t, c / n);
  return dist;
}

double entropy(const TermDistribution& dist) {
  double h = 0.0;
  for (const auto& [t, p] : dist.probs) h -= p * std::log(p);
  return h < 0.0 ? 0.0 : h;  // clamp -0.0 from the single-type case
}

SmoothedModel::SmoothedModel(const Corpus& corpus, const Document& d, double mu)
    : corpus_(&corpus), doc_(&d), mu_(mu), denom_(d.length() + mu) {
  if (mu < 0.0) throw ComputeError("Dirichlet mu must be >= 0");
}

double SmoothedModel::prob(TermId w) const {
  return (doc_->count(w) + mu_ * corpus_->collection_prob(w)) / denom_;
}

double SmoothedModel::log_prob(TermId w) const { return std::log(prob(w)); }

double kl_divergence(const TermDistribution& p, const SmoothedModel& q) {
  double kl = 0.0;
  for (const auto& [t, pw] : p.probs) {
    double qw = q.prob(t);
    if (!(qw > 0.0))
      throw ComputeError("KL divergence undefined: q vanishes on p's support (term id " +
                         std::to_string(t) + ")");
    kl += pw * (std::log(pw) - std::log(qw));
  }
  return kl;
}

std::vector<TermId> vocab_filter(const Corpus& corpus, const std::vector<std::string>& terms) {
  std::vector<TermId> ids;
  ids.reserve(terms.size());
  for (const std::string& t : terms)
    if (auto id = corpus.lookup(t)) ids.push_back(*id);
  return ids;
}

double log_gen_prob(const Corpus& corpus, const Document& d, const std::vector<TermId>& s,
                    double mu) {
  if (!(mu > 0.0)) throw ComputeError("gen_prob requires mu > 0");
  if (s.empty()) throw ComputeError("gen_prob of empty sequence");
  return -kl_divergence(mle(s), SmoothedModel(corpus, d, mu));
}

double gen_prob(const Corpus& corpus, const Document& d, const std::vector<TermId>& s,
                double mu) {
  return std::exp(log_gen_prob(corpus, d, s, mu));
}

}  // namespace lmrank
