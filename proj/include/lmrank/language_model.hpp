#pragma once

#include <string>
#include <vector>

#include "lmrank/corpus.hpp"

namespace lmrank {

// Sparse distribution over term ids; strictly positive on support.
struct TermDistribution {
  std::vector<std::pair<TermId, double>> probs;  // sorted by term id

  int support_size() const { return static_cast<int>(probs.size()); }
  double prob(TermId t) const;
};

// Maximum-likelihood unigram estimate. Throws ComputeError on empty input.
TermDistribution mle(const std::vector<TermId>& tokens);
TermDistribution mle(const Document& d);

// Shannon entropy in nats.
double entropy(const TermDistribution& dist);

// Dirichlet-smoothed unigram model of a document:
//   p(w) = (tf(w;d) + mu * pC(w)) / (|d| + mu)
class SmoothedModel {
 public:
  SmoothedModel(const Corpus& corpus, const Document& d, double mu);

  double prob(TermId w) const;
  double log_prob(TermId w) const;
  double mu() const { return mu_; }
  const Document& source() const { return *doc_; }

 private:
  const Corpus* corpus_;
  const Document* doc_;
  double mu_;
  double denom_;  // |d| + mu
};

// sum_w p(w) log(p(w)/q(w)). Throws ComputeError if q vanishes on p's support.
double kl_divergence(const TermDistribution& p, const SmoothedModel& q);

// Drops terms absent from the corpus vocabulary and maps the rest to ids.
std::vector<TermId> vocab_filter(const Corpus& corpus, const std::vector<std::string>& terms);

// log of the generation score exp(-KL(mle(s) || p_d^[mu])). `s` must be
// nonempty and within the corpus vocabulary (apply vocab_filter first for
// raw query text). Requires mu > 0.
double log_gen_prob(const Corpus& corpus, const Document& d, const std::vector<TermId>& s,
                    double mu);
double gen_prob(const Corpus& corpus, const Document& d, const std::vector<TermId>& s,
                double mu);

}  // namespace lmrank
