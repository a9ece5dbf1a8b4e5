// interpolate.cc
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mgd/lm/interpolate.h"

#include <cmath>
#include <set>

#include "mgd/base/error.h"
#include "mgd/fst/symbol_table.h"
#include "mgd/lm/perplexity.h"

namespace mgd {
namespace {

// One side of the interpolation, seen through the result's word ids.
class Component {
 public:
  Component(const NGramModel &model, const std::vector<std::string> &vocab)
      : model_(model) {
    size_t missing = 0;
    for (const auto &w : vocab) {
      const WordId id = model.Id(w);
      to_model_.push_back(id);
      missing += id < 0;
    }
    unk_share_ = 1.0 / (missing + 1);
  }

  double Prob(WordId word, const NGram &history) const {
    NGram h;
    h.reserve(history.size());
    for (WordId w : history) {
      const WordId id = to_model_[w];
      h.push_back(id >= 0 ? id : model_.UnkId());
    }
    const WordId id = to_model_[word];
    if (id >= 0 && id != model_.UnkId())
      return std::pow(10.0, model_.LogProb(id, h));
    if (model_.UnkId() < 0) return 0.0;
    return std::pow(10.0, model_.LogProb(model_.UnkId(), h)) * unk_share_;
  }

 private:
  const NGramModel &model_;
  std::vector<WordId> to_model_;
  double unk_share_;
};

double ToLog10(double p) { return p > 0.0 ? std::log10(p) : kLog10Zero; }

}  // namespace

NGramModel InterpolateStatic(const NGramModel &a, const NGramModel &b,
                             double lambda) {
  if (a.Order() != b.Order())
    throw LmError("cannot interpolate models of order " +
                  std::to_string(a.Order()) + " and " +
                  std::to_string(b.Order()));
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw LmError("interpolation weight must be in [0, 1]");
  const std::string unk(kUnknownSymbol), bos(kSentenceStart), eos(kSentenceEnd);
  std::set<std::string> words;
  for (const auto *m : {&a, &b})
    for (const auto &w : m->Vocabulary())
      if (w != unk && w != bos && w != eos) words.insert(w);
  std::vector<std::string> vocab{unk, bos, eos};
  vocab.insert(vocab.end(), words.begin(), words.end());

  NGramModel out(a.Order(), vocab);
  const Component ca(a, vocab), cb(b, vocab);
  auto mix = [&](WordId w, const NGram &h) {
    if (lambda == 1.0) return ca.Prob(w, h);
    if (lambda == 0.0) return cb.Prob(w, h);
    return lambda * ca.Prob(w, h) + (1.0 - lambda) * cb.Prob(w, h);
  };

  // Probabilities for the union of explicit n-grams (every word at order 1).
  for (WordId w = 0; w < static_cast<WordId>(vocab.size()); ++w)
    out.Set({w}, {w == out.BosId() ? kLog10Zero : ToLog10(mix(w, {})), 0.0});
  for (int k = 2; k <= a.Order(); ++k) {
    std::set<NGram> keys;
    for (const auto *m : {&a, &b})
      for (const auto &[ngram, entry] : m->NGrams(k)) {
        NGram mapped;
        for (WordId w : ngram) mapped.push_back(out.Id(m->Word(w)));
        keys.insert(std::move(mapped));
      }
    for (const auto &g : keys) {
      const NGram h(g.begin(), g.end() - 1);
      out.Set(g, {ToLog10(mix(g.back(), h)), 0.0});
    }
  }

  // Backoff weights, shortest histories first so lower-order lookups in the
  // result are final when they are needed.
  for (int k = 1; k < a.Order(); ++k) {
    const auto &ext = out.NGrams(k + 1);
    for (auto it = ext.begin(); it != ext.end();) {
      const NGram history(it->first.begin(), it->first.end() - 1);
      const NGram shorter(history.begin() + 1, history.end());
      double explicit_sum = 0.0, lower_sum = 0.0;
      for (; it != ext.end() &&
             std::equal(history.begin(), history.end(), it->first.begin());
           ++it) {
        explicit_sum += std::pow(10.0, it->second.logprob);
        lower_sum += std::pow(10.0, out.LogProb(it->first.back(), shorter));
      }
      const double num = 1.0 - explicit_sum, den = 1.0 - lower_sum;
      NGramModel::Entry h = out.Find(history) != nullptr
                                ? *out.Find(history)
                                : NGramModel::Entry{};
      if (out.Find(history) == nullptr) {
        // A history that neither model stores as an n-gram; give it the
        // interpolated probability so the table stays closed under prefixes.
        const NGram prefix(history.begin(), history.end() - 1);
        h.logprob = ToLog10(mix(history.back(), prefix));
      }
      h.backoff = den > 1e-12 && num > 0.0 ? std::log10(num / den)
                                           : (den > 1e-12 ? kLog10Zero : 0.0);
      out.Set(history, h);
    }
  }
  return out;
}

double MixturePerplexity(const std::vector<double> &probs_a,
                         const std::vector<double> &probs_b, double lambda) {
  if (probs_a.size() != probs_b.size() || probs_a.empty())
    throw LmError("mixture needs matching, non-empty event lists");
  double logprob = 0.0;
  for (size_t i = 0; i < probs_a.size(); ++i) {
    const double p = lambda == 1.0   ? probs_a[i]
                     : lambda == 0.0 ? probs_b[i]
                                     : probs_b[i] + lambda * (probs_a[i] - probs_b[i]);
    logprob += std::log10(p);
  }
  return std::pow(10.0, -logprob / probs_a.size());
}

InterpolationTuning TuneInterpolationWeight(const NGramModel &a,
                                            const NGramModel &b,
                                            const TextCorpus &dev, int steps) {
  if (dev.Empty()) throw LmError("interpolation tuning needs a dev text");
  if (steps < 1) throw LmError("grid needs at least one step");
  const auto pa = EventProbabilities(a, dev);
  const auto pb = EventProbabilities(b, dev);
  InterpolationTuning best;
  for (int i = 0; i <= steps; ++i) {
    const double lambda = static_cast<double>(i) / steps;
    const double ppl = MixturePerplexity(pa, pb, lambda);
    best.grid.emplace_back(lambda, ppl);
    if (i == 0 || ppl < best.perplexity) {
      best.lambda = lambda;
      best.perplexity = ppl;
    }
  }
  return best;
}

}  // namespace mgd
