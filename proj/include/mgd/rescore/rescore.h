// rescore.h
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

#ifndef MGD_RESCORE_RESCORE_H_
#define MGD_RESCORE_RESCORE_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mgd/decoder/lattice.h"
#include "mgd/lm/ngram_model.h"

namespace mgd {

// Anything that assigns a cost (negated natural log probability) to a word
// sequence.
class SequenceScorer {
 public:
  virtual ~SequenceScorer() = default;
  virtual double Cost(const std::vector<std::string> &words) const = 0;
};

// Sentence cost under a backoff n-gram model, `</s>` included.
class NGramScorer : public SequenceScorer {
 public:
  explicit NGramScorer(NGramModel model) : model_(std::move(model)) {}
  double Cost(const std::vector<std::string> &words) const override {
    return Log10ToCost(model_.SentenceLogProb(words));
  }
  const NGramModel &Model() const { return model_; }

 private:
  NGramModel model_;
};

struct RescoreConfig {
  // Rescoring model per graph id.
  std::map<std::string, std::shared_ptr<const SequenceScorer>> models;
  double lm_scale = 1.0;
  double mu = 0.5;  // weight of the original graph LM cost
};

// Replaces each lm_cost by mu * lm_cost + (1 - mu) * lm_scale * cost under
// the model of the hypothesis' graph, recomputes total_cost and re-sorts by
// it (stable, so equal totals keep their input order). am_cost is never
// touched. Throws UsageError naming a graph id without a model, or on
// mu outside [0, 1] or a non-positive lm_scale.
std::vector<Hypothesis> RescoreNBest(const std::vector<Hypothesis> &hyps,
                                     const RescoreConfig &config);

}  // namespace mgd

#endif  // MGD_RESCORE_RESCORE_H_
