// interpolate.h
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

#ifndef MGD_LM_INTERPOLATE_H_
#define MGD_LM_INTERPOLATE_H_

#include <utility>
#include <vector>

#include "mgd/lm/corpus.h"
#include "mgd/lm/ngram_model.h"

namespace mgd {

// Merges two models of equal order into one backoff model over the union
// vocabulary. Every n-gram of either model gets p = λ p_a + (1 - λ) p_b,
// each side evaluated with its own backoff; backoff weights are recomputed
// so that each history stays normalized. A word missing from one model
// receives an equal share of that model's <unk> probability (shared with
// <unk> itself).
NGramModel InterpolateStatic(const NGramModel &a, const NGramModel &b,
                             double lambda);

// Exact perplexity of the dynamic mixture λ p_a + (1 - λ) p_b given the
// per-event probabilities of each component. λ = 0 and λ = 1 reproduce the
// components bit for bit.
double MixturePerplexity(const std::vector<double> &probs_a,
                         const std::vector<double> &probs_b, double lambda);

struct InterpolationTuning {
  double lambda = 0.0;
  double perplexity = 0.0;
  std::vector<std::pair<double, double>> grid;  // (λ, perplexity)
};

// Grid search over λ ∈ {0, 1/steps, ..., 1} minimizing the dev perplexity
// of the mixture. Only a strict improvement moves the optimum, so ties go
// to the smaller λ.
InterpolationTuning TuneInterpolationWeight(const NGramModel &a,
                                            const NGramModel &b,
                                            const TextCorpus &dev,
                                            int steps = 20);

}  // namespace mgd

#endif  // MGD_LM_INTERPOLATE_H_
