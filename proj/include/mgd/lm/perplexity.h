// perplexity.h
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

#ifndef MGD_LM_PERPLEXITY_H_
#define MGD_LM_PERPLEXITY_H_

#include <vector>

#include "mgd/lm/corpus.h"
#include "mgd/lm/ngram_model.h"

namespace mgd {

struct PerplexityResult {
  double perplexity = 0.0;
  double logprob = 0.0;  // Σ log10 p over scored events
  size_t tokens = 0;     // scored events, </s> included
  size_t oovs = 0;       // words missing from the vocabulary
};

// 10^(-logprob / tokens). `<s>` is context only; `</s>` is predicted. OOV
// words are scored as `<unk>`; a model without `<unk>` skips them (they are
// still reported in `oovs`).
PerplexityResult Perplexity(const NGramModel &model, const TextCorpus &text);

// Per-event probabilities (not logs) of `text` under `model`, in the order
// Perplexity visits them. OOV events are scored as `<unk>`.
std::vector<double> EventProbabilities(const NGramModel &model,
                                       const TextCorpus &text);

}  // namespace mgd

#endif  // MGD_LM_PERPLEXITY_H_
