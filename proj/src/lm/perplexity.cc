// perplexity.cc
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

#include "mgd/lm/perplexity.h"

#include <cmath>

#include "mgd/base/error.h"

namespace mgd {

PerplexityResult Perplexity(const NGramModel &model, const TextCorpus &text) {
  if (text.Empty()) throw LmError("perplexity of an empty text");
  PerplexityResult result;
  for (const auto &sentence : text.sentences) {
    NGram history{model.BosId()};
    for (const auto &word : sentence) {
      WordId id = model.Id(word);
      if (id < 0) {
        ++result.oovs;
        id = model.UnkId();
      }
      if (id >= 0) {
        result.logprob += model.LogProb(id, history);
        ++result.tokens;
      }
      history.push_back(id);
    }
    result.logprob += model.LogProb(model.EosId(), history);
    ++result.tokens;
  }
  result.perplexity = std::pow(10.0, -result.logprob / result.tokens);
  return result;
}

std::vector<double> EventProbabilities(const NGramModel &model,
                                       const TextCorpus &text) {
  std::vector<double> probs;
  for (const auto &sentence : text.sentences) {
    NGram history{model.BosId()};
    for (const auto &word : sentence) {
      const WordId id = model.IdOrUnk(word);
      probs.push_back(std::pow(10.0, model.LogProb(id, history)));
      history.push_back(id);
    }
    probs.push_back(std::pow(10.0, model.LogProb(model.EosId(), history)));
  }
  return probs;
}

}  // namespace mgd
