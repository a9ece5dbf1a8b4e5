// grammar_fst.h
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

#ifndef MGD_LM_GRAMMAR_FST_H_
#define MGD_LM_GRAMMAR_FST_H_

#include "mgd/fst/fst.h"
#include "mgd/lm/ngram_model.h"

namespace mgd {

struct GrammarFstOptions {
  // Output/input word table. Words of the model missing from it are left
  // out of G; `#0` is added if absent. Null builds a table from the model.
  SymbolTablePtr words;
  // Tolerance of the normalization check run before conversion; ARPA files
  // carry only 7 significant digits.
  double normalization_tolerance = 1e-4;
};

// The grammar transducer G: one state per history, word arcs with weight
// -ln p(w | h), `#0`:<eps> backoff arcs with weight -ln bow(h), and final
// weights -ln p(</s> | h). The start state is the <s> history (the empty
// history for a unigram model). Throws LmError for unnormalized models.
StdFst LmToGrammarFst(const NGramModel &model,
                      const GrammarFstOptions &opts = {});

}  // namespace mgd

#endif  // MGD_LM_GRAMMAR_FST_H_
