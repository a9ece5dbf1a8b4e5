// grammar_fst.cc
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

#include "mgd/lm/grammar_fst.h"

#include <map>

#include "mgd/base/error.h"

namespace mgd {

StdFst LmToGrammarFst(const NGramModel &model, const GrammarFstOptions &opts) {
  model.CheckNormalization(opts.normalization_tolerance);
  const std::string backoff_symbol(kBackoffSymbol);
  auto table = opts.words != nullptr ? std::make_shared<SymbolTable>(*opts.words)
                                     : std::make_shared<SymbolTable>();
  std::vector<Label> labels(model.VocabularySize(), kNoLabel);
  for (WordId w = 0; w < static_cast<WordId>(model.VocabularySize()); ++w) {
    if (w == model.BosId() || w == model.EosId()) continue;
    labels[w] = opts.words != nullptr ? table->Find(model.Word(w))
                                      : table->AddSymbol(model.Word(w));
  }
  const Label backoff_label = table->AddSymbol(backoff_symbol);

  StdFst fst;
  std::map<NGram, StateId> states;
  auto state_of = [&](const NGram &h) {
    auto [it, inserted] = states.emplace(h, kNoStateId);
    if (inserted) it->second = fst.AddState();
    return it->second;
  };
  // Destination of the event h·w: its longest suffix that is a history.
  auto destination = [&](const NGram &ngram) {
    NGram h = ngram;
    if (static_cast<int>(h.size()) >= model.Order()) h.erase(h.begin());
    while (!h.empty() && !model.IsHistory(h)) h.erase(h.begin());
    return state_of(h);
  };

  state_of({});
  for (int k = 1; k < model.Order(); ++k)
    for (const auto &[ngram, entry] : model.NGrams(k))
      if (model.IsHistory(ngram)) state_of(ngram);
  const NGram bos{model.BosId()};
  fst.SetStart(model.IsHistory(bos) && model.Order() > 1 ? state_of(bos)
                                                         : state_of({}));

  for (int k = 1; k <= model.Order(); ++k) {
    for (const auto &[ngram, entry] : model.NGrams(k)) {
      const NGram h(ngram.begin(), ngram.end() - 1);
      const auto it = states.find(h);
      if (it == states.end()) continue;  // context that is never reached
      const WordId w = ngram.back();
      const TropicalWeight weight(Log10ToCost(entry.logprob));
      if (w == model.EosId()) {
        fst.SetFinal(it->second, weight);
      } else if (labels[w] != kNoLabel && entry.logprob > kLog10Zero) {
        fst.AddArc(it->second, labels[w], labels[w], weight, destination(ngram));
      }
    }
  }
  for (const auto &[h, s] : states) {
    if (h.empty()) continue;
    const NGramModel::Entry *e = model.Find(h);
    const double backoff = e != nullptr ? e->backoff : 0.0;
    NGram shorter(h.begin() + 1, h.end());
    while (!shorter.empty() && !model.IsHistory(shorter))
      shorter.erase(shorter.begin());
    fst.AddArc(s, backoff_label, kEpsilon, TropicalWeight(Log10ToCost(backoff)),
               state_of(shorter));
  }
  fst.SetInputSymbols(table);
  fst.SetOutputSymbols(table);
  return fst;
}

}  // namespace mgd
