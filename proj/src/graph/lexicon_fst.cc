// lexicon_fst.cc
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

#include "mgd/graph/lexicon_fst.h"

#include <cmath>
#include <map>
#include <set>

#include "mgd/base/error.h"

namespace mgd {
namespace {

using UnitSeq = std::vector<std::string>;

// Disambiguation symbol index for every (word, pronunciation), 0 for none.
std::vector<int> AssignDisambiguation(
    const std::vector<std::pair<std::string, const Pronunciation *>> &prons,
    int *max_disambig) {
  std::map<UnitSeq, int> occurrences;
  std::set<UnitSeq> proper_prefixes;
  for (const auto &[word, p] : prons) {
    ++occurrences[p->units];
    for (size_t n = 1; n < p->units.size(); ++n)
      proper_prefixes.emplace(p->units.begin(), p->units.begin() + n);
  }
  std::map<UnitSeq, int> last_used;
  std::vector<int> out;
  *max_disambig = 0;
  for (const auto &[word, p] : prons) {
    if (occurrences[p->units] > 1 || proper_prefixes.count(p->units)) {
      const int k = ++last_used[p->units];
      *max_disambig = std::max(*max_disambig, k);
      out.push_back(k);
    } else {
      out.push_back(0);
    }
  }
  return out;
}

}  // namespace

LexiconFst CompileLexiconFst(const Lexicon &lex, const LexiconFstOptions &opts) {
  if (opts.optional_silence) {
    if (!lex.HasUnit(opts.silence_unit))
      throw FormatError("silence unit '" + opts.silence_unit +
                        "' is not in the inventory");
    if (!(opts.silence_prob > 0.0 && opts.silence_prob < 1.0))
      throw FormatError("silence probability must be in (0, 1)");
  }
  std::vector<std::pair<std::string, const Pronunciation *>> prons;
  for (const auto &[word, list] : lex.Entries())
    for (const auto &p : list) prons.emplace_back(word, &p);

  LexiconFst result;
  const std::vector<int> disambig =
      AssignDisambiguation(prons, &result.max_disambig);

  auto units = std::make_shared<SymbolTable>(*lex.UnitSymbols());
  for (int k = 0; k <= result.max_disambig; ++k)
    units->AddSymbol("#" + std::to_string(k));
  const SymbolTablePtr words = lex.WordSymbols();
  const Label backoff = units->Find(std::string(kBackoffSymbol));

  StdFst &fst = result.fst;
  // Without silence one state is start, loop and final state at once.
  const StateId start = fst.AddState();
  StateId loop = start, sil_state = kNoStateId;
  TropicalWeight end_no_sil = TropicalWeight::One(), end_sil = TropicalWeight::Zero();
  if (opts.optional_silence) {
    loop = fst.AddState();
    sil_state = fst.AddState();
    end_no_sil = TropicalWeight(-std::log(1.0 - opts.silence_prob));
    end_sil = TropicalWeight(-std::log(opts.silence_prob));
    fst.AddArc(start, kEpsilon, kEpsilon, end_no_sil, loop);
    fst.AddArc(start, kEpsilon, kEpsilon, end_sil, sil_state);
    fst.AddArc(sil_state, units->Find(opts.silence_unit), kEpsilon,
               TropicalWeight::One(), loop);
  }
  fst.SetStart(start);
  fst.SetFinal(loop, TropicalWeight::One());

  for (size_t i = 0; i < prons.size(); ++i) {
    const auto &[word, p] = prons[i];
    std::vector<Label> labels;
    for (const auto &u : p->units) labels.push_back(units->Find(u));
    if (disambig[i] > 0)
      labels.push_back(units->Find("#" + std::to_string(disambig[i])));
    const Label word_label = words->Find(word);
    StateId s = loop;
    TropicalWeight weight(-std::log(p->prob));
    for (size_t j = 0; j + 1 < labels.size(); ++j) {
      const StateId next = fst.AddState();
      fst.AddArc(s, labels[j], kEpsilon, weight, next);
      weight = TropicalWeight::One();
      s = next;
    }
    fst.AddArc(s, labels.back(), word_label, Times(weight, end_no_sil), loop);
    if (opts.optional_silence)
      fst.AddArc(s, labels.back(), word_label, Times(weight, end_sil), sil_state);
  }
  fst.AddArc(loop, backoff, words->Find(std::string(kBackoffSymbol)),
             TropicalWeight::One(), loop);
  fst.SetInputSymbols(units);
  fst.SetOutputSymbols(words);
  return result;
}

}  // namespace mgd
