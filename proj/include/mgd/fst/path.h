// path.h
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

#ifndef MGD_FST_PATH_H_
#define MGD_FST_PATH_H_

#include <map>
#include <utility>
#include <vector>

#include "mgd/fst/fst.h"

namespace mgd {

// One complete path: visited states (start first) and the labels of the
// traversed arcs, epsilons included. `weight` includes the final weight.
template <class W>
struct Path {
  std::vector<StateId> states;
  std::vector<Label> ilabels;
  std::vector<Label> olabels;
  W weight = W::One();
};

using LabelString = std::vector<Label>;
using StringPair = std::pair<LabelString, LabelString>;

template <class W>
using WeightedLanguage = std::map<StringPair, W>;

inline LabelString StripEpsilons(const LabelString &labels) {
  LabelString out;
  for (Label l : labels)
    if (l != kEpsilon) out.push_back(l);
  return out;
}

// Collapses paths into a (input string, output string) -> weight map, with
// epsilons removed and the weights of equal string pairs combined by Plus.
template <class W>
WeightedLanguage<W> LanguageOf(const std::vector<Path<W>> &paths) {
  WeightedLanguage<W> language;
  for (const auto &path : paths) {
    StringPair key{StripEpsilons(path.ilabels), StripEpsilons(path.olabels)};
    auto [it, inserted] = language.emplace(std::move(key), path.weight);
    if (!inserted) it->second = Plus(it->second, path.weight);
  }
  return language;
}

}  // namespace mgd

#endif  // MGD_FST_PATH_H_
