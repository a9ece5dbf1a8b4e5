// determinize.h
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

#ifndef MGD_FST_DETERMINIZE_H_
#define MGD_FST_DETERMINIZE_H_

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mgd/fst/fst.h"

namespace mgd {

struct DeterminizeOptions {
  // Subset states allowed per input state before giving up.
  size_t state_cap_factor = 100;
  // Residual weights are quantized with this step when subsets are compared.
  double delta = kQuantizeDelta;
};

namespace internal {

// Weighted subset construction on an epsilon-free acceptor.
template <class W>
Fst<W> DeterminizeAcceptor(const Fst<W> &fst, const DeterminizeOptions &opts) {
  Fst<W> out;
  if (fst.Start() == kNoStateId) return out;
  for (StateId s = 0; s < fst.NumStates(); ++s)
    for (const auto &arc : fst.Arcs(s))
      if (arc.ilabel == kEpsilon)
        throw FstError("determinize: input has epsilon arcs; remove them first");

  using Element = std::pair<StateId, W>;  // (state, residual weight)
  using Subset = std::vector<Element>;
  using Key = std::vector<std::pair<StateId, double>>;
  auto key_of = [&](const Subset &subset) {
    Key key;
    key.reserve(subset.size());
    for (const auto &[s, w] : subset)
      key.emplace_back(s, w.Quantize(opts.delta).Value());
    return key;
  };

  const size_t cap =
      opts.state_cap_factor * std::max<size_t>(1, fst.NumStates());
  std::map<Key, StateId> ids;
  std::vector<Subset> subsets;
  auto find_or_add = [&](Subset subset) {
    Key key = key_of(subset);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    if (subsets.size() >= cap)
      throw DeterminizeError(
          "determinize: subset state cap of " + std::to_string(cap) +
          " exceeded; input is possibly non-determinizable");
    const StateId s = out.AddState();
    ids.emplace(std::move(key), s);
    subsets.push_back(std::move(subset));
    return s;
  };
  out.SetStart(find_or_add({{fst.Start(), W::One()}}));

  for (StateId cur = 0; cur < static_cast<StateId>(subsets.size()); ++cur) {
    const Subset subset = subsets[cur];
    W final_weight = W::Zero();
    // label -> (nextstate -> accumulated weight), both ordered.
    std::map<Label, std::map<StateId, W>> moves;
    for (const auto &[s, residual] : subset) {
      if (fst.IsFinal(s))
        final_weight = Plus(final_weight, Times(residual, fst.Final(s)));
      for (const auto &arc : fst.Arcs(s)) {
        auto &slot = moves[arc.ilabel]
                         .emplace(arc.nextstate, W::Zero())
                         .first->second;
        slot = Plus(slot, Times(residual, arc.weight));
      }
    }
    out.SetFinal(cur, final_weight);
    for (const auto &[label, targets] : moves) {
      W total = W::Zero();
      for (const auto &[next, w] : targets) total = Plus(total, w);
      Subset next_subset;
      next_subset.reserve(targets.size());
      for (const auto &[next, w] : targets)
        next_subset.emplace_back(next, Divide(w, total));
      const StateId dest = find_or_add(std::move(next_subset));
      out.AddArc(cur, label, label, total, dest);
    }
  }
  return out;
}

}  // namespace internal

// Weighted determinization. Transducers are determinized as acceptors over
// encoded (ilabel, olabel) pairs and decoded afterwards. The input must not
// contain arcs whose (encoded) label is epsilon. Throws DeterminizeError when
// more than state_cap_factor * NumStates() subsets are generated.
template <class W>
Fst<W> Determinize(const Fst<W> &fst, const DeterminizeOptions &opts = {}) {
  fst.Validate();
  if (fst.IsAcceptor()) {
    Fst<W> out = internal::DeterminizeAcceptor(fst, opts);
    out.SetInputSymbols(fst.InputSymbols());
    out.SetOutputSymbols(fst.OutputSymbols());
    return out;
  }
  LabelEncoder encoder;
  const Fst<W> encoded = EncodeLabels(fst, &encoder);
  return DecodeLabels(internal::DeterminizeAcceptor(encoded, opts), encoder,
                      fst.InputSymbols(), fst.OutputSymbols());
}

}  // namespace mgd

#endif  // MGD_FST_DETERMINIZE_H_
