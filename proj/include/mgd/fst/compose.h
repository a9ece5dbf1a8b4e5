// compose.h
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

#ifndef MGD_FST_COMPOSE_H_
#define MGD_FST_COMPOSE_H_

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>
#include <vector>

#include "mgd/fst/fst.h"

namespace mgd {

// Weighted composition with the three-state epsilon filter:
//   state 0: matched a label (or started);
//   state 1: `a` is consuming output epsilons alone;
//   state 2: `b` is consuming input epsilons alone.
// Simultaneous epsilon moves are only taken from state 0, so every pair of
// operand paths yields exactly one composed path. The result is trimmed.
template <class W>
Fst<W> Compose(const Fst<W> &a, const Fst<W> &b) {
  a.Validate();
  b.Validate();
  if (!CompatibleSymbols(a.OutputSymbols().get(), b.InputSymbols().get()))
    throw SymbolTableError(
        "compose: output symbols of the left operand do not match the input "
        "symbols of the right operand");
  Fst<W> out;
  out.SetInputSymbols(a.InputSymbols());
  out.SetOutputSymbols(b.OutputSymbols());
  if (a.Start() == kNoStateId || b.Start() == kNoStateId) return out;

  // Right-hand arcs sorted by input label for range lookup.
  std::vector<std::vector<Arc<W>>> sorted(b.NumStates());
  for (StateId s = 0; s < b.NumStates(); ++s) {
    sorted[s] = b.Arcs(s);
    std::stable_sort(sorted[s].begin(), sorted[s].end(),
                     [](const Arc<W> &x, const Arc<W> &y) {
                       return x.ilabel < y.ilabel;
                     });
  }
  auto matches = [&](StateId s, Label label) {
    const auto &arcs = sorted[s];
    auto lo = std::lower_bound(
        arcs.begin(), arcs.end(), label,
        [](const Arc<W> &arc, Label l) { return arc.ilabel < l; });
    auto hi = std::upper_bound(
        lo, arcs.end(), label,
        [](Label l, const Arc<W> &arc) { return l < arc.ilabel; });
    return std::make_pair(lo, hi);
  };

  using Tuple = std::tuple<StateId, StateId, int>;
  std::map<Tuple, StateId> ids;
  std::deque<Tuple> queue;
  auto find_or_add = [&](StateId qa, StateId qb, int filter) {
    const Tuple key{qa, qb, filter};
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const StateId s = out.AddState();
    ids.emplace(key, s);
    queue.push_back(key);
    return s;
  };
  out.SetStart(find_or_add(a.Start(), b.Start(), 0));
  while (!queue.empty()) {
    const auto [qa, qb, filter] = queue.front();
    queue.pop_front();
    const StateId s = ids.at({qa, qb, filter});
    if (a.IsFinal(qa) && b.IsFinal(qb))
      out.SetFinal(s, Times(a.Final(qa), b.Final(qb)));
    for (const auto &ea : a.Arcs(qa)) {
      if (ea.olabel == kEpsilon) {
        if (filter != 2) {
          const StateId next = find_or_add(ea.nextstate, qb, 1);
          out.AddArc(s, ea.ilabel, kEpsilon, ea.weight, next);
        }
        if (filter == 0) {
          auto [lo, hi] = matches(qb, kEpsilon);
          for (auto it = lo; it != hi; ++it) {
            const StateId next = find_or_add(ea.nextstate, it->nextstate, 0);
            out.AddArc(s, ea.ilabel, it->olabel, Times(ea.weight, it->weight),
                       next);
          }
        }
        continue;
      }
      auto [lo, hi] = matches(qb, ea.olabel);
      for (auto it = lo; it != hi; ++it) {
        const StateId next = find_or_add(ea.nextstate, it->nextstate, 0);
        out.AddArc(s, ea.ilabel, it->olabel, Times(ea.weight, it->weight),
                   next);
      }
    }
    if (filter != 1) {
      auto [lo, hi] = matches(qb, kEpsilon);
      for (auto it = lo; it != hi; ++it) {
        const StateId next = find_or_add(qa, it->nextstate, 2);
        out.AddArc(s, kEpsilon, it->olabel, it->weight, next);
      }
    }
  }
  return Connect(out);
}

}  // namespace mgd

#endif  // MGD_FST_COMPOSE_H_
