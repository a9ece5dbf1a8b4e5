// rmepsilon.h
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

#ifndef MGD_FST_RMEPSILON_H_
#define MGD_FST_RMEPSILON_H_

#include <deque>
#include <map>
#include <utility>
#include <vector>

#include "mgd/fst/fst.h"
#include "mgd/fst/shortest_distance.h"

namespace mgd {

// Removes arcs whose input and output labels are both epsilon. Each kept
// state q receives, for every state p in its epsilon closure at distance
// d(q, p), copies of p's non-epsilon arcs weighted by d(q, p), and the final
// weight Plus_p d(q, p) * final(p). Only the start state and targets of
// non-epsilon arcs are kept. Throws FstError if an epsilon cycle makes the
// closure diverge.
template <class W>
Fst<W> RmEpsilon(const Fst<W> &fst, double delta = 1e-12) {
  fst.Validate();
  Fst<W> out = EmptyLike(fst);
  const StateId n = fst.NumStates();
  if (n == 0) return out;
  auto is_eps = [](const Arc<W> &arc) {
    return arc.ilabel == kEpsilon && arc.olabel == kEpsilon;
  };

  // Epsilon-only adjacency, shared by all closure computations.
  std::vector<std::vector<internal::Edge<W>>> eps_edges(n);
  for (StateId s = 0; s < n; ++s)
    for (const auto &arc : fst.Arcs(s))
      if (is_eps(arc)) eps_edges[s].push_back({arc.nextstate, arc.weight});

  std::vector<StateId> remap(n, kNoStateId);
  std::deque<StateId> queue;
  auto visit = [&](StateId s) {
    if (remap[s] == kNoStateId) {
      remap[s] = out.AddState();
      queue.push_back(s);
    }
    return remap[s];
  };
  out.SetStart(visit(fst.Start()));

  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    // Closure restricted to the states reachable from q by epsilons.
    std::map<StateId, StateId> local;  // original -> local index
    std::vector<StateId> members{q};
    local.emplace(q, 0);
    for (size_t i = 0; i < members.size(); ++i)
      for (const auto &e : eps_edges[members[i]])
        if (local.emplace(e.to, static_cast<StateId>(members.size())).second)
          members.push_back(e.to);
    std::vector<W> dist;
    if (members.size() == 1) {
      dist.assign(1, W::One());
    } else {
      std::vector<std::vector<internal::Edge<W>>> sub(members.size());
      for (size_t i = 0; i < members.size(); ++i)
        for (const auto &e : eps_edges[members[i]])
          sub[i].push_back({local.at(e.to), e.weight});
      dist = internal::GenericShortestDistance<W>(sub, {{0, W::One()}}, delta);
    }
    // Closure members in increasing state order (std::map iteration).
    W final_weight = W::Zero();
    const StateId nq = remap[q];
    for (const auto &[p, idx] : local) {
      const W d = dist[idx];
      if (d == W::Zero()) continue;
      if (fst.IsFinal(p)) final_weight = Plus(final_weight, Times(d, fst.Final(p)));
      for (const auto &arc : fst.Arcs(p)) {
        if (is_eps(arc)) continue;
        const StateId next = visit(arc.nextstate);
        out.AddArc(nq, arc.ilabel, arc.olabel, Times(d, arc.weight), next);
      }
    }
    out.SetFinal(nq, final_weight);
  }
  return Connect(out);
}

}  // namespace mgd

#endif  // MGD_FST_RMEPSILON_H_
