// shortest_distance.h
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

#ifndef MGD_FST_SHORTEST_DISTANCE_H_
#define MGD_FST_SHORTEST_DISTANCE_H_

#include <deque>
#include <utility>
#include <vector>

#include "mgd/fst/fst.h"

namespace mgd {

namespace internal {

template <class W>
struct Edge {
  StateId to;
  W weight;
};

template <class W>
bool WeightChanged(W before, W after, double delta) {
  if constexpr (W::kIdempotent) {
    return before != after;
  } else {
    return !ApproxEqual(before, after, delta);
  }
}

// Generic single-queue shortest distance over an explicit edge list. Throws
// FstError when the relaxation budget runs out, which happens for negative
// tropical cycles or divergent log cycles.
template <class W>
std::vector<W> GenericShortestDistance(
    const std::vector<std::vector<Edge<W>>> &edges,
    const std::vector<std::pair<StateId, W>> &sources, double delta) {
  const size_t n = edges.size();
  std::vector<W> dist(n, W::Zero()), residual(n, W::Zero());
  std::vector<char> queued(n, 0);
  std::deque<StateId> queue;
  size_t num_edges = 0;
  for (const auto &e : edges) num_edges += e.size();
  const size_t budget = 64 * (n + num_edges) * (W::kIdempotent ? 1 : 16) +
                        (n < 2048 ? n * (num_edges + 1) : 0) + 100000;
  size_t relaxations = 0;
  for (const auto &[s, w] : sources) {
    dist[s] = Plus(dist[s], w);
    residual[s] = Plus(residual[s], w);
    if (!queued[s]) {
      queued[s] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    queued[q] = 0;
    const W r = residual[q];
    residual[q] = W::Zero();
    if (r == W::Zero()) continue;
    for (const auto &e : edges[q]) {
      const W through = Times(r, e.weight);
      const W updated = Plus(dist[e.to], through);
      if (!WeightChanged(dist[e.to], updated, delta)) continue;
      if (++relaxations > budget)
        throw FstError(
            "shortest distance does not converge (negative or divergent "
            "cycle)");
      dist[e.to] = updated;
      residual[e.to] = Plus(residual[e.to], through);
      if (!queued[e.to]) {
        queued[e.to] = 1;
        queue.push_back(e.to);
      }
    }
  }
  return dist;
}

}  // namespace internal

// Shortest distance from the start state to every state.
template <class W>
std::vector<W> ShortestDistanceFromStart(const Fst<W> &fst,
                                         double delta = 1e-12) {
  std::vector<std::vector<internal::Edge<W>>> edges(fst.NumStates());
  for (StateId s = 0; s < fst.NumStates(); ++s)
    for (const auto &arc : fst.Arcs(s))
      edges[s].push_back({arc.nextstate, arc.weight});
  if (fst.Start() == kNoStateId) return {};
  return internal::GenericShortestDistance<W>(edges, {{fst.Start(), W::One()}},
                                              delta);
}

// Shortest distance from every state to the final weights, i.e. the total
// weight of the suffix language of each state.
template <class W>
std::vector<W> ShortestDistanceToFinal(const Fst<W> &fst,
                                       double delta = 1e-12) {
  std::vector<std::vector<internal::Edge<W>>> reversed(fst.NumStates());
  std::vector<std::pair<StateId, W>> sources;
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (fst.IsFinal(s)) sources.emplace_back(s, fst.Final(s));
    for (const auto &arc : fst.Arcs(s))
      reversed[arc.nextstate].push_back({s, arc.weight});
  }
  return internal::GenericShortestDistance<W>(reversed, sources, delta);
}

}  // namespace mgd

#endif  // MGD_FST_SHORTEST_DISTANCE_H_
