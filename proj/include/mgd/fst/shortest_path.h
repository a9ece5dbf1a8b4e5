// shortest_path.h
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

#ifndef MGD_FST_SHORTEST_PATH_H_
#define MGD_FST_SHORTEST_PATH_H_

#include <queue>
#include <type_traits>
#include <vector>

#include "mgd/fst/fst.h"
#include "mgd/fst/path.h"
#include "mgd/fst/shortest_distance.h"

namespace mgd {

// The n best complete paths of a tropical Fst in ascending weight. Equal
// weights are ordered lexicographically by the visited sequence of
// (state, ilabel, olabel), with a path that stops before another sorting
// first. A* search with exact to-final distances as the heuristic; throws
// FstError on negative cycles.
inline std::vector<Path<TropicalWeight>> ShortestPaths(const StdFst &fst,
                                                       size_t n) {
  fst.Validate();
  std::vector<Path<TropicalWeight>> result;
  if (n == 0 || fst.Start() == kNoStateId) return result;
  const std::vector<TropicalWeight> to_final = ShortestDistanceToFinal(fst);
  if (to_final[fst.Start()] == TropicalWeight::Zero()) return result;

  struct Node {
    double priority;       // cost so far + remaining distance
    double cost;           // cost so far
    std::vector<int64_t> key;  // start, then (next, ilabel, olabel) per arc
    bool complete;
  };
  struct Worse {
    bool operator()(const Node &a, const Node &b) const {
      if (a.priority != b.priority) return a.priority > b.priority;
      return a.key > b.key;
    }
  };
  std::priority_queue<Node, std::vector<Node>, Worse> heap;
  heap.push({to_final[fst.Start()].Value(), 0.0, {fst.Start()}, false});
  while (!heap.empty() && result.size() < n) {
    Node node = heap.top();
    heap.pop();
    if (node.complete) {
      Path<TropicalWeight> path;
      path.weight = TropicalWeight(node.cost);
      path.states.push_back(static_cast<StateId>(node.key[0]));
      // Last element is the end marker.
      for (size_t i = 1; i + 3 <= node.key.size() - 1; i += 3) {
        path.states.push_back(static_cast<StateId>(node.key[i]));
        path.ilabels.push_back(static_cast<Label>(node.key[i + 1]));
        path.olabels.push_back(static_cast<Label>(node.key[i + 2]));
      }
      result.push_back(std::move(path));
      continue;
    }
    const StateId s = static_cast<StateId>(
        node.key.size() == 1 ? node.key[0] : node.key[node.key.size() - 3]);
    if (fst.IsFinal(s)) {
      Node done = node;
      done.cost = node.cost + fst.Final(s).Value();
      done.priority = done.cost;
      done.key.push_back(-1);  // sorts before any extension
      done.complete = true;
      heap.push(std::move(done));
    }
    for (const auto &arc : fst.Arcs(s)) {
      const double rest = to_final[arc.nextstate].Value();
      if (rest == kInfinity) continue;
      Node next;
      next.cost = node.cost + arc.weight.Value();
      next.priority = next.cost + rest;
      next.key = node.key;
      next.key.push_back(arc.nextstate);
      next.key.push_back(arc.ilabel);
      next.key.push_back(arc.olabel);
      next.complete = false;
      heap.push(std::move(next));
    }
  }
  return result;
}

}  // namespace mgd

#endif  // MGD_FST_SHORTEST_PATH_H_
