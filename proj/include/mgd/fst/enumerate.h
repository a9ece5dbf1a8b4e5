// enumerate.h
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

#ifndef MGD_FST_ENUMERATE_H_
#define MGD_FST_ENUMERATE_H_

#include <vector>

#include "mgd/fst/fst.h"
#include "mgd/fst/path.h"

namespace mgd {

// Every complete path with at most `max_len` arcs, found by plain depth-first
// expansion. Deliberately naive: this is the reference the other algorithms
// are tested against, so it shares no code with them.
template <class W>
std::vector<Path<W>> EnumeratePaths(const Fst<W> &fst, size_t max_len) {
  std::vector<Path<W>> paths;
  if (fst.NumStates() == 0 || fst.Start() == kNoStateId) return paths;
  Path<W> current;
  current.states.push_back(fst.Start());
  current.weight = W::One();

  struct Recurse {
    const Fst<W> &fst;
    size_t max_len;
    std::vector<Path<W>> &paths;
    void operator()(Path<W> &current) const {
      const StateId s = current.states.back();
      if (fst.IsFinal(s)) {
        Path<W> done = current;
        done.weight = Times(current.weight, fst.Final(s));
        paths.push_back(std::move(done));
      }
      if (current.ilabels.size() >= max_len) return;
      for (const auto &arc : fst.Arcs(s)) {
        const W saved = current.weight;
        current.states.push_back(arc.nextstate);
        current.ilabels.push_back(arc.ilabel);
        current.olabels.push_back(arc.olabel);
        current.weight = Times(saved, arc.weight);
        (*this)(current);
        current.states.pop_back();
        current.ilabels.pop_back();
        current.olabels.pop_back();
        current.weight = saved;
      }
    }
  };
  Recurse{fst, max_len, paths}(current);
  return paths;
}

}  // namespace mgd

#endif  // MGD_FST_ENUMERATE_H_
