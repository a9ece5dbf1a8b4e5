// union.h
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

#ifndef MGD_FST_UNION_H_
#define MGD_FST_UNION_H_

#include "mgd/fst/fst.h"

namespace mgd {

// Weighted union. A fresh start state (id 0) gets an epsilon arc of weight
// One to each non-empty operand's start; the operands' states follow in
// order, `a` first.
template <class W>
Fst<W> Union(const Fst<W> &a, const Fst<W> &b) {
  a.Validate();
  b.Validate();
  Fst<W> out;
  out.SetInputSymbols(MergeSymbolTables(a.InputSymbols(), b.InputSymbols()));
  out.SetOutputSymbols(
      MergeSymbolTables(a.OutputSymbols(), b.OutputSymbols()));
  if (a.NumStates() == 0 && b.NumStates() == 0) return out;
  const StateId start = out.AddState();
  out.SetStart(start);
  for (const Fst<W> *operand : {&a, &b}) {
    if (operand->NumStates() == 0) continue;
    const StateId offset = AppendStates(*operand, &out);
    out.AddArc(start, kEpsilon, kEpsilon, W::One(), offset + operand->Start());
  }
  return out;
}

}  // namespace mgd

#endif  // MGD_FST_UNION_H_
