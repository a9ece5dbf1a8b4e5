// minimize.h
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

#ifndef MGD_FST_MINIMIZE_H_
#define MGD_FST_MINIMIZE_H_

#include <map>
#include <tuple>
#include <vector>

#include "mgd/fst/fst.h"
#include "mgd/fst/shortest_distance.h"

namespace mgd {

struct MinimizeOptions {
  // Pushed weights are quantized with this step when states are compared.
  double delta = kQuantizeDelta;
};

namespace internal {

// Minimizes a deterministic acceptor. Weights are first pushed towards the
// start state using potentials d(q) / d(start), where d is the distance to
// the final weights, so the start potential is One and no residual weight
// has to be reinserted. States are then merged by partition refinement on
// (label, pushed weight, successor class) signatures.
template <class W>
Fst<W> MinimizeAcceptor(const Fst<W> &input, const MinimizeOptions &opts) {
  const Fst<W> fst = Connect(input);
  Fst<W> out;
  const StateId n = fst.NumStates();
  if (n == 0) return out;
  if (!IsDeterministic(fst))
    throw FstError("minimize: input is not deterministic");

  const std::vector<W> to_final = ShortestDistanceToFinal(fst);
  const W start_potential = to_final[fst.Start()];
  std::vector<W> potential(n);
  for (StateId s = 0; s < n; ++s)
    potential[s] = Divide(to_final[s], start_potential);

  struct PushedArc {
    Label label;
    W weight;
    StateId next;
  };
  std::vector<std::vector<PushedArc>> arcs(n);
  std::vector<W> finals(n);
  for (StateId s = 0; s < n; ++s) {
    finals[s] = fst.IsFinal(s) ? Divide(fst.Final(s), potential[s]) : W::Zero();
    for (const auto &arc : fst.Arcs(s))
      arcs[s].push_back(
          {arc.ilabel,
           Divide(Times(arc.weight, potential[arc.nextstate]), potential[s]),
           arc.nextstate});
    std::sort(arcs[s].begin(), arcs[s].end(),
              [](const PushedArc &x, const PushedArc &y) {
                return x.label < y.label;
              });
  }

  // Initial partition by pushed final weight.
  std::vector<StateId> cls(n);
  {
    std::map<double, StateId> by_final;
    for (StateId s = 0; s < n; ++s) {
      const double key = finals[s].Quantize(opts.delta).Value();
      cls[s] = by_final.emplace(key, static_cast<StateId>(by_final.size()))
                   .first->second;
    }
  }
  using Signature =
      std::pair<StateId, std::vector<std::tuple<Label, double, StateId>>>;
  size_t num_classes = 0;
  for (;;) {
    std::map<Signature, StateId> ids;
    std::vector<StateId> next_cls(n);
    for (StateId s = 0; s < n; ++s) {
      Signature sig;
      sig.first = cls[s];
      for (const auto &a : arcs[s])
        sig.second.emplace_back(a.label, a.weight.Quantize(opts.delta).Value(),
                                cls[a.next]);
      next_cls[s] = ids.emplace(std::move(sig), static_cast<StateId>(ids.size()))
                        .first->second;
    }
    cls.swap(next_cls);
    if (ids.size() == num_classes) break;
    num_classes = ids.size();
  }

  // Class ids are assigned in order of their smallest member, so the first
  // member seen is the representative.
  std::vector<StateId> representative(num_classes, kNoStateId);
  for (StateId s = 0; s < n; ++s)
    if (representative[cls[s]] == kNoStateId) representative[cls[s]] = s;
  out.AddStates(static_cast<StateId>(num_classes));
  for (StateId c = 0; c < static_cast<StateId>(num_classes); ++c) {
    const StateId s = representative[c];
    out.SetFinal(c, finals[s]);
    for (const auto &a : arcs[s]) out.AddArc(c, a.label, a.label, a.weight, cls[a.next]);
  }
  out.SetStart(cls[fst.Start()]);
  return out;
}

}  // namespace internal

// Minimizes a deterministic automaton; transducers are minimized over
// encoded (ilabel, olabel) pairs. The weighted language is preserved.
// Throws FstError on nondeterministic input.
template <class W>
Fst<W> Minimize(const Fst<W> &fst, const MinimizeOptions &opts = {}) {
  fst.Validate();
  if (fst.IsAcceptor()) {
    Fst<W> out = internal::MinimizeAcceptor(fst, opts);
    out.SetInputSymbols(fst.InputSymbols());
    out.SetOutputSymbols(fst.OutputSymbols());
    return out;
  }
  LabelEncoder encoder;
  const Fst<W> encoded = EncodeLabels(fst, &encoder);
  return DecodeLabels(internal::MinimizeAcceptor(encoded, opts), encoder,
                      fst.InputSymbols(), fst.OutputSymbols());
}

}  // namespace mgd

#endif  // MGD_FST_MINIMIZE_H_
