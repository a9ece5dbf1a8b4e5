// fst.h
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

#ifndef MGD_FST_FST_H_
#define MGD_FST_FST_H_

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mgd/base/error.h"
#include "mgd/fst/symbol_table.h"
#include "mgd/fst/weight.h"

namespace mgd {

template <class W>
struct Arc {
  using Weight = W;

  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  W weight = W::One();
  StateId nextstate = kNoStateId;

  Arc() = default;
  Arc(Label i, Label o, W w, StateId n)
      : ilabel(i), olabel(o), weight(w), nextstate(n) {}
};

// Mutable vector-backed weighted transducer. The algorithms in this
// library never modify their inputs; they build and return new values.
template <class W>
class Fst {
 public:
  using Weight = W;
  using ArcType = Arc<W>;

  StateId AddState() {
    states_.emplace_back();
    return static_cast<StateId>(states_.size() - 1);
  }
  void AddStates(StateId n) { states_.resize(states_.size() + n); }
  void SetStart(StateId s) { start_ = s; }
  void SetFinal(StateId s, W w) { states_.at(s).final_weight = w; }
  void AddArc(StateId s, const ArcType &arc) {
    states_.at(s).arcs.push_back(arc);
  }
  void AddArc(StateId s, Label ilabel, Label olabel, W w, StateId next) {
    AddArc(s, ArcType(ilabel, olabel, w, next));
  }

  StateId Start() const { return start_; }
  StateId NumStates() const { return static_cast<StateId>(states_.size()); }
  W Final(StateId s) const { return states_[s].final_weight; }
  bool IsFinal(StateId s) const { return states_[s].final_weight != W::Zero(); }
  const std::vector<ArcType> &Arcs(StateId s) const { return states_[s].arcs; }
  std::vector<ArcType> &MutableArcs(StateId s) { return states_[s].arcs; }
  size_t NumArcs(StateId s) const { return states_[s].arcs.size(); }
  size_t NumArcs() const {
    size_t n = 0;
    for (const auto &st : states_) n += st.arcs.size();
    return n;
  }

  const SymbolTablePtr &InputSymbols() const { return isyms_; }
  const SymbolTablePtr &OutputSymbols() const { return osyms_; }
  void SetInputSymbols(SymbolTablePtr t) { isyms_ = std::move(t); }
  void SetOutputSymbols(SymbolTablePtr t) { osyms_ = std::move(t); }

  bool IsAcceptor() const {
    for (const auto &st : states_)
      for (const auto &arc : st.arcs)
        if (arc.ilabel != arc.olabel) return false;
    return true;
  }

  // Checks the structural invariants; throws FstError on the first violation.
  void Validate() const;

 private:
  struct State {
    std::vector<ArcType> arcs;
    W final_weight = W::Zero();
  };

  std::vector<State> states_;
  StateId start_ = kNoStateId;
  SymbolTablePtr isyms_;
  SymbolTablePtr osyms_;
};

using StdArc = Arc<TropicalWeight>;
using StdFst = Fst<TropicalWeight>;
using LogFst = Fst<LogWeight>;

template <class W>
void Fst<W>::Validate() const {
  const StateId n = NumStates();
  if (n == 0) {
    if (start_ != kNoStateId) throw FstError("start state set on empty Fst");
    return;
  }
  if (start_ < 0 || start_ >= n)
    throw FstError("Fst has states but no valid start state");
  for (StateId s = 0; s < n; ++s) {
    if (!states_[s].final_weight.Member())
      throw FstError("invalid final weight at state " + std::to_string(s));
    for (const auto &arc : states_[s].arcs) {
      if (arc.nextstate < 0 || arc.nextstate >= n)
        throw FstError("arc from state " + std::to_string(s) +
                       " points outside the state set");
      if (!arc.weight.Member())
        throw FstError("invalid arc weight at state " + std::to_string(s));
      if (arc.ilabel < 0 || arc.olabel < 0)
        throw FstError("negative label at state " + std::to_string(s));
      if (isyms_ && !isyms_->Member(arc.ilabel))
        throw FstError("input label " + std::to_string(arc.ilabel) +
                       " missing from the input symbol table");
      if (osyms_ && !osyms_->Member(arc.olabel))
        throw FstError("output label " + std::to_string(arc.olabel) +
                       " missing from the output symbol table");
    }
  }
}

template <class W>
Fst<W> EmptyLike(const Fst<W> &fst) {
  Fst<W> out;
  out.SetInputSymbols(fst.InputSymbols());
  out.SetOutputSymbols(fst.OutputSymbols());
  return out;
}

// Removes states that are not both accessible and coaccessible. Surviving
// states keep their relative order.
template <class W>
Fst<W> Connect(const Fst<W> &fst) {
  Fst<W> out = EmptyLike(fst);
  const StateId n = fst.NumStates();
  if (n == 0 || fst.Start() == kNoStateId) return out;
  std::vector<char> access(n, 0), coaccess(n, 0);
  std::vector<StateId> stack{fst.Start()};
  access[fst.Start()] = 1;
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (const auto &arc : fst.Arcs(s))
      if (!access[arc.nextstate]) {
        access[arc.nextstate] = 1;
        stack.push_back(arc.nextstate);
      }
  }
  std::vector<std::vector<StateId>> preds(n);
  for (StateId s = 0; s < n; ++s)
    for (const auto &arc : fst.Arcs(s)) preds[arc.nextstate].push_back(s);
  for (StateId s = 0; s < n; ++s)
    if (fst.IsFinal(s)) {
      coaccess[s] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (StateId p : preds[s])
      if (!coaccess[p]) {
        coaccess[p] = 1;
        stack.push_back(p);
      }
  }
  if (!coaccess[fst.Start()]) return out;
  std::vector<StateId> remap(n, kNoStateId);
  for (StateId s = 0; s < n; ++s)
    if (access[s] && coaccess[s]) remap[s] = out.AddState();
  for (StateId s = 0; s < n; ++s) {
    if (remap[s] == kNoStateId) continue;
    out.SetFinal(remap[s], fst.Final(s));
    for (const auto &arc : fst.Arcs(s)) {
      if (remap[arc.nextstate] == kNoStateId) continue;
      auto copy = arc;
      copy.nextstate = remap[arc.nextstate];
      out.AddArc(remap[s], copy);
    }
  }
  out.SetStart(remap[fst.Start()]);
  return out;
}

// Appends a copy of `src` to `dst`; returns the id offset of its states.
template <class W>
StateId AppendStates(const Fst<W> &src, Fst<W> *dst) {
  const StateId offset = dst->NumStates();
  dst->AddStates(src.NumStates());
  for (StateId s = 0; s < src.NumStates(); ++s) {
    dst->SetFinal(offset + s, src.Final(s));
    for (auto arc : src.Arcs(s)) {
      arc.nextstate += offset;
      dst->AddArc(offset + s, arc);
    }
  }
  return offset;
}

// Maps (ilabel, olabel) pairs onto single labels so that a transducer can be
// processed by acceptor algorithms. The pair (0, 0) always maps to 0.
class LabelEncoder {
 public:
  Label Encode(Label ilabel, Label olabel) {
    if (ilabel == kEpsilon && olabel == kEpsilon) return kEpsilon;
    auto [it, inserted] = codes_.emplace(std::make_pair(ilabel, olabel),
                                         static_cast<Label>(pairs_.size() + 1));
    if (inserted) pairs_.emplace_back(ilabel, olabel);
    return it->second;
  }
  std::pair<Label, Label> Decode(Label code) const {
    if (code == kEpsilon) return {kEpsilon, kEpsilon};
    if (code < 0 || static_cast<size_t>(code) > pairs_.size())
      throw FstError("unknown encoded label " + std::to_string(code));
    return pairs_[code - 1];
  }

 private:
  std::map<std::pair<Label, Label>, Label> codes_;
  std::vector<std::pair<Label, Label>> pairs_;
};

template <class W>
Fst<W> EncodeLabels(const Fst<W> &fst, LabelEncoder *encoder) {
  Fst<W> out;
  out.AddStates(fst.NumStates());
  out.SetStart(fst.Start());
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    out.SetFinal(s, fst.Final(s));
    for (const auto &arc : fst.Arcs(s)) {
      const Label code = encoder->Encode(arc.ilabel, arc.olabel);
      out.AddArc(s, code, code, arc.weight, arc.nextstate);
    }
  }
  return out;
}

template <class W>
Fst<W> DecodeLabels(const Fst<W> &fst, const LabelEncoder &encoder,
                    const SymbolTablePtr &isyms, const SymbolTablePtr &osyms) {
  Fst<W> out;
  out.AddStates(fst.NumStates());
  out.SetStart(fst.Start());
  out.SetInputSymbols(isyms);
  out.SetOutputSymbols(osyms);
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    out.SetFinal(s, fst.Final(s));
    for (const auto &arc : fst.Arcs(s)) {
      const auto [ilabel, olabel] = encoder.Decode(arc.ilabel);
      out.AddArc(s, ilabel, olabel, arc.weight, arc.nextstate);
    }
  }
  return out;
}

// True when no state has two arcs with the same input label and no arc has
// an epsilon input.
template <class W>
bool IsDeterministic(const Fst<W> &fst) {
  std::vector<Label> labels;
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    labels.clear();
    for (const auto &arc : fst.Arcs(s)) {
      if (arc.ilabel == kEpsilon) return false;
      labels.push_back(arc.ilabel);
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
      return false;
  }
  return true;
}

// Topological order of the states reachable through arcs accepted by
// `keep`. Returns false if those arcs contain a cycle.
template <class W, class ArcFilter>
bool TopologicalOrder(const Fst<W> &fst, ArcFilter keep,
                      std::vector<StateId> *order) {
  const StateId n = fst.NumStates();
  std::vector<int> indegree(n, 0);
  for (StateId s = 0; s < n; ++s)
    for (const auto &arc : fst.Arcs(s))
      if (keep(arc)) ++indegree[arc.nextstate];
  order->clear();
  order->reserve(n);
  std::vector<StateId> ready;
  for (StateId s = n - 1; s >= 0; --s)
    if (indegree[s] == 0) ready.push_back(s);
  while (!ready.empty()) {
    const StateId s = ready.back();
    ready.pop_back();
    order->push_back(s);
    const auto &arcs = fst.Arcs(s);
    for (auto it = arcs.rbegin(); it != arcs.rend(); ++it)
      if (keep(*it) && --indegree[it->nextstate] == 0)
        ready.push_back(it->nextstate);
  }
  return static_cast<StateId>(order->size()) == n;
}

template <class W>
bool IsAcyclic(const Fst<W> &fst) {
  std::vector<StateId> order;
  return TopologicalOrder(fst, [](const Arc<W> &) { return true; }, &order);
}

}  // namespace mgd

#endif  // MGD_FST_FST_H_
