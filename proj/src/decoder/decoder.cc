// decoder.cc
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

#include "mgd/decoder/decoder.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <functional>
#include <queue>
#include <unordered_map>
#include <utility>

#include "mgd/base/error.h"

namespace mgd {
namespace {

// A trellis node is either an emitting token (graph state, unit) after some
// frame, or an exit node (graph state) at a frame boundary, reached by
// leaving a unit and following epsilon arcs. Node 0 is an artificial root.
// Node ids form a topological order of the links.
struct Node {
  double am = 0;
  double graph = 0;
  int back = -1;  // best incoming link
  StateId state = kNoStateId;
  Label unit = kEpsilon;  // kEpsilon for exit nodes
};

struct Link {
  int from;
  int to;
  Label ilabel;
  Label olabel;
  double am;
  double graph;
};

// Smaller total wins; equal totals prefer the smaller acoustic part.
bool Better(double am, double graph, double best_am, double best_graph) {
  const double total = am + graph, best = best_am + best_graph;
  return total < best || (total == best && am < best_am);
}

// A node whose incoming links are still being collected. Links pending on
// candidate c have `to == c`.
struct Candidate {
  StateId state;
  Label unit;
  double am = kInfinity;
  double graph = 0;
  int best_link = -1;
};

class Search {
 public:
  // With an empty `anchor`, frame t keeps the candidates within `beam` of
  // the best one; otherwise those within `beam` of anchor[t].
  Search(const StdFst &fst, const std::vector<int> &eps_rank,
         const std::vector<int> &min_units, const AcousticScores &scores,
         const DecodeOptions &opts, double beam, std::vector<double> anchor)
      : fst_(fst),
        eps_rank_(eps_rank),
        min_units_(min_units),
        scores_(scores),
        opts_(opts),
        beam_(beam),
        anchor_(std::move(anchor)) {}

  // Cost of the best path after each frame.
  std::vector<double> BestPathProfile() {
    const int best = Forward();
    std::vector<double> profile(scores_.num_frames);
    int t = scores_.num_frames;
    for (int n = best; nodes_[n].back >= 0;) {
      const Link &link = links_[nodes_[n].back];
      if (link.ilabel != kEpsilon) profile[--t] = nodes_[n].am + nodes_[n].graph;
      n = link.from;
    }
    return profile;
  }

  DecodeResult Run(const std::string &graph_id) {
    const int best = Forward();
    const Node &final_node = nodes_[best];
    const double best_am = final_node.am;
    const double best_graph =
        final_node.graph + fst_.Final(final_node.state).Value();
    std::vector<Label> olabels;
    for (int n = best; nodes_[n].back >= 0;) {
      const Link &link = links_[nodes_[n].back];
      if (link.olabel != kEpsilon) olabels.push_back(link.olabel);
      n = link.from;
    }
    std::reverse(olabels.begin(), olabels.end());

    DecodeResult result;
    result.lattice = BuildLattice(best_am + best_graph);
    if (!fst_.OutputSymbols())
      throw FstError("graph '" + graph_id + "' has no word table");
    result.best = MakeHypothesis(olabels, *fst_.OutputSymbols(), graph_id,
                                 best_am, best_graph);
    return result;
  }

 private:
  // Runs the search over all frames; returns the best final exit node.
  int Forward() {
    nodes_.emplace_back();  // root
    exits_ = Close({{0, fst_.Start()}});
    for (int t = 0; t < scores_.num_frames; ++t) {
      const std::vector<int> emitting = Advance(t);
      std::vector<std::pair<int, StateId>> seeds;
      seeds.reserve(emitting.size());
      for (int n : emitting) seeds.emplace_back(n, nodes_[n].state);
      exits_ = Close(seeds);
    }
    int best = -1;
    double best_am = kInfinity, best_graph = 0;
    for (int n : exits_) {
      const Node &node = nodes_[n];
      if (!fst_.IsFinal(node.state)) continue;
      const double graph = node.graph + fst_.Final(node.state).Value();
      if (Better(node.am, graph, best_am, best_graph)) {
        best = n;
        best_am = node.am;
        best_graph = graph;
      }
    }
    if (best < 0)
      throw SearchError("search failed: no final state reached after frame " +
                        std::to_string(scores_.num_frames));
    return best;
  }

  // Emitting tokens after frame t, from the exit nodes and emitting tokens
  // of boundary t.
  std::vector<int> Advance(int t) {
    cands_.clear();
    pending_.clear();
    std::unordered_map<uint64_t, int> index;
    // A token needs at least min_units_ more frames to finish; the rest can
    // be absorbed by self-loops.
    const int remaining = scores_.num_frames - t - 1;
    auto relax = [&](int from, StateId state, Label unit, Label olabel,
                     double am, double graph) {
      if (min_units_[state] > remaining) return;
      const uint64_t key = (static_cast<uint64_t>(state) << 32) |
                           static_cast<uint32_t>(unit);
      auto [it, inserted] = index.emplace(key, static_cast<int>(cands_.size()));
      if (inserted) cands_.push_back({state, unit});
      Candidate &c = cands_[it->second];
      const Node &src = nodes_[from];
      pending_.push_back({from, it->second, unit, olabel, am, graph});
      if (Better(src.am + am, src.graph + graph, c.am, c.graph)) {
        c.am = src.am + am;
        c.graph = src.graph + graph;
        c.best_link = static_cast<int>(pending_.size()) - 1;
      }
    };
    // Self-loops of the tokens that emitted frame t - 1.
    for (int n = first_emitting_; n < last_emitting_; ++n) {
      const Node &node = nodes_[n];
      relax(n, node.state, node.unit, kEpsilon,
            UnitCost(t, node.unit) + opts_.loop_cost, 0);
    }
    for (int n : exits_)
      for (const auto &arc : fst_.Arcs(nodes_[n].state))
        if (arc.ilabel != kEpsilon)
          relax(n, arc.nextstate, arc.ilabel, arc.olabel, UnitCost(t, arc.ilabel),
                arc.weight.Value());
    if (cands_.empty())
      throw SearchError("search failed at frame " + std::to_string(t) +
                        ": no path through this frame reaches a final state");

    double reference = kInfinity;
    if (anchor_.empty()) {
      for (const auto &c : cands_) reference = std::min(reference, c.am + c.graph);
    } else {
      reference = anchor_[t];
    }
    const double threshold = reference + beam_;
    std::vector<int> order;
    for (size_t i = 0; i < cands_.size(); ++i)
      if (cands_[i].am + cands_[i].graph <= threshold)
        order.push_back(static_cast<int>(i));
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::make_pair(cands_[a].state, cands_[a].unit) <
             std::make_pair(cands_[b].state, cands_[b].unit);
    });
    std::vector<int> id(cands_.size(), -1);
    std::vector<int> created;
    first_emitting_ = static_cast<int>(nodes_.size());
    for (int c : order) {
      id[c] = static_cast<int>(nodes_.size());
      created.push_back(id[c]);
      Node node;
      node.am = cands_[c].am;
      node.graph = cands_[c].graph;
      node.state = cands_[c].state;
      node.unit = cands_[c].unit;
      nodes_.push_back(node);
    }
    last_emitting_ = static_cast<int>(nodes_.size());
    CommitLinks(id);
    return created;
  }

  // Exit nodes reachable from the seeds through epsilon arcs. Nodes are
  // created in topological order of the epsilon subgraph, so a candidate is
  // complete when it is popped.
  std::vector<int> Close(const std::vector<std::pair<int, StateId>> &seeds) {
    cands_.clear();
    pending_.clear();
    std::unordered_map<StateId, int> index;
    using Item = std::pair<int, int>;  // (epsilon rank, candidate)
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> agenda;
    auto relax = [&](int from, StateId state, Label olabel, double graph) {
      auto [it, inserted] = index.emplace(state, static_cast<int>(cands_.size()));
      if (inserted) {
        cands_.push_back({state, kEpsilon});
        agenda.emplace(eps_rank_[state], it->second);
      }
      Candidate &c = cands_[it->second];
      const Node &src = nodes_[from];
      pending_.push_back({from, it->second, kEpsilon, olabel, 0, graph});
      if (Better(src.am, src.graph + graph, c.am, c.graph)) {
        c.am = src.am;
        c.graph = src.graph + graph;
        c.best_link = static_cast<int>(pending_.size()) - 1;
      }
    };
    for (const auto &[from, state] : seeds) relax(from, state, kEpsilon, 0);
    std::vector<int> id;
    std::vector<int> created;
    while (!agenda.empty()) {
      const int c = agenda.top().second;
      agenda.pop();
      const int node_id = static_cast<int>(nodes_.size());
      Node node;
      node.am = cands_[c].am;
      node.graph = cands_[c].graph;
      node.state = cands_[c].state;
      nodes_.push_back(node);
      if (id.size() < cands_.size()) id.resize(cands_.size(), -1);
      id[c] = node_id;
      created.push_back(node_id);
      for (const auto &arc : fst_.Arcs(node.state))
        if (arc.ilabel == kEpsilon)
          relax(node_id, arc.nextstate, arc.olabel, arc.weight.Value());
    }
    CommitLinks(id);
    return created;
  }

  void CommitLinks(const std::vector<int> &id) {
    for (size_t k = 0; k < pending_.size(); ++k) {
      Link link = pending_[k];
      const int c = link.to;
      if (id[c] < 0) continue;
      link.to = id[c];
      if (static_cast<int>(k) == cands_[c].best_link)
        nodes_[link.to].back = static_cast<int>(links_.size());
      links_.push_back(link);
    }
    pending_.clear();
  }

  double UnitCost(int t, Label unit) const {
    if (unit < 1 || unit > scores_.NumUnits())
      throw FormatError("graph unit label " + std::to_string(unit) +
                        " outside the score inventory");
    return scores_.Cost(t, unit - 1);
  }

  // Keeps the links and nodes on paths within lattice_beam of the best.
  Lattice BuildLattice(double best_total) {
    const int n = static_cast<int>(nodes_.size());
    std::vector<char> is_exit_final(n, 0);
    std::vector<double> beta(n, kInfinity);
    for (int node : exits_)
      if (fst_.IsFinal(nodes_[node].state)) {
        is_exit_final[node] = 1;
        beta[node] = fst_.Final(nodes_[node].state).Value();
      }
    std::vector<int> by_source(links_.size());
    for (size_t k = 0; k < links_.size(); ++k) by_source[k] = static_cast<int>(k);
    std::stable_sort(by_source.begin(), by_source.end(),
                     [&](int a, int b) { return links_[a].from > links_[b].from; });
    for (int k : by_source) {
      const Link &l = links_[k];
      beta[l.from] = std::min(beta[l.from], l.am + l.graph + beta[l.to]);
    }
    const double limit = best_total + opts_.lattice_beam +
                         1e-9 * std::max(1.0, std::fabs(best_total));
    auto alpha = [&](int node) { return nodes_[node].am + nodes_[node].graph; };
    std::vector<char> used(n, 0);
    std::vector<const Link *> kept;
    for (const Link &l : links_)
      if (alpha(l.from) + l.am + l.graph + beta[l.to] <= limit) {
        used[l.from] = used[l.to] = 1;
        kept.push_back(&l);
      }
    used[0] = 1;
    std::vector<StateId> state(n, kNoStateId);
    StateId next = 0;
    for (int node = 0; node < n; ++node)
      if (used[node]) state[node] = next++;
    Lattice lattice;
    lattice.AddStates(next);
    lattice.SetStart(state[0]);
    lattice.SetInputSymbols(fst_.InputSymbols());
    lattice.SetOutputSymbols(fst_.OutputSymbols());
    for (const Link *l : kept)
      lattice.AddArc(state[l->from], l->ilabel, l->olabel,
                     LatticeWeight(l->am, l->graph), state[l->to]);
    for (int node = 0; node < n; ++node)
      if (is_exit_final[node] && state[node] != kNoStateId &&
          alpha(node) + fst_.Final(nodes_[node].state).Value() <= limit)
        lattice.SetFinal(state[node],
                         LatticeWeight(0, fst_.Final(nodes_[node].state).Value()));
    return Connect(lattice);
  }

  const StdFst &fst_;
  const std::vector<int> &eps_rank_;
  const std::vector<int> &min_units_;
  const AcousticScores &scores_;
  const DecodeOptions &opts_;
  const double beam_;
  const std::vector<double> anchor_;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<Candidate> cands_;
  std::vector<Link> pending_;
  std::vector<int> exits_;
  int first_emitting_ = 0;  // emitting tokens of the last frame are
  int last_emitting_ = 0;   // the node ids [first, last)
};

}  // namespace

Decoder::Decoder(const DecodingGraph &graph) : graph_(graph) {
  graph_.fst.Validate();
  std::vector<StateId> order;
  if (!TopologicalOrder(graph_.fst,
                        [](const StdArc &arc) { return arc.ilabel == kEpsilon; },
                        &order))
    throw FstError("graph '" + graph_.graph_id + "' has an epsilon cycle");
  eps_rank_.assign(graph_.fst.NumStates(), 0);
  for (size_t i = 0; i < order.size(); ++i)
    eps_rank_[order[i]] = static_cast<int>(i);

  // Fewest unit arcs from each state to a final state: 0-1 breadth-first
  // search over reversed arcs.
  const StdFst &fst = graph_.fst;
  const StateId n = fst.NumStates();
  std::vector<std::vector<std::pair<StateId, int>>> preds(n);
  for (StateId s = 0; s < n; ++s)
    for (const auto &arc : fst.Arcs(s))
      preds[arc.nextstate].emplace_back(s, arc.ilabel == kEpsilon ? 0 : 1);
  constexpr int kUnreachable = std::numeric_limits<int>::max();
  min_units_.assign(n, kUnreachable);
  std::deque<StateId> queue;
  for (StateId s = 0; s < n; ++s)
    if (fst.IsFinal(s)) {
      min_units_[s] = 0;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    for (const auto &[p, w] : preds[s]) {
      if (min_units_[s] + w >= min_units_[p]) continue;
      min_units_[p] = min_units_[s] + w;
      if (w == 0)
        queue.push_front(p);
      else
        queue.push_back(p);
    }
  }
}

DecodeResult Decoder::Decode(const AcousticScores &scores,
                             const DecodeOptions &opts) const {
  if (scores.inventory != graph_.inventory)
    throw FormatError("scores for '" + scores.utt_id +
                      "' use a different unit inventory than graph '" +
                      graph_.graph_id + "'");
  scores.Validate();
  if (!(opts.beam > 0)) throw UsageError("beam must be positive");
  if (!(opts.lattice_beam >= 0)) throw UsageError("lattice beam must be >= 0");
  if (!std::isfinite(opts.loop_cost)) throw UsageError("loop cost must be finite");
  if (graph_.fst.Start() == kNoStateId)
    throw SearchError("graph '" + graph_.graph_id + "' is empty");
  // The pruning reference of each frame is the cost, after that frame, of
  // the path found by a greedy pass. It does not depend on the beam, so a
  // wider beam keeps a superset of tokens, and the greedy path itself always
  // survives.
  std::vector<double> anchor;
  if (std::isfinite(opts.beam))
    anchor = Search(graph_.fst, eps_rank_, min_units_, scores, opts, 0.0, {})
                 .BestPathProfile();
  Search search(graph_.fst, eps_rank_, min_units_, scores, opts, opts.beam,
                std::move(anchor));
  return search.Run(graph_.graph_id);
}

}  // namespace mgd
