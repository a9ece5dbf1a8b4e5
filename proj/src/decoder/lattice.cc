// lattice.cc
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

#include "mgd/decoder/lattice.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "mgd/base/error.h"
#include "mgd/fst/text_io.h"

namespace mgd {

std::string LatticeWeight::ToString(int precision) const {
  return FormatDouble(am_, precision) + "," + FormatDouble(graph_, precision);
}

LatticeWeight LatticeWeight::FromString(std::string_view text) {
  const size_t comma = text.find(',');
  if (comma == std::string_view::npos)
    throw FormatError("lattice weight '" + std::string(text) +
                      "' is not of the form am,graph");
  return LatticeWeight(ParseDouble(text.substr(0, comma)),
                       ParseDouble(text.substr(comma + 1)));
}

Hypothesis MakeHypothesis(const std::vector<Label> &olabels,
                          const SymbolTable &words,
                          const std::string &default_graph_id, double am,
                          double lm) {
  Hypothesis hyp;
  hyp.graph_id = default_graph_id;
  bool tagged = false;
  for (Label l : olabels) {
    if (l == kEpsilon) continue;
    const std::string &symbol = words.Find(l);
    if (symbol.empty())
      throw FstError("output label " + std::to_string(l) +
                     " missing from the word table");
    if (IsGraphTag(symbol)) {
      if (tagged) throw FstError("path carries more than one graph tag");
      tagged = true;
      hyp.graph_id = GraphIdFromTag(symbol);
      continue;
    }
    hyp.words.push_back(symbol);
  }
  hyp.am_cost = am;
  hyp.lm_cost = lm;
  hyp.total_cost = am + lm;
  return hyp;
}

namespace {

// Output sequences shared as a prefix tree; node 0 is the empty sequence.
class SequenceTrie {
 public:
  SequenceTrie() : nodes_{{-1, kEpsilon}} {}

  int Extend(int node, Label label) {
    if (label == kEpsilon) return node;
    auto [it, inserted] =
        children_.emplace(std::make_pair(node, label), static_cast<int>(nodes_.size()));
    if (inserted) nodes_.emplace_back(node, label);
    return it->second;
  }

  std::vector<Label> Labels(int node) const {
    std::vector<Label> labels;
    for (; node > 0; node = nodes_[node].first) labels.push_back(nodes_[node].second);
    std::reverse(labels.begin(), labels.end());
    return labels;
  }

 private:
  std::vector<std::pair<int, Label>> nodes_;  // (parent, label)
  std::map<std::pair<int, Label>, int> children_;
};

struct Entry {
  double am;
  double graph;
  int seq;
  double Total() const { return am + graph; }
};

// Keeps, per sequence, the entry of smallest (total, am).
void Offer(std::unordered_map<int, Entry> *pool, const Entry &entry) {
  auto [it, inserted] = pool->emplace(entry.seq, entry);
  if (inserted) return;
  Entry &old = it->second;
  if (entry.Total() < old.Total() ||
      (entry.Total() == old.Total() && entry.am < old.am))
    old = entry;
}

// The n best entries of `pool` ordered by total, then label sequence.
std::vector<Entry> Best(const std::unordered_map<int, Entry> &pool, size_t n,
                        const SequenceTrie &trie) {
  std::vector<Entry> entries;
  entries.reserve(pool.size());
  for (const auto &[seq, entry] : pool) entries.push_back(entry);
  auto less = [&trie](const Entry &a, const Entry &b) {
    if (a.Total() != b.Total()) return a.Total() < b.Total();
    if (a.seq == b.seq) return false;
    return trie.Labels(a.seq) < trie.Labels(b.seq);
  };
  if (entries.size() > n) {
    std::nth_element(entries.begin(), entries.begin() + (n - 1), entries.end(), less);
    const Entry pivot = entries[n - 1];
    // Everything not worse than the pivot survives the cut; ties at the
    // boundary are resolved by the full sort below.
    entries.erase(std::remove_if(entries.begin(), entries.end(),
                                 [&](const Entry &e) { return less(pivot, e); }),
                  entries.end());
  }
  std::sort(entries.begin(), entries.end(), less);
  if (entries.size() > n) entries.resize(n);
  return entries;
}

}  // namespace

std::vector<Hypothesis> LatticeNBest(const Lattice &lattice, size_t n,
                                     const std::string &default_graph_id) {
  std::vector<Hypothesis> result;
  if (n == 0 || lattice.Start() == kNoStateId) return result;
  if (!lattice.OutputSymbols())
    throw FstError("lattice has no output symbol table");
  std::vector<StateId> order;
  if (!TopologicalOrder(lattice, [](const Arc<LatticeWeight> &) { return true; },
                        &order))
    throw FstError("lattice is cyclic");

  SequenceTrie trie;
  std::vector<std::unordered_map<int, Entry>> pending(lattice.NumStates());
  std::unordered_map<int, Entry> complete;
  pending[lattice.Start()].emplace(0, Entry{0.0, 0.0, 0});
  for (StateId s : order) {
    if (pending[s].empty()) continue;
    const std::vector<Entry> entries = Best(pending[s], n, trie);
    std::unordered_map<int, Entry>().swap(pending[s]);
    if (lattice.IsFinal(s)) {
      const LatticeWeight f = lattice.Final(s);
      for (const Entry &e : entries)
        Offer(&complete, {e.am + f.Am(), e.graph + f.Graph(), e.seq});
    }
    for (const auto &arc : lattice.Arcs(s))
      for (const Entry &e : entries)
        Offer(&pending[arc.nextstate],
              {e.am + arc.weight.Am(), e.graph + arc.weight.Graph(),
               trie.Extend(e.seq, arc.olabel)});
  }
  for (const Entry &e : Best(complete, n, trie))
    result.push_back(MakeHypothesis(trie.Labels(e.seq), *lattice.OutputSymbols(),
                                    default_graph_id, e.am, e.graph));
  return result;
}

void WriteLatticeArchive(const std::vector<UtteranceLattice> &archive,
                         std::ostream &os) {
  for (const auto &entry : archive) {
    std::ostringstream body;
    WriteFstText(entry.lattice, body, 9);
    const std::string text = body.str();
    const long lines = std::count(text.begin(), text.end(), '\n');
    os << "lattice " << entry.utt_id << ' ' << entry.graph_id << ' ' << lines << '\n'
       << text;
  }
}

void WriteLatticeArchiveFile(const std::vector<UtteranceLattice> &archive,
                             const std::string &path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  WriteLatticeArchive(archive, out);
}

std::vector<UtteranceLattice> ReadLatticeArchive(std::istream &is,
                                                 const std::string &source,
                                                 SymbolTablePtr words) {
  std::vector<UtteranceLattice> archive;
  std::string line;
  long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream header(line);
    std::string keyword;
    if (!(header >> keyword)) continue;
    UtteranceLattice entry;
    long lines = -1;
    std::string extra;
    if (keyword != "lattice" || !(header >> entry.utt_id >> entry.graph_id >> lines) ||
        lines < 0 || (header >> extra))
      throw FormatError(source + ":" + std::to_string(lineno) +
                        ": expected 'lattice <utt_id> <graph_id> <lines>'");
    std::string body;
    for (long i = 0; i < lines; ++i) {
      if (!std::getline(is, line))
        throw FormatError(source + ": truncated lattice '" + entry.utt_id + "'");
      body += line;
      body += '\n';
    }
    std::istringstream in(body);
    entry.lattice = ReadFstText<LatticeWeight>(
        in, source + " (lattice " + entry.utt_id + ")", nullptr, words);
    lineno += lines;
    archive.push_back(std::move(entry));
  }
  return archive;
}

std::vector<UtteranceLattice> ReadLatticeArchiveFile(const std::string &path,
                                                     SymbolTablePtr words) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return ReadLatticeArchive(in, path, std::move(words));
}

}  // namespace mgd
