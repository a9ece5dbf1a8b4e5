// lattice.h
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

#ifndef MGD_DECODER_LATTICE_H_
#define MGD_DECODER_LATTICE_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "mgd/fst/fst.h"
#include "mgd/fst/weight.h"

namespace mgd {

// Pair of (acoustic, graph) costs ordered by their sum. Plus keeps the
// operand with the smaller total (smaller acoustic part on ties); Times adds
// componentwise. Text form is "am,graph".
class LatticeWeight {
 public:
  LatticeWeight() : am_(kInfinity), graph_(kInfinity) {}
  LatticeWeight(double am, double graph) : am_(am), graph_(graph) {}

  static LatticeWeight Zero() { return LatticeWeight(); }
  static LatticeWeight One() { return LatticeWeight(0.0, 0.0); }
  static const char *Type() { return "lattice"; }
  static constexpr bool kIdempotent = true;

  double Am() const { return am_; }
  double Graph() const { return graph_; }
  double Total() const { return am_ + graph_; }

  bool Member() const {
    if (*this == Zero()) return true;
    return std::isfinite(am_) && std::isfinite(graph_);
  }
  LatticeWeight Quantize(double delta = kQuantizeDelta) const {
    return LatticeWeight(QuantizeValue(am_, delta), QuantizeValue(graph_, delta));
  }

  std::string ToString(int precision) const;
  static LatticeWeight FromString(std::string_view text);

  friend bool operator==(const LatticeWeight &a, const LatticeWeight &b) {
    return a.am_ == b.am_ && a.graph_ == b.graph_;
  }
  friend bool operator!=(const LatticeWeight &a, const LatticeWeight &b) {
    return !(a == b);
  }

 private:
  double am_;
  double graph_;
};

inline bool NaturalLess(const LatticeWeight &a, const LatticeWeight &b) {
  if (a.Total() != b.Total()) return a.Total() < b.Total();
  return a.Am() < b.Am();
}

inline LatticeWeight Plus(const LatticeWeight &a, const LatticeWeight &b) {
  return NaturalLess(b, a) ? b : a;
}

inline LatticeWeight Times(const LatticeWeight &a, const LatticeWeight &b) {
  if (a == LatticeWeight::Zero() || b == LatticeWeight::Zero())
    return LatticeWeight::Zero();
  return LatticeWeight(a.Am() + b.Am(), a.Graph() + b.Graph());
}

// Input labels are unit labels (one arc per frame), output labels are words
// and graph tags.
using Lattice = Fst<LatticeWeight>;

// A recognition hypothesis. `graph_id` names the member graph whose tag the
// path carried, or the decoding graph itself when it had no tags.
struct Hypothesis {
  std::string graph_id;
  std::vector<std::string> words;
  double am_cost = 0;
  double lm_cost = 0;
  double total_cost = 0;
};

// Splits an output label sequence into graph tag and words; labels are
// resolved through the lattice's output symbol table.
Hypothesis MakeHypothesis(const std::vector<Label> &olabels,
                          const SymbolTable &words,
                          const std::string &default_graph_id, double am,
                          double lm);

// The n cheapest distinct output sequences (tag included) of an acyclic
// lattice, each at the cost of its cheapest path, with that path's cost
// split. Ordered by total cost, ties by output label ids. Throws FstError on
// a cyclic lattice or one without output symbols.
std::vector<Hypothesis> LatticeNBest(const Lattice &lattice, size_t n,
                                     const std::string &default_graph_id);

struct UtteranceLattice {
  std::string utt_id;
  std::string graph_id;  // the decoding graph
  Lattice lattice;
};

// Archive of text lattices, each introduced by
// `lattice <utt_id> <graph_id> <number of lines>`. Labels are numeric;
// `words` becomes the output table of every lattice read back.
void WriteLatticeArchive(const std::vector<UtteranceLattice> &archive,
                         std::ostream &os);
void WriteLatticeArchiveFile(const std::vector<UtteranceLattice> &archive,
                             const std::string &path);
std::vector<UtteranceLattice> ReadLatticeArchive(std::istream &is,
                                                 const std::string &source,
                                                 SymbolTablePtr words);
std::vector<UtteranceLattice> ReadLatticeArchiveFile(const std::string &path,
                                                     SymbolTablePtr words);

}  // namespace mgd

#endif  // MGD_DECODER_LATTICE_H_
