// decoding_graph.h
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

#ifndef MGD_GRAPH_DECODING_GRAPH_H_
#define MGD_GRAPH_DECODING_GRAPH_H_

#include <string>
#include <vector>

#include "mgd/fst/determinize.h"
#include "mgd/fst/fst.h"
#include "mgd/graph/lexicon.h"
#include "mgd/graph/lexicon_fst.h"

namespace mgd {

// A compiled recognition graph: input labels are units (1..U in inventory
// order), output labels are words. A union graph also carries one
// `#graph:<id>` output tag on each entry arc.
struct DecodingGraph {
  std::string graph_id;
  StdFst fst;
  std::vector<std::string> inventory;
  std::string lm;                    // free-form provenance
  std::vector<std::string> members;  // member ids for a union, else empty

  bool IsUnion() const { return !members.empty(); }
};

struct CompileOptions {
  LexiconFstOptions lexicon;
  DeterminizeOptions determinize;
};

// min(det(L o G)) with the disambiguation symbols still in place, input
// symbols including `#0`..`#K`. `g` is matched to the lexicon's word table by
// symbol string; G arcs for words outside the lexicon are dropped.
StdFst CompileWithDisambiguation(const Lexicon &lex, const StdFst &g,
                                 const CompileOptions &opts = {});

// Rewrites every `#k` input label to <eps> and switches the input table to
// the plain unit table.
StdFst RemoveDisambiguation(const StdFst &fst, const Lexicon &lex);

DecodingGraph CompileDecodingGraph(const Lexicon &lex, const StdFst &g,
                                   const std::string &graph_id,
                                   const CompileOptions &opts = {});

enum class UnionPrior { kNone, kUniform };

// Union of compiled graphs under a fresh start state; entry arc k is
// <eps>:#graph:<id_k> with weight One (kNone) or -ln(1/K) (kUniform). The
// word tables are merged by symbol. Throws FormatError on duplicate ids or
// differing unit inventories.
DecodingGraph BuildMultiGraph(const std::vector<DecodingGraph> &graphs,
                              UnionPrior prior = UnionPrior::kNone);

// Files: prefix.fst, prefix.units.txt, prefix.words.txt, prefix.meta.
void WriteDecodingGraph(const DecodingGraph &graph, const std::string &prefix);
DecodingGraph ReadDecodingGraph(const std::string &prefix);

}  // namespace mgd

#endif  // MGD_GRAPH_DECODING_GRAPH_H_
