// decoder.h
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

#ifndef MGD_DECODER_DECODER_H_
#define MGD_DECODER_DECODER_H_

#include <vector>

#include "mgd/decoder/acoustic_scores.h"
#include "mgd/decoder/lattice.h"
#include "mgd/graph/decoding_graph.h"

namespace mgd {

struct DecodeOptions {
  double beam = kInfinity;
  double lattice_beam = 8.0;
  double loop_cost = 0.69;  // added for every repeated frame of a unit
};

struct DecodeResult {
  Lattice lattice;  // acyclic, state ids in topological order
  Hypothesis best;
};

// Frame-synchronous Viterbi beam search. Each unit arc of the graph consumes
// one or more frames: the first at its acoustic cost, every further one at
// acoustic cost plus `loop_cost`. Epsilon arcs are followed without
// consuming frames. Tokens are recombined on (graph state, current unit).
//
// The graph must outlive the decoder. Decode is const and may run
// concurrently on different utterances.
//
// Tokens that cannot reach a final state within the remaining frames are
// dropped. Pruning is relative to a per-frame reference: the cost, after
// that frame, of the best path of a greedy pass that keeps only the best
// candidates of each frame. A token survives when its cost is within `beam`
// of the reference, which makes the result monotone in the beam and the
// search unable to fail when any complete path exists.
class Decoder {
 public:
  // Throws FstError if the epsilon arcs of the graph form a cycle.
  explicit Decoder(const DecodingGraph &graph);

  // Throws FormatError when the score inventory differs from the graph's,
  // UsageError on a non-positive beam, and SearchError naming the frame when
  // no token survives or no final state is reached.
  DecodeResult Decode(const AcousticScores &scores,
                      const DecodeOptions &opts = {}) const;

  const DecodingGraph &Graph() const { return graph_; }

 private:
  const DecodingGraph &graph_;
  std::vector<int> eps_rank_;  // position in a topological order of eps arcs
  std::vector<int> min_units_;  // fewest unit arcs to a final state
};

}  // namespace mgd

#endif  // MGD_DECODER_DECODER_H_
