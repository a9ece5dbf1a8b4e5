// lexicon_fst.h
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

#ifndef MGD_GRAPH_LEXICON_FST_H_
#define MGD_GRAPH_LEXICON_FST_H_

#include <string>

#include "mgd/fst/fst.h"
#include "mgd/graph/lexicon.h"

namespace mgd {

struct LexiconFstOptions {
  bool optional_silence = false;
  double silence_prob = 0.5;
  std::string silence_unit = "SIL";
};

struct LexiconFst {
  // Input: units plus `#0`..`#K`; output: words plus `#0`.
  StdFst fst;
  int max_disambig = 0;  // K
};

// The closure transducer L. Each pronunciation is a chain of unit arcs
// leaving the loop state; the word is emitted on the last arc of the chain,
// which is a `#k` arc when the pronunciation is a prefix of another one or
// shared by several entries. The first arc carries -ln prob. A `#0:#0`
// self-loop passes grammar backoff symbols through.
LexiconFst CompileLexiconFst(const Lexicon &lex,
                             const LexiconFstOptions &opts = {});

}  // namespace mgd

#endif  // MGD_GRAPH_LEXICON_FST_H_
