// nbest_io.h
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

#ifndef MGD_RESCORE_NBEST_IO_H_
#define MGD_RESCORE_NBEST_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "mgd/decoder/lattice.h"

namespace mgd {

struct UtteranceNBest {
  std::string utt_id;
  std::vector<Hypothesis> hyps;  // rank order
};

// One line per hypothesis:
//   utt_id rank graph_id am_cost lm_cost total_cost word...
// Ranks start at 1 within each utterance.
void WriteNBest(const std::vector<UtteranceNBest> &lists, std::ostream &os);
void WriteNBestFile(const std::vector<UtteranceNBest> &lists,
                    const std::string &path);

// Lines of one utterance must be contiguous with ranks 1, 2, ...; throws
// FormatError otherwise or on a repeated utterance.
std::vector<UtteranceNBest> ReadNBest(std::istream &is, const std::string &source);
std::vector<UtteranceNBest> ReadNBestFile(const std::string &path);

}  // namespace mgd

#endif  // MGD_RESCORE_NBEST_IO_H_
