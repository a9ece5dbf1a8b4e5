// acoustic_scores.h
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

#ifndef MGD_DECODER_ACOUSTIC_SCORES_H_
#define MGD_DECODER_ACOUSTIC_SCORES_H_

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace mgd {

// Per-frame acoustic costs (-log likelihood, lower is better) for one
// utterance. Column u scores unit u of the inventory; in a decoding graph
// that unit carries input label u + 1.
struct AcousticScores {
  std::string utt_id;
  std::vector<std::string> inventory;
  int num_frames = 0;
  std::vector<double> costs;  // row-major, num_frames x inventory.size()

  int NumUnits() const { return static_cast<int>(inventory.size()); }
  double Cost(int frame, int unit) const {
    return costs[static_cast<size_t>(frame) * inventory.size() + unit];
  }
  double &MutableCost(int frame, int unit) {
    return costs[static_cast<size_t>(frame) * inventory.size() + unit];
  }

  // Throws FormatError on a shape mismatch or a non-finite entry.
  void Validate() const;
};

struct SynthOptions {
  int frames_per_unit = 3;
  double margin = 5.0;
  double noise_sd = 0.0;
};

// Synthetic scores for a reference unit sequence. Each reference unit
// occupies `frames_per_unit` frames; per frame and unit a standard normal z
// is drawn in inventory order, the reference unit costs noise_sd * |z| and
// every other unit margin + noise_sd * z.
AcousticScores SynthAcousticScores(const std::vector<std::string> &ref_units,
                                   const std::vector<std::string> &inventory,
                                   const SynthOptions &opts,
                                   std::mt19937_64 *rng);
// Same, drawing from the "noise" substream of `seed`.
AcousticScores SynthAcousticScores(const std::vector<std::string> &ref_units,
                                   const std::vector<std::string> &inventory,
                                   const SynthOptions &opts, uint64_t seed);

// Text archive, one block per utterance:
//   scores <utt_id> <frames> <units> <inventory-hash>
//   <one line of `units` costs per frame>
void WriteScores(const AcousticScores &scores, std::ostream &os);
void WriteScoresArchive(const std::vector<AcousticScores> &archive,
                        const std::string &path);
// Every block must match `inventory` (checked through its hash).
std::vector<AcousticScores> ReadScoresArchive(
    std::istream &is, const std::string &source,
    const std::vector<std::string> &inventory);
std::vector<AcousticScores> ReadScoresArchiveFile(
    const std::string &path, const std::vector<std::string> &inventory);

}  // namespace mgd

#endif  // MGD_DECODER_ACOUSTIC_SCORES_H_
