// acoustic_scores.cc
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

#include "mgd/decoder/acoustic_scores.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mgd/base/error.h"
#include "mgd/base/random.h"
#include "mgd/fst/weight.h"
#include "mgd/graph/lexicon.h"

namespace mgd {

void AcousticScores::Validate() const {
  if (num_frames < 0 || inventory.empty())
    throw FormatError("scores for '" + utt_id + "' have no unit inventory");
  if (costs.size() != static_cast<size_t>(num_frames) * inventory.size())
    throw FormatError("scores for '" + utt_id + "' have " +
                      std::to_string(costs.size()) + " entries, expected " +
                      std::to_string(num_frames) + " x " +
                      std::to_string(inventory.size()));
  for (size_t i = 0; i < costs.size(); ++i)
    if (!std::isfinite(costs[i]))
      throw FormatError("non-finite score in '" + utt_id + "' at frame " +
                        std::to_string(i / inventory.size()));
}

AcousticScores SynthAcousticScores(const std::vector<std::string> &ref_units,
                                   const std::vector<std::string> &inventory,
                                   const SynthOptions &opts,
                                   std::mt19937_64 *rng) {
  if (ref_units.empty()) throw UsageError("empty reference unit sequence");
  if (opts.frames_per_unit < 1) throw UsageError("frames_per_unit must be >= 1");
  if (!(opts.margin > 0)) throw UsageError("margin must be positive");
  if (opts.noise_sd < 0) throw UsageError("noise_sd must be non-negative");
  std::vector<int> ref;
  for (const auto &u : ref_units) {
    int index = -1;
    for (size_t i = 0; i < inventory.size(); ++i)
      if (inventory[i] == u) index = static_cast<int>(i);
    if (index < 0) throw FormatError("unit '" + u + "' not in the inventory");
    ref.push_back(index);
  }
  AcousticScores scores;
  scores.inventory = inventory;
  scores.num_frames = static_cast<int>(ref.size()) * opts.frames_per_unit;
  scores.costs.resize(static_cast<size_t>(scores.num_frames) * inventory.size());
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < scores.num_frames; ++t) {
    const int truth = ref[t / opts.frames_per_unit];
    for (int u = 0; u < scores.NumUnits(); ++u) {
      const double z = normal(*rng);
      scores.MutableCost(t, u) = u == truth ? opts.noise_sd * std::fabs(z)
                                            : opts.margin + opts.noise_sd * z;
    }
  }
  return scores;
}

AcousticScores SynthAcousticScores(const std::vector<std::string> &ref_units,
                                   const std::vector<std::string> &inventory,
                                   const SynthOptions &opts, uint64_t seed) {
  auto rng = SubstreamRng(seed, "noise");
  return SynthAcousticScores(ref_units, inventory, opts, &rng);
}

void WriteScores(const AcousticScores &scores, std::ostream &os) {
  scores.Validate();
  os << "scores " << scores.utt_id << ' ' << scores.num_frames << ' '
     << scores.NumUnits() << ' ' << InventoryHash(scores.inventory) << '\n';
  for (int t = 0; t < scores.num_frames; ++t) {
    for (int u = 0; u < scores.NumUnits(); ++u) {
      if (u) os << ' ';
      os << FormatDouble(scores.Cost(t, u), 9);
    }
    os << '\n';
  }
}

void WriteScoresArchive(const std::vector<AcousticScores> &archive,
                        const std::string &path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  for (const auto &scores : archive) WriteScores(scores, out);
}

std::vector<AcousticScores> ReadScoresArchive(
    std::istream &is, const std::string &source,
    const std::vector<std::string> &inventory) {
  const std::string hash = InventoryHash(inventory);
  std::vector<AcousticScores> archive;
  std::string line;
  int lineno = 0;
  auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream header(line);
    std::string keyword, utt, file_hash;
    long frames = -1, units = -1;
    if (!(header >> keyword)) continue;
    if (keyword != "scores" || !(header >> utt >> frames >> units >> file_hash) ||
        frames < 0 || units < 1)
      throw FormatError(where() + "expected 'scores <utt> <frames> <units> <hash>'");
    if (file_hash != hash || units != static_cast<long>(inventory.size()))
      throw FormatError(where() + "scores for '" + utt +
                        "' use a different unit inventory");
    AcousticScores scores;
    scores.utt_id = utt;
    scores.inventory = inventory;
    scores.num_frames = static_cast<int>(frames);
    scores.costs.reserve(static_cast<size_t>(frames * units));
    for (long t = 0; t < frames; ++t) {
      if (!std::getline(is, line))
        throw FormatError(where() + "truncated scores for '" + utt + "'");
      ++lineno;
      std::istringstream row(line);
      std::string field;
      long n = 0;
      while (row >> field) {
        scores.costs.push_back(ParseDouble(field));
        ++n;
      }
      if (n != units)
        throw FormatError(where() + "expected " + std::to_string(units) +
                          " costs, found " + std::to_string(n));
    }
    scores.Validate();
    archive.push_back(std::move(scores));
  }
  return archive;
}

std::vector<AcousticScores> ReadScoresArchiveFile(
    const std::string &path, const std::vector<std::string> &inventory) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  return ReadScoresArchive(in, path, inventory);
}

}  // namespace mgd
