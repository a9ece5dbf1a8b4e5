// synthetic.h
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

#ifndef MGD_EXPERIMENT_SYNTHETIC_H_
#define MGD_EXPERIMENT_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mgd/decoder/acoustic_scores.h"
#include "mgd/eval/wer.h"
#include "mgd/graph/lexicon.h"
#include "mgd/lm/corpus.h"

namespace mgd {

// Two toy languages A and B over one shared unit inventory. Words are spelled
// by their pronunciation and tagged `<spelling>_<code>`; A prefers the first
// half of the inventory, B the second. B shares `cognates` words with A
// (same spelling and pronunciation) and has `near_homophones` words one unit
// away from an A word. Text comes from sparse bigram chains; a mixed
// sentence starts in A with probability `mixed_start_a` (A is the usual
// matrix language) and switches before each later word with probability
// `switch_rate`.
struct SyntheticConfig {
  uint64_t seed = 1;
  std::string lang_a = "fy";
  std::string lang_b = "nl";
  std::vector<std::string> inventory{"a", "e", "i", "o", "u", "y", "p", "t",
                                     "k", "m", "n", "s", "l", "r", "d", "v"};
  int vocab_a = 60;
  int vocab_b = 60;
  int cognates = 6;
  int near_homophones = 12;
  int min_pron = 2;
  int max_pron = 4;
  int successors = 4;  // bigram fan-out per word
  int min_len = 3;
  int max_len = 7;
  double switch_rate = 0.3;
  double mixed_start_a = 0.75;
  // The code-switched corpus: `cs_sentences` sentences, the given fractions
  // monolingual A and B, the rest mixed.
  int cs_sentences = 600;
  double cs_fraction_a = 0.4;
  double cs_fraction_b = 0.3;
  // Monolingual text sizes in tokens, relative to the A (resp. B) portion of
  // the code-switched corpus. B corpora are nested prefixes of one stream.
  double a_text_factor = 1.0;
  std::vector<double> b_text_factors{1, 4, 10};
  int dev_per_condition = 20;
  int test_per_condition = 100;
  SynthOptions acoustics{2, 4.0, 1.6};
};

struct SyntheticData {
  explicit SyntheticData(Lexicon lex) : lexicon(std::move(lex)) {}

  Lexicon lexicon;
  TextCorpus cs;
  TextCorpus mono_a;
  std::vector<TextCorpus> mono_b;  // one per b_text_factors entry
  std::vector<SegmentRef> dev;
  std::vector<SegmentRef> test;
  std::vector<AcousticScores> dev_scores;
  std::vector<AcousticScores> test_scores;
};

// Corpus names: "cs", lang_a, then lang_b with k pluses for the k-th B size.
std::string MonoBName(const SyntheticConfig &cfg, size_t k);

// Deterministic in the config; every part draws from its own named random
// substream of `seed`. Throws UsageError on an inconsistent config.
SyntheticData GenerateSynthetic(const SyntheticConfig &cfg);

// Reference unit sequence of a word sequence (first pronunciations).
std::vector<std::string> UnitSequence(const Lexicon &lex,
                                      const std::vector<std::string> &words);

}  // namespace mgd

#endif  // MGD_EXPERIMENT_SYNTHETIC_H_
