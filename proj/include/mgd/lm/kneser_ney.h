// kneser_ney.h
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

#ifndef MGD_LM_KNESER_NEY_H_
#define MGD_LM_KNESER_NEY_H_

#include <cstdint>
#include <map>
#include <vector>

#include "mgd/lm/corpus.h"
#include "mgd/lm/ngram_model.h"

namespace mgd {

constexpr int kMaxNGramOrder = 5;

struct KneserNeyOptions {
  int order = 3;
  double discount = 0.75;
  // Estimate D = n1 / (n1 + 2 n2) per order instead of using `discount`.
  bool auto_discount = false;
  // Mass given to <unk>, relative to the rest of the unigram distribution.
  double unk_floor = 1e-7;
};

// Raw n-gram counts over sentences padded with <s> and </s>; counts[k-1]
// holds the k-grams. Ids follow `vocabulary`.
struct NGramCounts {
  std::vector<std::string> vocabulary;
  std::vector<std::map<NGram, int64_t>> counts;
};

// Vocabulary layout shared by trained models: <unk>, <s>, </s>, then the
// corpus words in byte order.
std::vector<std::string> CorpusVocabulary(const TextCorpus &corpus);

NGramCounts CountNGrams(const TextCorpus &corpus, int order);

// Interpolated Kneser-Ney: the top order uses raw counts, lower orders use
// continuation counts (except n-grams starting with <s>), and the unigram
// level is interpolated with the uniform distribution.
NGramModel TrainKneserNey(const TextCorpus &corpus,
                          const KneserNeyOptions &opts = {});

}  // namespace mgd

#endif  // MGD_LM_KNESER_NEY_H_
