// ngram_model.h
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

#ifndef MGD_LM_NGRAM_MODEL_H_
#define MGD_LM_NGRAM_MODEL_H_

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "mgd/lm/corpus.h"

namespace mgd {

using WordId = int;
using NGram = std::vector<WordId>;

constexpr double kLog10Zero = -99.0;  // ARPA convention for log10(0)

// Backoff n-gram model with log10 probabilities. Word ids index the
// vocabulary; n-grams of order k live in the k-th table, sorted by ids.
class NGramModel {
 public:
  struct Entry {
    double logprob = kLog10Zero;
    double backoff = 0.0;  // log10; meaningful for orders below the top
  };

  // `vocabulary` must contain `<s>` and `</s>`; `<unk>` is optional.
  NGramModel(int order, std::vector<std::string> vocabulary);

  int Order() const { return order_; }
  const std::vector<std::string> &Vocabulary() const { return vocab_; }
  size_t VocabularySize() const { return vocab_.size(); }
  WordId Id(const std::string &word) const;  // -1 if absent
  const std::string &Word(WordId id) const { return vocab_.at(id); }
  WordId BosId() const { return bos_; }
  WordId EosId() const { return eos_; }
  WordId UnkId() const { return unk_; }  // -1 if the model has no <unk>
  // Maps OOV words to <unk> (or -1 without one).
  WordId IdOrUnk(const std::string &word) const;

  const std::map<NGram, Entry> &NGrams(int k) const { return ngrams_.at(k - 1); }
  size_t NumNGrams(int k) const { return ngrams_.at(k - 1).size(); }
  void Set(const NGram &ngram, const Entry &entry);
  const Entry *Find(const NGram &ngram) const;
  // True if some stored (k+1)-gram extends `history`.
  bool IsHistory(const NGram &history) const;

  // log10 p(word | history) with backoff; `history` is in reading order and
  // truncated to the last order-1 words. -inf if the word is unknown.
  double LogProb(WordId word, const NGram &history) const;
  // Σ log10 p over the words of `sentence` and `</s>`, starting from `<s>`.
  // OOV words are scored as `<unk>`.
  double SentenceLogProb(const Sentence &sentence) const;

  // Σ_w p(w | history) over every predictable word (all but `<s>`).
  double SumProbabilities(const NGram &history) const;
  // Checks every stored history sums to one within `tolerance`, assuming
  // shorter histories already do (checked first). Throws LmError.
  void CheckNormalization(double tolerance) const;

 private:
  int order_;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, WordId> ids_;
  WordId bos_ = -1, eos_ = -1, unk_ = -1;
  std::vector<std::map<NGram, Entry>> ngrams_;
};

// Natural-log cost of a log10 probability.
inline double Log10ToCost(double log10prob) { return -log10prob * 2.302585092994045684; }

}  // namespace mgd

#endif  // MGD_LM_NGRAM_MODEL_H_
