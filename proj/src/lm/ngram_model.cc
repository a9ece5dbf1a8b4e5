// ngram_model.cc
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

#include "mgd/lm/ngram_model.h"

#include <cmath>
#include <limits>

#include "mgd/base/error.h"
#include "mgd/fst/symbol_table.h"

namespace mgd {

NGramModel::NGramModel(int order, std::vector<std::string> vocabulary)
    : order_(order), vocab_(std::move(vocabulary)), ngrams_(order) {
  if (order < 1) throw LmError("model order must be positive");
  for (WordId id = 0; id < static_cast<WordId>(vocab_.size()); ++id)
    if (!ids_.emplace(vocab_[id], id).second)
      throw LmError("duplicate vocabulary word '" + vocab_[id] + "'");
  bos_ = Id(std::string(kSentenceStart));
  eos_ = Id(std::string(kSentenceEnd));
  unk_ = Id(std::string(kUnknownSymbol));
  if (bos_ < 0 || eos_ < 0) throw LmError("vocabulary lacks <s> or </s>");
}

WordId NGramModel::Id(const std::string &word) const {
  const auto it = ids_.find(word);
  return it == ids_.end() ? -1 : it->second;
}

WordId NGramModel::IdOrUnk(const std::string &word) const {
  const WordId id = Id(word);
  return id >= 0 ? id : unk_;
}

void NGramModel::Set(const NGram &ngram, const Entry &entry) {
  if (ngram.empty() || static_cast<int>(ngram.size()) > order_)
    throw LmError("n-gram order out of range");
  for (WordId w : ngram)
    if (w < 0 || w >= static_cast<WordId>(vocab_.size()))
      throw LmError("n-gram word id out of range");
  ngrams_[ngram.size() - 1][ngram] = entry;
}

const NGramModel::Entry *NGramModel::Find(const NGram &ngram) const {
  if (ngram.empty() || static_cast<int>(ngram.size()) > order_) return nullptr;
  const auto &table = ngrams_[ngram.size() - 1];
  const auto it = table.find(ngram);
  return it == table.end() ? nullptr : &it->second;
}

bool NGramModel::IsHistory(const NGram &history) const {
  if (history.empty()) return true;
  if (static_cast<int>(history.size()) >= order_) return false;
  const auto &table = ngrams_[history.size()];
  const auto it = table.lower_bound(history);
  return it != table.end() &&
         std::equal(history.begin(), history.end(), it->first.begin());
}

double NGramModel::LogProb(WordId word, const NGram &history) const {
  if (word < 0) return -std::numeric_limits<double>::infinity();
  const size_t max_len =
      std::min(history.size(), static_cast<size_t>(order_ - 1));
  double backoff = 0.0;
  NGram key;
  for (size_t len = max_len;; --len) {
    key.assign(history.end() - len, history.end());
    key.push_back(word);
    if (const Entry *e = Find(key)) return backoff + e->logprob;
    if (len == 0) return -std::numeric_limits<double>::infinity();
    key.pop_back();
    if (const Entry *h = Find(key)) backoff += h->backoff;
  }
}

double NGramModel::SentenceLogProb(const Sentence &sentence) const {
  NGram history{bos_};
  double total = 0.0;
  for (const auto &word : sentence) {
    const WordId id = IdOrUnk(word);
    total += LogProb(id, history);
    history.push_back(id);
  }
  return total + LogProb(eos_, history);
}

double NGramModel::SumProbabilities(const NGram &history) const {
  double sum = 0.0;
  for (WordId w = 0; w < static_cast<WordId>(vocab_.size()); ++w)
    if (w != bos_) sum += std::pow(10.0, LogProb(w, history));
  return sum;
}

void NGramModel::CheckNormalization(double tolerance) const {
  double unigram_sum = 0.0;
  for (const auto &[ngram, entry] : ngrams_[0])
    if (ngram[0] != bos_) unigram_sum += std::pow(10.0, entry.logprob);
  if (std::fabs(unigram_sum - 1.0) > tolerance)
    throw LmError("unigram probabilities sum to " + std::to_string(unigram_sum));
  // Explicit extensions of each history are contiguous in the sorted table.
  for (int k = 2; k <= order_; ++k) {
    const auto &table = ngrams_[k - 1];
    for (auto it = table.begin(); it != table.end();) {
      const NGram history(it->first.begin(), it->first.end() - 1);
      const NGram shorter(history.begin() + 1, history.end());
      double explicit_sum = 0.0, lower_sum = 0.0;
      for (; it != table.end() &&
             std::equal(history.begin(), history.end(), it->first.begin());
           ++it) {
        explicit_sum += std::pow(10.0, it->second.logprob);
        lower_sum += std::pow(10.0, LogProb(it->first.back(), shorter));
      }
      const Entry *h = Find(history);
      const double backoff = std::pow(10.0, h != nullptr ? h->backoff : 0.0);
      const double total = explicit_sum + backoff * (1.0 - lower_sum);
      if (std::fabs(total - 1.0) > tolerance) {
        std::string words;
        for (WordId w : history) words += (words.empty() ? "" : " ") + vocab_[w];
        throw LmError("history '" + words + "' sums to " + std::to_string(total));
      }
    }
  }
}

}  // namespace mgd
