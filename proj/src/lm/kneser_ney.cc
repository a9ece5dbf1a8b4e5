// kneser_ney.cc
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

#include "mgd/lm/kneser_ney.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "mgd/base/error.h"
#include "mgd/fst/symbol_table.h"

namespace mgd {
namespace {

constexpr double kMinDiscount = 0.05;
constexpr double kMaxDiscount = 0.95;

double EstimateDiscount(const std::map<NGram, int64_t> &counts) {
  int64_t n1 = 0, n2 = 0;
  for (const auto &[ngram, c] : counts) {
    n1 += c == 1;
    n2 += c == 2;
  }
  if (n1 + n2 == 0) return kMaxDiscount;
  const double d = static_cast<double>(n1) / (n1 + 2.0 * n2);
  return std::clamp(d, kMinDiscount, kMaxDiscount);
}

bool SamePrefix(const NGram &prefix, const NGram &ngram) {
  return std::equal(prefix.begin(), prefix.end(), ngram.begin());
}

}  // namespace

std::vector<std::string> CorpusVocabulary(const TextCorpus &corpus) {
  std::set<std::string> words;
  for (const auto &s : corpus.sentences) words.insert(s.begin(), s.end());
  std::vector<std::string> vocab{std::string(kUnknownSymbol),
                                 std::string(kSentenceStart),
                                 std::string(kSentenceEnd)};
  vocab.insert(vocab.end(), words.begin(), words.end());
  return vocab;
}

NGramCounts CountNGrams(const TextCorpus &corpus, int order) {
  if (order < 1 || order > kMaxNGramOrder)
    throw LmError("n-gram order must be in [1, " +
                  std::to_string(kMaxNGramOrder) + "]");
  NGramCounts out;
  out.vocabulary = CorpusVocabulary(corpus);
  out.counts.resize(order);
  std::map<std::string, WordId> ids;
  for (WordId i = 0; i < static_cast<WordId>(out.vocabulary.size()); ++i)
    ids[out.vocabulary[i]] = i;
  const WordId bos = ids.at(std::string(kSentenceStart));
  const WordId eos = ids.at(std::string(kSentenceEnd));
  NGram padded;
  for (const auto &sentence : corpus.sentences) {
    padded.assign(1, bos);
    for (const auto &w : sentence) padded.push_back(ids.at(w));
    padded.push_back(eos);
    for (size_t end = 1; end <= padded.size(); ++end)
      for (int k = 1; k <= order && static_cast<size_t>(k) <= end; ++k)
        ++out.counts[k - 1][NGram(padded.begin() + (end - k),
                                  padded.begin() + end)];
  }
  return out;
}

NGramModel TrainKneserNey(const TextCorpus &corpus,
                          const KneserNeyOptions &opts) {
  if (corpus.Empty()) throw LmError("cannot train on an empty corpus");
  if (opts.unk_floor < 0.0) throw LmError("negative <unk> floor");
  if (!opts.auto_discount && (opts.discount <= 0.0 || opts.discount >= 1.0))
    throw LmError("discount must be in (0, 1)");
  const int order = opts.order;
  const NGramCounts raw = CountNGrams(corpus, order);
  NGramModel model(order, raw.vocabulary);
  const WordId bos = model.BosId(), unk = model.UnkId();
  const size_t num_types = raw.vocabulary.size() - 3;
  if (num_types < 2)
    throw LmError("vocabulary of " + std::to_string(num_types) +
                  " word(s) is too small for smoothing");
  // Predictable words: everything observed plus </s>.
  const size_t num_words = num_types + 1;

  // Adjusted counts: raw at the top order and for n-grams starting with
  // <s>, continuation counts N1+(. g) elsewhere. The <s> unigram is not
  // a predicted event.
  std::vector<std::map<NGram, int64_t>> adjusted(order);
  adjusted[order - 1] = raw.counts[order - 1];
  for (int k = order - 1; k >= 1; --k) {
    auto &table = adjusted[k - 1];
    for (const auto &[ngram, c] : raw.counts[k - 1])
      if (ngram[0] == bos && k > 1) table[ngram] = c;
    for (const auto &[ngram, c] : raw.counts[k]) {
      NGram suffix(ngram.begin() + 1, ngram.end());
      if (suffix[0] != bos) ++table[suffix];
    }
  }
  if (order == 1) adjusted[0].erase(NGram{bos});

  std::vector<double> discounts(order, opts.discount);
  if (opts.auto_discount)
    for (int k = 1; k <= order; ++k)
      discounts[k - 1] = EstimateDiscount(adjusted[k - 1]);

  // Unigrams, interpolated with the uniform distribution over the
  // predictable words, then scaled to leave room for <unk>.
  {
    const double d = discounts[0];
    double total = 0.0;
    for (const auto &[ngram, c] : adjusted[0]) total += c;
    const double gamma = d * adjusted[0].size() / total;
    const double renorm = 1.0 + opts.unk_floor;
    for (const auto &[ngram, c] : adjusted[0]) {
      const double p = (c - d) / total + gamma / num_words;
      model.Set(ngram, {std::log10(p / renorm), 0.0});
    }
    const double unk_p = opts.unk_floor / renorm;
    model.Set({unk}, {unk_p > 0.0 ? std::log10(unk_p) : kLog10Zero, 0.0});
    model.Set({bos}, {kLog10Zero, 0.0});
  }

  // Higher orders, one history at a time. Each history's interpolation
  // weight becomes its backoff weight.
  for (int k = 2; k <= order; ++k) {
    const double d = discounts[k - 1];
    const auto &table = adjusted[k - 1];
    for (auto begin = table.begin(); begin != table.end();) {
      const NGram history(begin->first.begin(), begin->first.end() - 1);
      const NGram shorter(history.begin() + 1, history.end());
      double total = 0.0;
      size_t types = 0;
      auto end = begin;
      for (; end != table.end() && SamePrefix(history, end->first); ++end) {
        total += end->second;
        ++types;
      }
      const double gamma = d * types / total;
      for (auto it = begin; it != end; ++it) {
        const double lower = std::pow(10.0, model.LogProb(it->first.back(), shorter));
        const double p = (it->second - d) / total + gamma * lower;
        model.Set(it->first, {std::log10(p), 0.0});
      }
      NGramModel::Entry h = *model.Find(history);
      h.backoff = std::log10(gamma);
      model.Set(history, h);
      begin = end;
    }
  }
  return model;
}

}  // namespace mgd
