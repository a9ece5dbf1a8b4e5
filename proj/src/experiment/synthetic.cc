// synthetic.cc
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

#include "mgd/experiment/synthetic.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "mgd/base/error.h"
#include "mgd/base/random.h"

namespace mgd {
namespace {

// Words of one language with their bigram chains. Index `words.size()` is
// the sentence start.
struct ToyLanguage {
  std::string code;
  std::vector<std::string> words;
  std::vector<std::vector<std::string>> prons;
  std::vector<std::vector<int>> next;
  std::vector<std::discrete_distribution<int>> pick;

  int Start() const { return static_cast<int>(words.size()); }
  int Draw(int context, std::mt19937_64 &rng) {
    return next[context][pick[context](rng)];
  }
};

std::string Spell(const std::vector<std::string> &units) {
  std::string s;
  for (const auto &u : units) s += u;
  return s;
}

void BuildChains(ToyLanguage *lang, int fan_out, std::mt19937_64 &rng) {
  const int n = static_cast<int>(lang->words.size());
  fan_out = std::min(fan_out, n);
  std::vector<double> zipf;
  for (int k = 0; k < fan_out; ++k) zipf.push_back(1.0 / (k + 1));
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  for (int context = 0; context <= n; ++context) {
    std::shuffle(all.begin(), all.end(), rng);
    lang->next.emplace_back(all.begin(), all.begin() + fan_out);
    lang->pick.emplace_back(zipf.begin(), zipf.end());
  }
}

class Generator {
 public:
  explicit Generator(const SyntheticConfig &cfg) : cfg_(cfg) {
    Validate();
    BuildLexicon();
  }

  Sentence Mono(int which, std::mt19937_64 &rng) {
    ToyLanguage &lang = langs_[which];
    std::uniform_int_distribution<int> len(cfg_.min_len, cfg_.max_len);
    Sentence s;
    int context = lang.Start();
    for (int i = len(rng); i > 0; --i) {
      context = lang.Draw(context, rng);
      s.push_back(lang.words[context]);
    }
    return s;
  }

  // A sentence containing words of both languages.
  Sentence Mixed(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> len(std::max(2, cfg_.min_len), cfg_.max_len);
    std::bernoulli_distribution start_b(1.0 - cfg_.mixed_start_a),
        switch_now(cfg_.switch_rate);
    for (;;) {
      Sentence s;
      int which = start_b(rng);
      int context = langs_[which].Start();
      bool used[2] = {false, false};
      for (int i = len(rng); i > 0; --i) {
        if (!s.empty() && switch_now(rng)) {
          which = 1 - which;
          context = langs_[which].Start();
        }
        context = langs_[which].Draw(context, rng);
        s.push_back(langs_[which].words[context]);
        used[which] = true;
      }
      if (used[0] && used[1]) return s;
    }
  }

  SyntheticData Run() {
    SyntheticData data(*lexicon_);
    auto cs_rng = SubstreamRng(cfg_.seed, "text/cs");
    std::uniform_real_distribution<double> u01(0, 1);
    size_t a_tokens = 0, b_tokens = 0;
    for (int i = 0; i < cfg_.cs_sentences; ++i) {
      const double r = u01(cs_rng);
      int kind = r < cfg_.cs_fraction_a ? 0
                 : r < cfg_.cs_fraction_a + cfg_.cs_fraction_b ? 1
                                                               : 2;
      if (kind == 2 && cfg_.switch_rate == 0) kind = u01(cs_rng) < 0.5 ? 0 : 1;
      Sentence s = kind == 2 ? Mixed(cs_rng) : Mono(kind, cs_rng);
      if (kind == 0) a_tokens += s.size();
      if (kind == 1) b_tokens += s.size();
      data.cs.sentences.push_back(std::move(s));
    }
    auto a_rng = SubstreamRng(cfg_.seed, "text/" + cfg_.lang_a);
    const size_t a_target = static_cast<size_t>(cfg_.a_text_factor * a_tokens);
    while (data.mono_a.NumTokens() < a_target)
      data.mono_a.sentences.push_back(Mono(0, a_rng));
    // Nested B corpora: one stream, cut at each target size.
    auto b_rng = SubstreamRng(cfg_.seed, "text/" + cfg_.lang_b);
    TextCorpus stream;
    size_t stream_tokens = 0;
    for (double factor : cfg_.b_text_factors) {
      const size_t target = static_cast<size_t>(factor * b_tokens);
      while (stream_tokens < target) {
        stream.sentences.push_back(Mono(1, b_rng));
        stream_tokens += stream.sentences.back().size();
      }
      data.mono_b.push_back(stream);
    }
    data.dev = Segments("dev", cfg_.dev_per_condition);
    data.test = Segments("test", cfg_.test_per_condition);
    data.dev_scores = Scores(data.dev);
    data.test_scores = Scores(data.test);
    return data;
  }

 private:
  void Validate() const {
    auto fail = [](const std::string &what) { throw UsageError("synthetic config: " + what); };
    if (cfg_.lang_a.empty() || cfg_.lang_b.empty() || cfg_.lang_a == cfg_.lang_b)
      fail("language codes must be distinct and non-empty");
    if (cfg_.inventory.size() < 4) fail("at least 4 units are needed");
    std::set<std::string> units(cfg_.inventory.begin(), cfg_.inventory.end());
    if (units.size() != cfg_.inventory.size()) fail("inconsistent inventory: duplicate unit");
    if (cfg_.vocab_a < 2 || cfg_.vocab_b < 2) fail("vocabularies need at least 2 words");
    if (cfg_.cognates < 0 || cfg_.near_homophones < 0 ||
        cfg_.cognates + cfg_.near_homophones > std::min(cfg_.vocab_a, cfg_.vocab_b))
      fail("cognates + near_homophones must fit in both vocabularies");
    if (cfg_.min_pron < 1 || cfg_.max_pron < cfg_.min_pron) fail("bad pronunciation lengths");
    if (cfg_.min_len < 1 || cfg_.max_len < cfg_.min_len || cfg_.max_len < 2)
      fail("bad sentence lengths");
    if (cfg_.successors < 1) fail("successors must be >= 1");
    if (cfg_.switch_rate < 0 || cfg_.switch_rate > 1) fail("switch_rate outside [0, 1]");
    if (cfg_.mixed_start_a < 0 || cfg_.mixed_start_a > 1) fail("mixed_start_a outside [0, 1]");
    if (cfg_.cs_sentences < 1) fail("cs_sentences must be >= 1");
    if (cfg_.cs_fraction_a < 0 || cfg_.cs_fraction_b < 0 ||
        cfg_.cs_fraction_a + cfg_.cs_fraction_b > 1)
      fail("cs fractions must be non-negative and sum to at most 1");
    if (cfg_.b_text_factors.empty()) fail("no B text sizes");
    for (size_t i = 0; i < cfg_.b_text_factors.size(); ++i)
      if (cfg_.b_text_factors[i] <= 0 ||
          (i && cfg_.b_text_factors[i] < cfg_.b_text_factors[i - 1]))
        fail("B text factors must be positive and non-decreasing");
    if (cfg_.a_text_factor <= 0) fail("a_text_factor must be positive");
    if (cfg_.dev_per_condition < 1 || cfg_.test_per_condition < 1)
      fail("dev and test need at least one segment per condition");
  }

  std::vector<std::string> RandomPron(std::mt19937_64 &rng, int lang) {
    // Language-biased unit distribution: 3:1 towards its half.
    const size_t n = cfg_.inventory.size();
    std::vector<double> weights(n);
    for (size_t i = 0; i < n; ++i)
      weights[i] = ((i < n / 2) == (lang == 0)) ? 3.0 : 1.0;
    std::discrete_distribution<size_t> unit(weights.begin(), weights.end());
    std::uniform_int_distribution<int> len(cfg_.min_pron, cfg_.max_pron);
    std::vector<std::string> pron;
    for (int i = len(rng); i > 0; --i) pron.push_back(cfg_.inventory[unit(rng)]);
    return pron;
  }

  void BuildLexicon() {
    auto rng = SubstreamRng(cfg_.seed, "lexicon");
    std::set<std::string> spelled_a, spelled_b;
    std::set<std::string> spelled_all;
    langs_[0].code = cfg_.lang_a;
    langs_[1].code = cfg_.lang_b;
    auto add = [&](int which, const std::vector<std::string> &pron) {
      langs_[which].prons.push_back(pron);
      langs_[which].words.push_back(Spell(pron) + "_" + langs_[which].code);
      spelled_all.insert(Spell(pron));
      (which == 0 ? spelled_a : spelled_b).insert(Spell(pron));
    };
    int guard = 0;
    auto check_guard = [&] {
      if (++guard > 1000000)
        throw UsageError("synthetic config: cannot draw enough distinct words; "
                         "enlarge the inventory or the pronunciation lengths");
    };
    while (static_cast<int>(langs_[0].words.size()) < cfg_.vocab_a) {
      check_guard();
      const auto pron = RandomPron(rng, 0);
      if (!spelled_all.count(Spell(pron))) add(0, pron);
    }
    for (int i = 0; i < cfg_.cognates; ++i) add(1, langs_[0].prons[i]);
    std::uniform_int_distribution<size_t> unit(0, cfg_.inventory.size() - 1);
    for (int i = 0; i < cfg_.near_homophones; ++i) {
      for (;;) {
        check_guard();
        auto pron = langs_[0].prons[cfg_.cognates + i];
        std::uniform_int_distribution<size_t> pos(0, pron.size() - 1);
        pron[pos(rng)] = cfg_.inventory[unit(rng)];
        if (!spelled_all.count(Spell(pron))) {
          add(1, pron);
          break;
        }
      }
    }
    while (static_cast<int>(langs_[1].words.size()) < cfg_.vocab_b) {
      check_guard();
      const auto pron = RandomPron(rng, 1);
      if (!spelled_all.count(Spell(pron))) add(1, pron);
    }
    lexicon_.emplace(cfg_.inventory);
    for (const auto &lang : langs_)
      for (size_t i = 0; i < lang.words.size(); ++i)
        lexicon_->AddPronunciation(lang.words[i], lang.prons[i]);
    auto chain_rng = SubstreamRng(cfg_.seed, "chains");
    for (auto &lang : langs_) BuildChains(&lang, cfg_.successors, chain_rng);
  }

  std::vector<SegmentRef> Segments(const std::string &set, int per_condition) {
    auto rng = SubstreamRng(cfg_.seed, "segments/" + set);
    std::vector<SegmentRef> refs;
    const std::string mixed = cfg_.lang_a + "-" + cfg_.lang_b;
    const std::string conditions[] = {cfg_.lang_a, cfg_.lang_b, mixed};
    for (int k = 0; k < 3; ++k) {
      if (k == 2 && cfg_.switch_rate == 0) break;
      for (int i = 0; i < per_condition; ++i) {
        char id[64];
        std::snprintf(id, sizeof(id), "%s-%s-%03d", set.c_str(), conditions[k].c_str(), i);
        refs.push_back({id, conditions[k], k == 2 ? Mixed(rng) : Mono(k, rng)});
      }
    }
    return refs;
  }

  std::vector<AcousticScores> Scores(const std::vector<SegmentRef> &refs) {
    std::vector<AcousticScores> out;
    for (const auto &ref : refs) {
      auto rng = SubstreamRng(cfg_.seed, "noise/" + ref.utt_id);
      AcousticScores s = SynthAcousticScores(UnitSequence(*lexicon_, ref.words),
                                             cfg_.inventory, cfg_.acoustics, &rng);
      s.utt_id = ref.utt_id;
      out.push_back(std::move(s));
    }
    return out;
  }

  const SyntheticConfig &cfg_;
  ToyLanguage langs_[2];
  std::optional<Lexicon> lexicon_;
};

}  // namespace

std::string MonoBName(const SyntheticConfig &cfg, size_t k) {
  return cfg.lang_b + std::string(k, '+');
}

SyntheticData GenerateSynthetic(const SyntheticConfig &cfg) {
  return Generator(cfg).Run();
}

std::vector<std::string> UnitSequence(const Lexicon &lex,
                                      const std::vector<std::string> &words) {
  std::vector<std::string> units;
  for (const auto &w : words) {
    auto it = lex.Entries().find(w);
    if (it == lex.Entries().end())
      throw FormatError("word '" + w + "' is not in the lexicon");
    const auto &p = it->second.front().units;
    units.insert(units.end(), p.begin(), p.end());
  }
  return units;
}

}  // namespace mgd
