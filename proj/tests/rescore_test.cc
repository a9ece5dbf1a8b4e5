// rescore_test.cc
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

#include <map>
#include <set>
#include <tuple>
#include <random>
#include <sstream>

#include "doctest.h"
#include "graph_test_util.h"
#include "mgd/lm/kneser_ney.h"
#include "mgd/rescore/nbest_io.h"
#include "mgd/rescore/rescore.h"

namespace mgd {
namespace {

// Cost looked up by the space-joined word sequence; `fallback` otherwise.
class TableScorer : public SequenceScorer {
 public:
  TableScorer(std::map<std::string, double> table, double fallback)
      : table_(std::move(table)), fallback_(fallback) {}
  double Cost(const std::vector<std::string> &words) const override {
    auto it = table_.find(JoinWords(words));
    return it == table_.end() ? fallback_ : it->second;
  }

 private:
  std::map<std::string, double> table_;
  double fallback_;
};

// Cost = scale * number of words + offset.
class LengthScorer : public SequenceScorer {
 public:
  LengthScorer(double scale, double offset) : scale_(scale), offset_(offset) {}
  double Cost(const std::vector<std::string> &words) const override {
    return scale_ * words.size() + offset_;
  }

 private:
  double scale_, offset_;
};

Hypothesis Hyp(const std::string &graph, const std::string &words, double am,
               double lm) {
  Hypothesis h;
  h.graph_id = graph;
  std::istringstream in(words);
  for (std::string w; in >> w;) h.words.push_back(w);
  h.am_cost = am;
  h.lm_cost = lm;
  h.total_cost = am + lm;
  return h;
}

std::vector<Hypothesis> RandomList(std::mt19937_64 &rng, int n) {
  const char *graphs[] = {"cs", "fy", "nl"};
  const char *vocab[] = {"a", "b", "c", "d"};
  std::uniform_real_distribution<double> cost(0, 20);
  std::uniform_int_distribution<int> len(0, 4), pick(0, 3), graph(0, 2);
  std::vector<Hypothesis> hyps;
  for (int i = 0; i < n; ++i) {
    std::string words;
    for (int j = len(rng); j > 0; --j) words += std::string(vocab[pick(rng)]) + " ";
    hyps.push_back(Hyp(graphs[graph(rng)], words, cost(rng), cost(rng)));
  }
  std::stable_sort(hyps.begin(), hyps.end(), [](const auto &a, const auto &b) {
    return a.total_cost < b.total_cost;
  });
  return hyps;
}

RescoreConfig LengthConfig(double mu) {
  RescoreConfig cfg;
  cfg.mu = mu;
  cfg.models["cs"] = std::make_shared<LengthScorer>(1.5, 0.25);
  cfg.models["fy"] = std::make_shared<LengthScorer>(0.5, 2.0);
  cfg.models["nl"] = std::make_shared<LengthScorer>(3.0, 0.0);
  return cfg;
}

TEST_CASE("rescoring preserves acoustic costs and decomposition") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto hyps = RandomList(rng, 1 + trial % 20);
    RescoreConfig cfg = LengthConfig(0.1 * (trial % 11));
    cfg.lm_scale = 0.5 + (trial % 4);
    const auto out = RescoreNBest(hyps, cfg);
    REQUIRE(out.size() == hyps.size());
    // Pair outputs with inputs by identity (graph, words, am).
    std::multiset<std::tuple<std::string, std::string, double>> before, after;
    for (const auto &h : hyps) before.emplace(h.graph_id, JoinWords(h.words), h.am_cost);
    for (const auto &h : out) after.emplace(h.graph_id, JoinWords(h.words), h.am_cost);
    CHECK(before == after);
    for (size_t i = 0; i < out.size(); ++i) {
      CHECK(std::fabs(out[i].am_cost + out[i].lm_cost - out[i].total_cost) < 1e-6);
      if (i) CHECK(out[i - 1].total_cost <= out[i].total_cost);
    }
  }
}

TEST_CASE("mu = 1 leaves the list unchanged") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto hyps = RandomList(rng, 10);
    const auto out = RescoreNBest(hyps, LengthConfig(1.0));
    REQUIRE(out.size() == hyps.size());
    for (size_t i = 0; i < out.size(); ++i) {
      CHECK(out[i].words == hyps[i].words);
      CHECK(out[i].lm_cost == hyps[i].lm_cost);
      CHECK(out[i].total_cost == hyps[i].total_cost);
    }
  }
}

TEST_CASE("rescoring model preferring the second hypothesis swaps the pair") {
  const std::vector<Hypothesis> hyps{Hyp("nl", "de kat", 10, 2), Hyp("nl", "de kas", 10, 3)};
  RescoreConfig cfg;
  cfg.mu = 0;
  cfg.models["nl"] = std::make_shared<TableScorer>(
      std::map<std::string, double>{{"de kat", 6}, {"de kas", 1}}, 100);
  const auto out = RescoreNBest(hyps, cfg);
  CHECK(JoinWords(out[0].words) == "de kas");
  CHECK(out[0].lm_cost == 1);
  CHECK(out[0].total_cost == 11);
  CHECK(out[1].total_cost == 16);
}

TEST_CASE("changing one graph's model only moves that graph's hypotheses") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto hyps = RandomList(rng, 15);
    RescoreConfig base = LengthConfig(0.3);
    RescoreConfig perturbed = base;
    perturbed.models["fy"] = std::make_shared<LengthScorer>(7.0, 1.0);
    std::map<std::tuple<std::string, std::string, double>, double> a, b;
    for (const auto &h : RescoreNBest(hyps, base))
      a[{h.graph_id, JoinWords(h.words), h.am_cost}] = h.total_cost;
    for (const auto &h : RescoreNBest(hyps, perturbed))
      b[{h.graph_id, JoinWords(h.words), h.am_cost}] = h.total_cost;
    for (const auto &[key, total] : a) {
      if (std::get<0>(key) == "fy") {
        const auto &words = std::get<1>(key);
        const size_t n = words.empty() ? 0 : std::count(words.begin(), words.end(), ' ') + 1;
        // 0.7 * (7n + 1) replaces 0.7 * (0.5n + 2).
        CHECK(b.at(key) - total == doctest::Approx(0.7 * (6.5 * n - 1)));
      } else {
        CHECK(b.at(key) == total);
      }
    }
  }
}

TEST_CASE("ranking is invariant to scaling the rescoring costs at mu = 0") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    auto hyps = RandomList(rng, 12);
    // The argmin is scale-free only among hypotheses with a common
    // acoustic cost.
    for (auto &h : hyps) {
      h.am_cost = 4;
      h.total_cost = h.am_cost + h.lm_cost;
    }
    RescoreConfig cfg;
    cfg.mu = 0;
    std::map<std::string, double> table;
    std::uniform_real_distribution<double> cost(0, 10);
    for (const auto &h : hyps) table.emplace(JoinWords(h.words), cost(rng));
    for (const char *g : {"cs", "fy", "nl"})
      cfg.models[g] = std::make_shared<TableScorer>(table, 0);
    cfg.lm_scale = 1;
    const auto a = RescoreNBest(hyps, cfg);
    cfg.lm_scale = 3.5;
    const auto b = RescoreNBest(hyps, cfg);
    CHECK(JoinWords(a[0].words) == JoinWords(b[0].words));
    for (size_t i = 0; i < a.size(); ++i) CHECK(JoinWords(a[i].words) == JoinWords(b[i].words));
  }
}

TEST_CASE("mu = 0 with the decoding LM reproduces LM sentence costs") {
  std::mt19937_64 rng(7);
  const Lexicon lex = testing::RandomLexicon(rng, 6, "w");
  KneserNeyOptions opts;
  opts.order = 3;
  const NGramModel model = TrainKneserNey(testing::RandomWordCorpus(rng, lex, 40), opts);
  // Oracle: backoff probabilities summed word by word.
  auto oracle = [&](const std::vector<std::string> &words) {
    NGram history{model.BosId()};
    double log10p = 0;
    std::vector<std::string> with_end = words;
    with_end.push_back("</s>");
    for (const auto &w : with_end) {
      const WordId id = model.IdOrUnk(w);
      log10p += model.LogProb(id, history);
      history.push_back(id);
      if (history.size() >= static_cast<size_t>(model.Order()))
        history.erase(history.begin());
    }
    return -log10p * std::log(10.0);
  };
  RescoreConfig cfg;
  cfg.mu = 0;
  cfg.lm_scale = 1;
  cfg.models["g"] = std::make_shared<NGramScorer>(model);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Hypothesis> hyps;
    const TextCorpus sents = testing::RandomWordCorpus(rng, lex, 8);
    std::uniform_real_distribution<double> am(0, 5);
    for (const auto &s : sents.sentences) hyps.push_back(Hyp("g", JoinWords(s), am(rng), 1.0));
    const auto out = RescoreNBest(hyps, cfg);
    std::vector<std::pair<double, std::string>> expected;
    for (const auto &h : hyps)
      expected.emplace_back(h.am_cost + oracle(h.words), JoinWords(h.words));
    std::stable_sort(expected.begin(), expected.end(),
                     [](const auto &a, const auto &b) { return a.first < b.first; });
    for (size_t i = 0; i < out.size(); ++i) {
      CHECK(out[i].lm_cost == doctest::Approx(oracle(out[i].words)).epsilon(1e-12));
      CHECK(out[i].total_cost == doctest::Approx(expected[i].first).epsilon(1e-12));
    }
  }
}

TEST_CASE("rescoring errors") {
  const std::vector<Hypothesis> hyps{Hyp("fy", "a", 1, 1), Hyp("B++", "b", 1, 2)};
  RescoreConfig cfg;
  cfg.models["fy"] = std::make_shared<LengthScorer>(1, 0);
  try {
    RescoreNBest(hyps, cfg);
    FAIL("expected an error");
  } catch (const UsageError &e) {
    CHECK(std::string(e.what()).find("'B++'") != std::string::npos);
  }
  cfg.models["B++"] = std::make_shared<LengthScorer>(1, 0);
  cfg.mu = 1.5;
  CHECK_THROWS_AS(RescoreNBest(hyps, cfg), UsageError);
  cfg.mu = 0.5;
  cfg.lm_scale = 0;
  CHECK_THROWS_AS(RescoreNBest(hyps, cfg), UsageError);
}

TEST_CASE("n-best file round trip") {
  std::vector<UtteranceNBest> lists{
      {"u1", {Hyp("cs", "hûs_fy huis_nl", 10.5, 3.25), Hyp("cs", "", 11, 4)}},
      {"u2", {Hyp("nl++", "de kat", 1.0 / 3, 2.0 / 3)}}};
  std::stringstream ss;
  WriteNBest(lists, ss);
  const std::string text = ss.str();
  CHECK(text.find("u1 1 cs 10.5 3.25 13.75 hûs_fy huis_nl\n") == 0);
  const auto back = ReadNBest(ss, "mem");
  REQUIRE(back.size() == 2);
  CHECK(back[0].hyps[1].words.empty());
  CHECK(back[1].hyps[0].graph_id == "nl++");
  CHECK(back[1].hyps[0].am_cost == doctest::Approx(1.0 / 3).epsilon(1e-11));
  std::stringstream again;
  WriteNBest(back, again);
  CHECK(again.str() == text);

  std::stringstream bad_rank("u1 2 cs 1 1 2 a\n");
  CHECK_THROWS_AS(ReadNBest(bad_rank, "mem"), FormatError);
  std::stringstream split("u1 1 cs 1 1 2 a\nu2 1 cs 1 1 2\nu1 2 cs 1 1 2\n");
  CHECK_THROWS_AS(ReadNBest(split, "mem"), FormatError);
  std::stringstream short_line("u1 1 cs 1 1\n");
  CHECK_THROWS_AS(ReadNBest(short_line, "mem"), FormatError);
}

}  // namespace
}  // namespace mgd
