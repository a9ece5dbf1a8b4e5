// acceptance.cc
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

// Acceptance checks for the toolkit. Prints one [PASS]/[FAIL] line per
// criterion and exits non-zero if any fails.
//
// usage: acceptance <path to the mgd binary>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "decoder_test_util.h"
#include "fst_test_util.h"
#include "mgd/base/error.h"
#include "mgd/eval/wer.h"
#include "mgd/experiment/experiment.h"
#include "mgd/fst/compose.h"
#include "mgd/fst/determinize.h"
#include "mgd/fst/enumerate.h"
#include "mgd/fst/minimize.h"
#include "mgd/fst/rmepsilon.h"
#include "mgd/fst/union.h"
#include "mgd/lm/arpa.h"
#include "mgd/lm/interpolate.h"
#include "mgd/lm/kneser_ney.h"
#include "mgd/lm/perplexity.h"
#include "mgd/rescore/nbest_io.h"
#include "mgd/rescore/rescore.h"

namespace mgd {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records a failed check; only the first few are kept in the detail.
  void Fail(const std::string &why) {
    if (pass || std::count(detail.begin(), detail.end(), ';') < 3)
      detail += (pass ? "" : "; ") + why;
    pass = false;
  }
  void Check(bool ok, const std::string &why) {
    if (!ok) Fail(why);
  }
};

std::string Fmt(const char *format, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

fs::path ScratchDir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("mgd_acceptance_" + std::to_string(std::random_device{}()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// --- 1 -------------------------------------------------------------------

Outcome FstOracleEquivalence() {
  using testing::PathMultiset;
  using testing::RandomFst;
  using testing::RandomFstOptions;
  Outcome out;
  const int kInstances = 500;
  std::mt19937_64 rng(101);
  int checked = 0;

  RandomFstOptions general;  // <= 8 states
  general.eps_prob = 0.25;
  RandomFstOptions acceptor = general;
  acceptor.acceptor = true;
  acceptor.eps_prob = 0.0;
  acceptor.num_labels = 2;
  acceptor.arc_prob = 0.5;

  for (int i = 0; i < kInstances; ++i) {
    const StdFst a = RandomFst(rng, general), b = RandomFst(rng, general);
    // union: the path multiset is the disjoint sum of the operands'.
    auto expected = PathMultiset(EnumeratePaths(a, 10));
    const auto from_b = PathMultiset(EnumeratePaths(b, 10));
    expected.insert(expected.end(), from_b.begin(), from_b.end());
    std::sort(expected.begin(), expected.end());
    out.Check(PathMultiset(EnumeratePaths(Union(a, b), 11)) == expected,
              "union instance " + std::to_string(i));
    // compose: the join of the enumerated relations.
    out.Check(LanguageOf(EnumeratePaths(Compose(a, b), 20)) == testing::JoinOracle(a, b),
              "compose instance " + std::to_string(i));
    // rmepsilon
    out.Check(LanguageOf(EnumeratePaths(RmEpsilon(a), 10)) ==
                  LanguageOf(EnumeratePaths(a, 10)),
              "rmepsilon instance " + std::to_string(i));
    // determinize
    const StdFst acc = RandomFst(rng, acceptor);
    const StdFst det = Determinize(acc);
    out.Check(IsDeterministic(det) && LanguageOf(EnumeratePaths(det, 10)) ==
                                          LanguageOf(EnumeratePaths(acc, 10)),
              "determinize instance " + std::to_string(i));
    // minimize, on deterministic input with cycles (paths up to 10 arcs)
    const StdFst dfa = testing::RandomDeterministic(rng, 8, 2);
    const StdFst min = Minimize(dfa);
    out.Check(IsDeterministic(min) && min.NumStates() <= dfa.NumStates() &&
                  LanguageOf(EnumeratePaths(min, 10)) == LanguageOf(EnumeratePaths(dfa, 10)),
              "minimize instance " + std::to_string(i));
    ++checked;
  }
  if (out.pass)
    out.detail = std::to_string(checked) + " instances each of union, compose, rmepsilon, "
                                           "determinize, minimize";
  return out;
}

// --- 2 -------------------------------------------------------------------

Outcome UnionOptimality() {
  using testing::BestCost;
  Outcome out;
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> frames(2, 12), members(2, 3);
  int compared = 0, no_path = 0;
  for (int trial = 0; compared < 200 && trial < 1000; ++trial) {
    std::vector<DecodingGraph> graphs;
    const int k = members(rng);
    for (int m = 0; m < k; ++m)
      graphs.push_back(testing::ToyGraph(rng, "m" + std::to_string(m),
                                         "x" + std::to_string(m) + "_"));
    const DecodingGraph set = BuildMultiGraph(graphs);
    const AcousticScores scores = testing::RandomScores(rng, set.inventory, frames(rng));
    std::map<std::string, double> member_cost;
    double best = kInfinity;
    for (const auto &g : graphs) {
      member_cost[g.graph_id] = BestCost(Decoder(g), scores, {});
      best = std::min(best, member_cost[g.graph_id]);
    }
    const Decoder decoder(set);
    if (best == kInfinity) {
      ++no_path;
      out.Check(BestCost(decoder, scores, {}) == kInfinity,
                "trial " + std::to_string(trial) + ": union found a path no member has");
      continue;
    }
    const DecodeResult r = decoder.Decode(scores, {});
    out.Check(r.best.total_cost == best,
              "trial " + std::to_string(trial) + Fmt(": union %.12g vs min member %.12g",
                                                     r.best.total_cost, best));
    out.Check(member_cost.count(r.best.graph_id) && member_cost[r.best.graph_id] == best,
              "trial " + std::to_string(trial) + ": tag '" + r.best.graph_id +
                  "' is not the argmin member");
    ++compared;
  }
  out.Check(compared >= 200, "only " + std::to_string(compared) + " decodable instances");
  if (out.pass)
    out.detail = std::to_string(compared) + " instances exact, tag = argmin member (" +
                 std::to_string(no_path) + " without any path skipped)";
  return out;
}

// --- 3 -------------------------------------------------------------------

Outcome DecoderExactness() {
  using testing::BestCost;
  using testing::Near;
  Outcome out;
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> frames(1, 12);
  const double beams[] = {1, 2, 4, 8, kInfinity};
  int compared = 0, monotone = 0;
  for (int trial = 0; compared < 200 && trial < 2000; ++trial) {
    // Single graphs and two-member unions alternate.
    const DecodingGraph graph =
        trial % 2 == 0 ? testing::ToyGraph(rng, "g")
                       : BuildMultiGraph({testing::ToyGraph(rng, "p", "p"),
                                          testing::ToyGraph(rng, "q", "q")});
    const Decoder decoder(graph);
    const AcousticScores scores = testing::RandomScores(rng, graph.inventory, frames(rng));
    DecodeOptions opts;
    opts.loop_cost = 0.5 + (trial % 3) * 0.25;
    const auto oracle = testing::AlignmentOracle(graph.fst, scores, opts.loop_cost);
    const double decoded = BestCost(decoder, scores, opts);
    const std::string where = "trial " + std::to_string(trial);
    if (oracle.total == kInfinity) {
      out.Check(decoded == kInfinity, where + ": decoder found a path the oracle does not");
    } else {
      out.Check(Near(decoded, oracle.total),
                where + Fmt(": decoder %.12g vs oracle %.12g", decoded, oracle.total));
      ++compared;
    }
    double previous = kInfinity;
    bool ok = true;
    for (double beam : beams) {
      DecodeOptions b = opts;
      b.beam = beam;
      const double cost = BestCost(decoder, scores, b);
      ok = ok && cost <= previous;
      previous = cost;
    }
    out.Check(ok, where + ": best cost got worse with a wider beam");
    monotone += ok;
  }
  out.Check(compared >= 200, "only " + std::to_string(compared) + " decodable instances");
  if (out.pass)
    out.detail = std::to_string(compared) + " instances equal the alignment oracle; beam "
                 "monotonicity on all " + std::to_string(monotone) + " instances";
  return out;
}

// --- 4 -------------------------------------------------------------------

Outcome LmCorrectness() {
  Outcome out;
  double worst = 0;
  int models = 0;
  auto check_normalized = [&](const NGramModel &m, const std::string &name) {
    std::vector<NGram> histories{{}};
    for (int k = 1; k < m.Order(); ++k)
      for (const auto &[ngram, e] : m.NGrams(k))
        if (m.IsHistory(ngram)) histories.push_back(ngram);
    for (const auto &h : histories) {
      const double err = std::fabs(m.SumProbabilities(h) - 1.0);
      worst = std::max(worst, err);
      out.Check(err <= 1e-6, name + Fmt(": a history sums to 1 %+.3g", err));
    }
    ++models;
  };

  // Random corpora, every order and both discount modes.
  std::mt19937_64 rng(404);
  for (int order = 1; order <= kMaxNGramOrder; ++order)
    for (bool auto_d : {false, true})
      for (int rep = 0; rep < 4; ++rep) {
        TextCorpus corpus;
        std::uniform_int_distribution<int> len(1, 8), word(0, 4 + rep * 3);
        for (int i = 0; i < 60; ++i) {
          Sentence s;
          for (int j = len(rng); j > 0; --j) s.push_back("w" + std::to_string(word(rng)));
          corpus.sentences.push_back(s);
        }
        KneserNeyOptions opts;
        opts.order = order;
        opts.auto_discount = auto_d;
        check_normalized(TrainKneserNey(corpus, opts),
                         "random order-" + std::to_string(order) + " model");
      }

  // The models of the default experiment, and their interpolation.
  SyntheticConfig cfg;
  const SyntheticData data = GenerateSynthetic(cfg);
  std::map<std::string, NGramModel> trained;
  std::vector<std::pair<std::string, const TextCorpus *>> corpora{{"cs", &data.cs},
                                                                  {cfg.lang_a, &data.mono_a}};
  for (size_t k = 0; k < data.mono_b.size(); ++k)
    corpora.emplace_back(MonoBName(cfg, k), &data.mono_b[k]);
  for (const auto &[name, corpus] : corpora)
    for (int order : {3, 4}) {
      KneserNeyOptions opts;
      opts.order = order;
      NGramModel m = TrainKneserNey(*corpus, opts);
      check_normalized(m, name + " order " + std::to_string(order));
      if (order == 3) trained.emplace(name, std::move(m));
    }

  // Uniform unigram fixture.
  const int kVocab = 25;
  std::vector<std::string> vocab{"<s>"};
  for (int i = 0; i + 1 < kVocab; ++i) vocab.push_back("u" + std::to_string(i));
  vocab.push_back("</s>");
  NGramModel uniform(1, vocab);
  uniform.Set({0}, {kLog10Zero, 0.0});
  for (int i = 1; i <= kVocab; ++i)
    uniform.Set({static_cast<WordId>(i)}, {std::log10(1.0 / kVocab), 0.0});
  TextCorpus text;
  std::uniform_int_distribution<int> uword(0, kVocab - 2), ulen(1, 9);
  for (int i = 0; i < 50; ++i) {
    Sentence s;
    for (int j = ulen(rng); j > 0; --j) s.push_back("u" + std::to_string(uword(rng)));
    text.sentences.push_back(s);
  }
  const double uniform_ppl = Perplexity(uniform, text).perplexity;
  out.Check(std::fabs(uniform_ppl - kVocab) <= 1e-9,
            Fmt("uniform unigram perplexity %.15g, expected %.0f", uniform_ppl, kVocab));

  // Tuned interpolation weight on the dev text.
  TextCorpus dev;
  for (const auto &r : data.dev) dev.sentences.push_back(r.words);
  int pairs = 0;
  for (const auto &[a, b] : std::vector<std::pair<std::string, std::string>>{
           {"cs", "nl"}, {"cs", "nl+"}, {"cs", "nl++"}, {"cs", "fy"}, {"fy", "nl++"}}) {
    const NGramModel &ma = trained.at(a), &mb = trained.at(b);
    const InterpolationTuning t = TuneInterpolationWeight(ma, mb, dev);
    const double pa = Perplexity(ma, dev).perplexity, pb = Perplexity(mb, dev).perplexity;
    out.Check(t.perplexity <= std::min(pa, pb) + 1e-9,
              a + "/" + b + Fmt(": ppl(lambda*) %.12g > min(%.12g, %.12g)", t.perplexity, pa, pb));
    check_normalized(InterpolateStatic(ma, mb, t.lambda), "interpolated " + a + "/" + b);
    ++pairs;
  }
  if (out.pass)
    out.detail = std::to_string(models) + " models normalized (worst " + Fmt("%.1e", worst) +
                 "), uniform ppl " + Fmt("%.12g", uniform_ppl) + ", ppl(lambda*) bound on " +
                 std::to_string(pairs) + " dev pairs";
  return out;
}

// --- 5 -------------------------------------------------------------------

// Adds a length-dependent offset to another scorer.
class PerturbedScorer : public SequenceScorer {
 public:
  explicit PerturbedScorer(std::shared_ptr<const SequenceScorer> base)
      : base_(std::move(base)) {}
  double Cost(const std::vector<std::string> &words) const override {
    return base_->Cost(words) + 1.5 + 0.37 * words.size();
  }

 private:
  std::shared_ptr<const SequenceScorer> base_;
};

std::string HypKey(const Hypothesis &h) {
  std::string key = h.graph_id;
  for (const auto &w : h.words) key += " " + w;
  return key;
}

Outcome RescoringContract() {
  Outcome out;
  ExperimentConfig cfg;
  cfg.data.test_per_condition = 15;
  cfg.roster = {"cs", "fy", "nl++"};
  cfg.nbest = 50;
  const fs::path dir = ScratchDir() / "rescore";
  RunExperiment(cfg, dir.string());
  const auto lists = ReadNBestFile((dir / "decode" / "union-fy-nl++.nbest").string());

  std::map<std::string, std::shared_ptr<const SequenceScorer>> models;
  for (const char *g : {"cs", "fy", "nl++"})
    models[g] = std::make_shared<NGramScorer>(
        ReadArpaFile((dir / "lm" / (std::string(g) + ".rescore.arpa")).string()));
  RescoreConfig base;
  base.models = models;
  base.mu = 0.5;
  RescoreConfig identity = base;
  identity.mu = 1.0;
  RescoreConfig perturbed = base;
  perturbed.models["nl++"] = std::make_shared<PerturbedScorer>(models["nl++"]);

  size_t hyps = 0, changed_target = 0;
  std::map<std::string, size_t> per_graph;
  for (const auto &list : lists) {
    const auto rescored = RescoreNBest(list.hyps, base);
    const auto same = RescoreNBest(list.hyps, identity);
    const auto moved = RescoreNBest(list.hyps, perturbed);
    std::map<std::string, const Hypothesis *> before, after, after_perturbed;
    for (const auto &h : list.hyps) before[HypKey(h)] = &h;
    for (const auto &h : rescored) after[HypKey(h)] = &h;
    for (const auto &h : moved) after_perturbed[HypKey(h)] = &h;
    out.Check(rescored.size() == list.hyps.size(), list.utt_id + ": list size changed");
    for (const auto &[key, h] : before) {
      ++hyps;
      ++per_graph[h->graph_id];
      if (!after.count(key) || !after_perturbed.count(key)) {
        out.Fail(list.utt_id + ": hypothesis lost");
        continue;
      }
      out.Check(after[key]->am_cost == h->am_cost, list.utt_id + ": am_cost changed");
      out.Check(after_perturbed[key]->am_cost == h->am_cost, list.utt_id + ": am_cost changed");
      // Only hypotheses of the perturbed graph may see a new LM cost.
      if (h->graph_id == "nl++") {
        changed_target += after_perturbed[key]->lm_cost != after[key]->lm_cost;
      } else {
        out.Check(after_perturbed[key]->lm_cost == after[key]->lm_cost,
                  list.utt_id + ": a " + h->graph_id + " hypothesis moved when nl++ changed");
      }
    }
    // mu = 1 keeps the first-pass ranking.
    bool same_order = same.size() == list.hyps.size();
    for (size_t i = 0; same_order && i < same.size(); ++i)
      same_order = HypKey(same[i]) == HypKey(list.hyps[i]) &&
                   same[i].total_cost == list.hyps[i].total_cost;
    out.Check(same_order, list.utt_id + ": mu=1 changed the ranking");
  }
  out.Check(per_graph["nl++"] > 0 && per_graph.size() >= 2,
            "the lists do not mix hypotheses of several graphs");
  out.Check(changed_target == per_graph["nl++"],
            "some nl++ hypotheses ignored the perturbed model");
  if (out.pass) {
    std::ostringstream d;
    d << hyps << " hypotheses in " << lists.size() << " lists (";
    bool first = true;
    for (const auto &[g, n] : per_graph) {
      d << (first ? "" : ", ") << g << ' ' << n;
      first = false;
    }
    d << "): am_cost preserved, mu=1 a no-op, perturbing nl++ moves exactly its "
      << changed_target << " hypotheses";
    out.detail = d.str();
  }
  return out;
}

// --- 6 -------------------------------------------------------------------

// Pooled WER per condition for the first-pass and rescored rows.
using Table = std::map<std::pair<std::string, bool>, std::map<std::string, double>>;

Table Tabulate(const ExperimentResult &r) {
  Table t;
  for (const auto &row : r.rows) {
    auto &cells = t[{row.system, row.rescored}];
    for (const auto &[c, counts] : row.report.by_condition) cells[c] = counts.Wer();
    cells["all"] = row.report.all.Wer();
  }
  return t;
}

Outcome DirectionalReplication(std::vector<Table> *tables) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  const std::string a = cfg.data.lang_a, b = cfg.data.lang_b,
                    mixed = cfg.data.lang_a + "-" + cfg.data.lang_b,
                    bpp = MonoBName(cfg.data, cfg.data.b_text_factors.size() - 1);
  // The rows the comparison needs: cs, cs+B++ and union-B++.
  cfg.roster = {"cs", bpp};
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    cfg.data.seed = seed;
    tables->push_back(Tabulate(
        RunExperiment(cfg, (ScratchDir() / ("seed" + std::to_string(seed))).string())));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  auto median = [&](const std::string &system, bool rescored, const std::string &cond) {
    std::vector<double> v;
    for (const auto &t : *tables) v.push_back(t.at({system, rescored}).at(cond));
    return Median(v);
  };
  const std::string uni = "union-" + bpp, interp = "cs+" + bpp;
  const double b_union = median(uni, false, b), b_interp = median(interp, false, b);
  out.Check(b_union < b_interp,
            b + Fmt("-only: union %.2f is not below interpolated %.2f", b_union, b_interp));
  std::ostringstream d;
  d << b << "-only " << Fmt("%.2f", b_union) << " < " << Fmt("%.2f", b_interp)
    << " (interpolated)";
  for (const std::string &cond : {a, mixed}) {
    const double u = median(uni, false, cond), base = median("cs", false, cond);
    out.Check(u - base <= 1.0, cond + Fmt(": union %.2f vs single-graph %.2f", u, base));
    d << "; " << cond << " " << Fmt("%.2f", u) << " vs " << Fmt("%.2f", base) << " ("
      << Fmt("%+.2f", u - base) << ")";
  }
  out.Check(seconds < 600, Fmt("took %.0f s", seconds));
  d << "; median WER over 5 seeds, " << Fmt("%.0f s", seconds);
  if (out.pass) out.detail = d.str();
  else out.detail += " [" + d.str() + "]";
  return out;
}

// Informational: the same medians against the interpolated baseline and
// after rescoring.
void PrintMedians(const std::vector<Table> &tables) {
  if (tables.empty()) return;
  const auto &first = tables.front();
  std::vector<std::string> conds;
  for (const auto &[c, v] : first.begin()->second) conds.push_back(c);
  std::printf("       median WER over %zu seeds:", tables.size());
  for (const auto &c : conds) std::printf(" %8s", c.c_str());
  std::printf("\n");
  for (const auto &[key, cells] : first) {
    std::printf("       %-28s", (key.first + (key.second ? " +rescore" : "")).c_str());
    for (const auto &c : conds) {
      std::vector<double> v;
      for (const auto &t : tables) v.push_back(t.at(key).at(c));
      std::printf(" %8.2f", Median(v));
    }
    std::printf("\n");
  }
}

// --- 7 -------------------------------------------------------------------

size_t Levenshtein(const std::vector<std::string> &r, const std::vector<std::string> &h) {
  std::vector<size_t> prev(h.size() + 1), cur(h.size() + 1);
  for (size_t j = 0; j <= h.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= r.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= h.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (r[i - 1] != h[j - 1])});
    std::swap(prev, cur);
  }
  return prev[h.size()];
}

Outcome WerScorer() {
  Outcome out;
  std::mt19937_64 rng(707);
  std::uniform_int_distribution<int> rlen(1, 10), hlen(0, 10), word(0, 5), tag(0, 3);
  const char *suffixes[] = {"", "_fy", "_nl", "_fy_nl"};
  auto sentence = [&](int n) {
    std::vector<std::string> s;
    for (int i = 0; i < n; ++i) s.push_back("w" + std::to_string(word(rng)) + suffixes[tag(rng)]);
    return s;
  };
  std::vector<SegmentRef> refs;
  std::map<std::string, std::vector<std::string>> hyps;
  const char *conditions[] = {"fy", "nl", "fy-nl"};
  size_t oracle_errors = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto r = sentence(rlen(rng)), h = sentence(hlen(rng));
    // Scoring compares words with their language tags removed.
    std::vector<std::string> rs, hs;
    for (const auto &w : r) rs.push_back(w.substr(0, w.find('_')));
    for (const auto &w : h) hs.push_back(w.substr(0, w.find('_')));
    const EditCounts e = ComputeWer(StripLanguageTags(r), StripLanguageTags(h));
    const size_t expected = Levenshtein(rs, hs);
    out.Check(static_cast<size_t>(e.Errors()) == expected && e.ref_words == long(r.size()),
              "pair " + std::to_string(i) + ": " + std::to_string(e.Errors()) + " errors vs " +
                  std::to_string(expected));
    const std::string id = "u" + std::to_string(i);
    refs.push_back({id, conditions[i % 3], r});
    if (i % 17 != 0) {
      hyps[id] = h;
      oracle_errors += expected;
    } else {
      oracle_errors += r.size();  // a missing hypothesis deletes every word
    }
    for (const auto &w : r)
      out.Check(StripLanguageTag(StripLanguageTag(w)) == StripLanguageTag(w),
                "tag stripping is not idempotent on '" + w + "'");
  }
  const WerReport full = ReportByCondition(refs, hyps, LanguageTags{});
  out.Check(static_cast<size_t>(full.all.Errors()) == oracle_errors,
            "report errors " + std::to_string(full.all.Errors()) + " vs oracle " +
                std::to_string(oracle_errors));
  // Pooling identity on reports built from random subsets.
  int reports = 0;
  for (int k = 0; k < 50; ++k) {
    std::vector<SegmentRef> subset;
    for (const auto &r : refs)
      if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) subset.push_back(r);
    if (subset.empty()) continue;
    const WerReport report = ReportByCondition(subset, hyps, LanguageTags{});
    EditCounts sum;
    for (const auto &c : report.conditions) sum += report.by_condition.at(c);
    out.Check(sum.ref_words == report.all.ref_words && sum.sub == report.all.sub &&
                  sum.del == report.all.del && sum.ins == report.all.ins,
              "report " + std::to_string(k) + " breaks the pooling identity");
    ++reports;
  }
  if (out.pass)
    out.detail = "1000 pairs and their pooled report equal the edit-distance oracle; "
                 "pooling identity on " +
                 std::to_string(reports) + " reports; tag stripping idempotent";
  return out;
}

// --- 8 -------------------------------------------------------------------

Outcome Reproducibility(const std::string &cli) {
  Outcome out;
  if (cli.empty() || !fs::exists(cli)) {
    out.Fail("the mgd binary was not given");
    return out;
  }
  std::vector<std::string> csv;
  for (const char *run : {"run1", "run2"}) {
    const fs::path dir = ScratchDir() / run;
    const std::string cmd = "\"" + cli + "\" run-experiment --seed 1 --workdir \"" +
                            dir.string() + "\" --csv \"" + (dir.string() + ".csv") +
                            "\" > /dev/null";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) {
      out.Fail(std::string(run) + " exited with status " + std::to_string(rc));
      return out;
    }
    std::ifstream in(dir.string() + ".csv", std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    csv.push_back(ss.str());
  }
  const auto rows = std::count(csv[0].begin(), csv[0].end(), '\n');
  out.Check(rows > 1, "empty report");
  out.Check(csv[0] == csv[1], "the two reports differ");
  if (out.pass)
    out.detail = "two full-grid runs, seed 1: byte-identical CSV (" + std::to_string(csv[0].size()) +
                 " bytes, " + std::to_string(rows - 1) + " rows)";
  return out;
}

}  // namespace
}  // namespace mgd

int main(int argc, char **argv) {
  using namespace mgd;
  const std::string cli = argc > 1 ? argv[1] : "";
  std::vector<Table> tables;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"FST oracle equivalence", FstOracleEquivalence},
      {"union optimality", UnionOptimality},
      {"decoder exactness and beam monotonicity", DecoderExactness},
      {"LM correctness", LmCorrectness},
      {"rescoring contract", RescoringContract},
      {"directional replication", [&] { return DirectionalReplication(&tables); }},
      {"WER scorer", WerScorer},
      {"reproducibility", [&] { return Reproducibility(cli); }},
  };
  const double limits[] = {60, 60, 0, 0, 0, 600, 0, 0};
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o.Fail(std::string("exception: ") + e.what());
    }
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limits[i] > 0 && s >= limits[i])
      o.Fail("runtime " + std::to_string(s) + " s over the " + std::to_string(limits[i]) +
             " s limit");
    std::printf("[%s] %zu. %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), s);
    if (i == 5) PrintMedians(tables);
    std::fflush(stdout);
    failed += !o.pass;
  }
  fs::remove_all(ScratchDir());
  return failed == 0 ? 0 : 1;
}
