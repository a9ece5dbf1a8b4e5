// eval_test.cc
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

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "doctest.h"
#include "mgd/base/error.h"
#include "mgd/eval/wer.h"

namespace mgd {
namespace {

using Words = std::vector<std::string>;

Words Split(const std::string &text) {
  std::istringstream in(text);
  Words out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Textbook Levenshtein distance, two rolling rows.
long ClassicDistance(const Words &a, const Words &b) {
  std::vector<long> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                         prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Every alignment enumerated recursively; lexicographic minimum of
// (errors, subs, dels).
std::tuple<long, long, long> ExhaustiveAlignment(const Words &r, const Words &h) {
  std::tuple<long, long, long> best{1 << 20, 0, 0};
  std::function<void(size_t, size_t, long, long, long)> go =
      [&](size_t i, size_t j, long s, long d, long ins) {
        if (i == r.size() && j == h.size()) {
          best = std::min(best, std::make_tuple(s + d + ins, s, d));
          return;
        }
        if (i < r.size() && j < h.size())
          go(i + 1, j + 1, s + (r[i] != h[j]), d, ins);
        if (i < r.size()) go(i + 1, j, s, d + 1, ins);
        if (j < h.size()) go(i, j + 1, s, d, ins + 1);
      };
  go(0, 0, 0, 0, 0);
  return best;
}

Words RandomWords(std::mt19937_64 &rng, int min_len, int max_len, int vocab = 4) {
  std::uniform_int_distribution<int> len(min_len, max_len), pick(0, vocab - 1);
  Words w;
  for (int i = len(rng); i > 0; --i) w.push_back(std::string(1, 'a' + pick(rng)));
  return w;
}

TEST_CASE("language tag stripping") {
  CHECK(StripLanguageTags({"hûs_fy", "huis_nl"}) == Words{"hûs", "huis"});
  CHECK(StripLanguageTags({"hûs", "huis"}) == Words{"hûs", "huis"});
  CHECK(StripLanguageTag("a_b") == "a_b");
  CHECK(StripLanguageTag("_nl") == "_nl");
  CHECK(StripLanguageTag("x_nl_fy") == "x");
  CHECK(LanguageOf("x_nl") == "nl");
  CHECK(LanguageOf("x") == "");
  LanguageTags custom;
  custom.delimiter = '@';
  custom.codes = {"en"};
  CHECK(StripLanguageTag("cat@en", custom) == "cat");
  CHECK(StripLanguageTag("cat_nl", custom) == "cat_nl");

  std::mt19937_64 rng(1);
  const char *pieces[] = {"a", "_", "fy", "nl", "b_", "_x"};
  std::uniform_int_distribution<int> pick(0, 5), len(1, 4);
  for (int i = 0; i < 500; ++i) {
    std::string token;
    for (int k = len(rng); k > 0; --k) token += pieces[pick(rng)];
    const std::string once = StripLanguageTag(token);
    CHECK(StripLanguageTag(once) == once);
  }
}

TEST_CASE("WER examples") {
  const EditCounts same = ComputeWer(Split("a b c"), Split("a b c"));
  CHECK(same.Errors() == 0);
  CHECK(same.Wer() == 0.0);
  const EditCounts one = ComputeWer(Split("a b c"), Split("a x c"));
  CHECK(one.sub == 1);
  CHECK(one.del == 0);
  CHECK(one.ins == 0);
  CHECK(one.Wer() == doctest::Approx(100.0 / 3));
  const EditCounts del = ComputeWer(Split("a b c"), {});
  CHECK(del.del == 3);
  CHECK(del.Wer() == 100.0);
  const EditCounts ins = ComputeWer(Split("a"), Split("a b c"));
  CHECK(ins.ins == 2);
  CHECK(ins.Wer() == 200.0);
  // "a b" vs "b c": two substitutions or one deletion plus one insertion;
  // the tie goes to fewer substitutions.
  const EditCounts tie = ComputeWer(Split("a b"), Split("b c"));
  CHECK(tie.Errors() == 2);
  CHECK(tie.sub == 0);
  CHECK_THROWS_AS(ComputeWer({}, Split("a")), FormatError);
}

TEST_CASE("WER matches the classic DP on random pairs") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const Words ref = RandomWords(rng, 1, 12), hyp = RandomWords(rng, 0, 12);
    const EditCounts c = ComputeWer(ref, hyp);
    CHECK(c.Errors() == ClassicDistance(ref, hyp));
    CHECK(c.ref_words == static_cast<long>(ref.size()));
    CHECK(c.sub >= 0);
    CHECK(c.del >= 0);
    CHECK(c.ins >= 0);
    // Lengths pin down the difference between deletions and insertions.
    CHECK(c.del - c.ins == static_cast<long>(ref.size()) - static_cast<long>(hyp.size()));
  }
}

TEST_CASE("WER tie-breaking matches exhaustive alignment") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Words ref = RandomWords(rng, 1, 6, 3), hyp = RandomWords(rng, 0, 6, 3);
    const EditCounts c = ComputeWer(ref, hyp);
    CHECK(std::make_tuple(c.Errors(), c.sub, c.del) == ExhaustiveAlignment(ref, hyp));
  }
}

TEST_CASE("edit distance metric properties") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const Words a = RandomWords(rng, 1, 8), b = RandomWords(rng, 1, 8),
                c = RandomWords(rng, 1, 8);
    const long ab = ComputeWer(a, b).Errors(), ba = ComputeWer(b, a).Errors();
    const long bc = ComputeWer(b, c).Errors(), ac = ComputeWer(a, c).Errors();
    CHECK(ab >= 0);
    CHECK(ComputeWer(a, a).Errors() == 0);
    CHECK(ab == ba);
    CHECK(ac <= ab + bc);
    if (ab == 0) CHECK(a == b);
  }
}

TEST_CASE("consistent tags do not change WER") {
  std::mt19937_64 rng(5);
  // Each base word carries a fixed tag.
  auto tag = [](const Words &w) {
    Words out;
    for (const auto &x : w) out.push_back(x + (x < "c" ? "_fy" : "_nl"));
    return out;
  };
  for (int trial = 0; trial < 300; ++trial) {
    const Words ref = RandomWords(rng, 1, 8), hyp = RandomWords(rng, 0, 8);
    const EditCounts plain = ComputeWer(ref, hyp);
    const EditCounts tagged = ComputeWer(tag(ref), tag(hyp));
    const EditCounts stripped =
        ComputeWer(StripLanguageTags(tag(ref)), StripLanguageTags(tag(hyp)));
    CHECK(tagged.Errors() == plain.Errors());
    CHECK(stripped.Errors() == plain.Errors());
  }
}

TEST_CASE("report pools words per condition") {
  const std::vector<SegmentRef> refs{
      {"u1", "fy", Split("a_fy b_fy c_fy")},
      {"u2", "nl", Split("d_nl e_nl")},
      {"u3", "fy-nl", Split("a_fy d_nl e_nl f_nl")},
      {"u4", "fy", Split("b_fy")},
  };
  std::map<std::string, Words> perfect;
  for (const auto &r : refs) perfect[r.utt_id] = r.words;
  const WerReport clean = ReportByCondition(refs, perfect);
  CHECK(clean.conditions == Words{"fy", "nl", "fy-nl"});
  for (const auto &[c, counts] : clean.by_condition) CHECK(counts.Wer() == 0.0);
  CHECK(clean.all.Wer() == 0.0);
  CHECK(clean.words_by_language.at("fy") == 5);
  CHECK(clean.words_by_language.at("nl") == 5);

  // Hand-pooled: fy has 4 words with 1 sub (u1) + 1 del (u4, missing).
  std::map<std::string, Words> hyps{
      {"u1", Split("a x c")},          // 1 sub
      {"u2", Split("d e g h")},        // 2 ins
      {"u3", Split("a_fy d f")},       // 1 del
  };
  const WerReport r = ReportByCondition(refs, hyps);
  CHECK(r.missing == Words{"u4"});
  CHECK(r.by_condition.at("fy").ref_words == 4);
  CHECK(r.by_condition.at("fy").Errors() == 2);
  CHECK(r.by_condition.at("fy").Wer() == doctest::Approx(50.0));
  CHECK(r.by_condition.at("nl").Wer() == doctest::Approx(100.0));
  CHECK(r.by_condition.at("fy-nl").Wer() == doctest::Approx(25.0));
  CHECK(r.all.ref_words == 10);
  CHECK(r.all.Errors() == 5);
  CHECK(r.all.Wer() == doctest::Approx(50.0));

  std::ostringstream csv;
  WriteReportCsv(r, csv);
  CHECK(csv.str() ==
        "condition,words,sub,del,ins,wer\n"
        "fy,4,1,1,0,50.0000\n"
        "nl,2,0,0,2,100.0000\n"
        "fy-nl,4,0,1,0,25.0000\n"
        "all,10,1,2,2,50.0000\n");
  std::ostringstream text;
  WriteReportText(r, text);
  CHECK(text.str().find("missing hypotheses: 1") != std::string::npos);
  CHECK(text.str().find("fy-nl") != std::string::npos);

  const std::vector<SegmentRef> single{{"n1", "nl", Split("p q r")}};
  const WerReport one = ReportByCondition(single, {{"n1", Split("p r")}});
  CHECK(one.by_condition.at("nl").Wer() == one.all.Wer());

  std::vector<SegmentRef> dup = refs;
  dup.push_back(refs[0]);
  CHECK_THROWS_AS(ReportByCondition(dup, perfect), FormatError);
}

TEST_CASE("pooling identity on random reports") {
  std::mt19937_64 rng(6);
  const char *conditions[] = {"fy", "nl", "fy-nl", "other"};
  std::uniform_int_distribution<int> cond(0, 3), drop(0, 9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SegmentRef> refs;
    std::map<std::string, Words> hyps;
    for (int i = 0; i < 20; ++i) {
      const std::string id = "u" + std::to_string(i);
      refs.push_back({id, conditions[cond(rng)], RandomWords(rng, 1, 8)});
      if (drop(rng)) hyps[id] = RandomWords(rng, 0, 8);
    }
    const WerReport r = ReportByCondition(refs, hyps);
    EditCounts sum;
    for (const auto &c : r.conditions) sum += r.by_condition.at(c);
    CHECK(sum.ref_words == r.all.ref_words);
    CHECK(sum.sub == r.all.sub);
    CHECK(sum.del == r.all.del);
    CHECK(sum.ins == r.all.ins);
    CHECK(r.conditions.size() == r.by_condition.size());
  }
}

TEST_CASE("reference file round trip") {
  std::istringstream in("u1 fy a_fy b_fy\n\nu2 fy-nl a_fy x_nl\n");
  const auto refs = ReadReferences(in, "mem");
  REQUIRE(refs.size() == 2);
  CHECK(refs[1].condition == "fy-nl");
  CHECK(refs[1].words == Words{"a_fy", "x_nl"});
  std::ostringstream out;
  WriteReferences(refs, out);
  CHECK(out.str() == "u1 fy a_fy b_fy\nu2 fy-nl a_fy x_nl\n");
  std::istringstream bad("u1 fy\n");
  CHECK_THROWS_AS(ReadReferences(bad, "mem"), FormatError);
}

}  // namespace
}  // namespace mgd
