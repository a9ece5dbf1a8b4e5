// fst_ops_test.cc
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
#include <random>
#include <sstream>

#include "doctest.h"
#include "fst_test_util.h"
#include "mgd/fst/compose.h"
#include "mgd/fst/determinize.h"
#include "mgd/fst/enumerate.h"
#include "mgd/fst/minimize.h"
#include "mgd/fst/rmepsilon.h"
#include "mgd/fst/shortest_path.h"
#include "mgd/fst/text_io.h"
#include "mgd/fst/union.h"

namespace mgd {
namespace {

using testing::PathMultiset;
using testing::RandomFst;
using testing::RandomFstOptions;

StdFst Linear(const std::vector<std::pair<Label, Label>> &labels, double weight,
              double final_weight = 0.0) {
  StdFst fst;
  fst.SetStart(fst.AddState());
  StateId s = 0;
  for (const auto &[i, o] : labels) {
    const StateId t = fst.AddState();
    fst.AddArc(s, i, o, TropicalWeight(s == 0 ? weight : 0.0), t);
    s = t;
  }
  fst.SetFinal(s, TropicalWeight(final_weight));
  return fst;
}

using testing::JoinOracle;

TEST_CASE("enumerate_paths basics") {
  CHECK(EnumeratePaths(StdFst(), 10).empty());
  const StdFst chain = Linear({{1, 1}, {2, 2}, {3, 3}, {1, 1}}, 1.0);
  const auto paths = EnumeratePaths(chain, 10);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].ilabels.size() == 4);
  CHECK(paths[0].weight == TropicalWeight(1.0));
  CHECK(EnumeratePaths(chain, 3).empty());

  // Two trajectories joined at a common start, like the union figure.
  StdFst two = Union(Linear({{1, 1}, {2, 2}}, 1.0), Linear({{3, 3}}, 2.0));
  const auto both = EnumeratePaths(two, 10);
  REQUIRE(both.size() == 2);
  CHECK(StripEpsilons(both[0].ilabels) == LabelString{1, 2});
  CHECK(StripEpsilons(both[1].ilabels) == LabelString{3});
}

TEST_CASE("union examples") {
  const StdFst a = Linear({{1, 1}}, 1.0);
  const StdFst b = Linear({{2, 2}}, 2.0);
  const auto lang = LanguageOf(EnumeratePaths(Union(a, b), 10));
  REQUIRE(lang.size() == 2);
  CHECK(lang.at({{1}, {1}}) == TropicalWeight(1.0));
  CHECK(lang.at({{2}, {2}}) == TropicalWeight(2.0));

  CHECK(LanguageOf(EnumeratePaths(Union(a, StdFst()), 10)) ==
        LanguageOf(EnumeratePaths(a, 10)));
  const StdFst u = Union(a, b);
  CHECK(u.NumArcs(u.Start()) == 2);
  for (const auto &arc : u.Arcs(u.Start())) {
    CHECK(arc.ilabel == kEpsilon);
    CHECK(arc.weight == TropicalWeight::One());
  }
}

TEST_CASE("union rejects conflicting symbol tables") {
  auto t1 = std::make_shared<SymbolTable>();
  t1->AddSymbol("a", 1);
  auto t2 = std::make_shared<SymbolTable>();
  t2->AddSymbol("a", 2);
  StdFst a = Linear({{1, 1}}, 0.0), b = Linear({{2, 2}}, 0.0);
  a.SetInputSymbols(t1);
  b.SetInputSymbols(t2);
  CHECK_THROWS_AS(Union(a, b), SymbolTableError);
}

TEST_CASE("union matches the path multiset oracle on 500 random pairs") {
  std::mt19937_64 rng(1);
  RandomFstOptions opts;
  opts.eps_prob = 0.2;
  for (int i = 0; i < 500; ++i) {
    const StdFst a = RandomFst(rng, opts), b = RandomFst(rng, opts);
    const StdFst u = Union(a, b);
    u.Validate();
    auto expected = PathMultiset(EnumeratePaths(a, 10));
    const auto from_b = PathMultiset(EnumeratePaths(b, 10));
    expected.insert(expected.end(), from_b.begin(), from_b.end());
    std::sort(expected.begin(), expected.end());
    REQUIRE(PathMultiset(EnumeratePaths(u, 11)) == expected);
  }
}

TEST_CASE("compose examples") {
  const StdFst a = Linear({{1, 2}}, 1.0);
  const StdFst b = Linear({{2, 3}}, 2.0);
  const auto lang = LanguageOf(EnumeratePaths(Compose(a, b), 10));
  REQUIRE(lang.size() == 1);
  CHECK(lang.at({{1}, {3}}) == TropicalWeight(3.0));

  // Identity acceptor over the output alphabet of a random transducer.
  std::mt19937_64 rng(2);
  RandomFstOptions opts;
  opts.eps_prob = 0.2;
  for (int i = 0; i < 50; ++i) {
    const StdFst x = RandomFst(rng, opts);
    StdFst id;
    id.SetStart(id.AddState());
    id.SetFinal(0, TropicalWeight::One());
    for (Label l = 1; l <= opts.num_labels; ++l)
      id.AddArc(0, l, l, TropicalWeight::One(), 0);
    CHECK(LanguageOf(EnumeratePaths(Compose(x, id), 20)) ==
          LanguageOf(EnumeratePaths(x, 20)));
  }
}

TEST_CASE("compose matches the join oracle on 500 random pairs") {
  std::mt19937_64 rng(3);
  RandomFstOptions opts;
  opts.max_states = 6;
  opts.eps_prob = 0.25;
  opts.arc_prob = 0.45;
  for (int i = 0; i < 500; ++i) {
    const StdFst a = RandomFst(rng, opts), b = RandomFst(rng, opts);
    const StdFst c = Compose(a, b);
    c.Validate();
    REQUIRE(LanguageOf(EnumeratePaths(c, 20)) == JoinOracle(a, b));
    // The epsilon filter keeps one composed path per pair of operand paths.
    size_t pairs = 0;
    const auto pa = EnumeratePaths(a, 16), pb = EnumeratePaths(b, 16);
    for (const auto &x : pa)
      for (const auto &y : pb)
        pairs += StripEpsilons(x.olabels) == StripEpsilons(y.ilabels);
    REQUIRE(EnumeratePaths(c, 20).size() == pairs);
  }
}

TEST_CASE("compose rejects incompatible symbol tables") {
  auto t1 = std::make_shared<SymbolTable>();
  t1->AddSymbol("x", 1);
  auto t2 = std::make_shared<SymbolTable>();
  t2->AddSymbol("y", 1);
  StdFst a = Linear({{1, 1}}, 0.0), b = Linear({{1, 1}}, 0.0);
  a.SetOutputSymbols(t1);
  b.SetInputSymbols(t2);
  CHECK_THROWS_AS(Compose(a, b), SymbolTableError);
}

TEST_CASE("rmepsilon examples") {
  StdFst fst;
  fst.AddStates(3);
  fst.SetStart(0);
  fst.AddArc(0, 0, 0, TropicalWeight(1.0), 1);
  fst.AddArc(1, 1, 1, TropicalWeight(2.0), 2);
  fst.SetFinal(2, TropicalWeight::One());
  const StdFst out = RmEpsilon(fst);
  REQUIRE(out.NumStates() == 2);
  REQUIRE(out.NumArcs(out.Start()) == 1);
  CHECK(out.Arcs(out.Start())[0].weight == TropicalWeight(3.0));
  CHECK(out.Arcs(out.Start())[0].ilabel == 1);

  const StdFst free = Linear({{1, 1}, {2, 2}}, 1.5);
  CHECK(LanguageOf(EnumeratePaths(RmEpsilon(free), 10)) ==
        LanguageOf(EnumeratePaths(free, 10)));
}

TEST_CASE("rmepsilon handles non-negative epsilon cycles and rejects divergent ones") {
  StdFst fst;
  fst.AddStates(3);
  fst.SetStart(0);
  fst.AddArc(0, 0, 0, TropicalWeight(1.0), 1);
  fst.AddArc(1, 0, 0, TropicalWeight(0.5), 0);
  fst.AddArc(1, 2, 2, TropicalWeight(1.0), 2);
  fst.SetFinal(2, TropicalWeight::One());
  const auto lang = LanguageOf(EnumeratePaths(RmEpsilon(fst), 5));
  REQUIRE(lang.size() == 1);
  CHECK(lang.at({{2}, {2}}) == TropicalWeight(2.0));

  fst.MutableArcs(1)[0].weight = TropicalWeight(-2.0);
  CHECK_THROWS_AS(RmEpsilon(fst), FstError);
}

TEST_CASE("rmepsilon matches the enumeration oracle on 500 random Fsts") {
  std::mt19937_64 rng(4);
  RandomFstOptions opts;
  opts.eps_prob = 0.4;
  for (int i = 0; i < 500; ++i) {
    StdFst fst = RandomFst(rng, opts);
    const StdFst out = RmEpsilon(fst);
    out.Validate();
    for (StateId s = 0; s < out.NumStates(); ++s)
      for (const auto &arc : out.Arcs(s))
        REQUIRE_FALSE((arc.ilabel == 0 && arc.olabel == 0));
    REQUIRE(LanguageOf(EnumeratePaths(out, 10)) ==
            LanguageOf(EnumeratePaths(fst, 10)));
  }
}

TEST_CASE("determinize examples") {
  StdFst fst;
  fst.AddStates(2);
  fst.SetStart(0);
  fst.AddArc(0, 1, 1, TropicalWeight(1.0), 1);
  fst.AddArc(0, 1, 1, TropicalWeight(2.0), 1);
  fst.SetFinal(1, TropicalWeight::One());
  const StdFst det = Determinize(fst);
  REQUIRE(det.NumArcs(det.Start()) == 1);
  CHECK(det.Arcs(det.Start())[0].weight == TropicalWeight(1.0));

  const StdFst d = Linear({{1, 1}, {2, 2}}, 1.0);
  CHECK(LanguageOf(EnumeratePaths(Determinize(d), 10)) ==
        LanguageOf(EnumeratePaths(d, 10)));
}

TEST_CASE("determinize gives up on a non-twins machine") {
  // Two a-loops with different weights reachable by the same string.
  StdFst fst;
  fst.AddStates(4);
  fst.SetStart(0);
  fst.AddArc(0, 1, 1, TropicalWeight(0.0), 1);
  fst.AddArc(0, 1, 1, TropicalWeight(0.0), 2);
  fst.AddArc(1, 1, 1, TropicalWeight(1.0), 1);
  fst.AddArc(2, 1, 1, TropicalWeight(2.0), 2);
  fst.AddArc(1, 2, 2, TropicalWeight(0.0), 3);
  fst.AddArc(2, 3, 3, TropicalWeight(0.0), 3);
  fst.SetFinal(3, TropicalWeight::One());
  CHECK_THROWS_AS(Determinize(fst), DeterminizeError);
}

TEST_CASE("determinize matches the enumeration oracle on 500 random acceptors") {
  std::mt19937_64 rng(5);
  RandomFstOptions opts;
  opts.acceptor = true;
  opts.arc_prob = 0.5;
  opts.num_labels = 2;
  for (int i = 0; i < 500; ++i) {
    const StdFst fst = RandomFst(rng, opts);
    const StdFst det = Determinize(fst);
    det.Validate();
    REQUIRE(IsDeterministic(det));
    REQUIRE(LanguageOf(EnumeratePaths(det, 10)) ==
            LanguageOf(EnumeratePaths(fst, 10)));
  }
}

TEST_CASE("determinize encodes transducers") {
  std::mt19937_64 rng(6);
  RandomFstOptions opts;
  opts.num_labels = 2;
  for (int i = 0; i < 200; ++i) {
    const StdFst fst = RandomFst(rng, opts);
    const StdFst det = Determinize(fst);
    det.Validate();
    REQUIRE(LanguageOf(EnumeratePaths(det, 10)) ==
            LanguageOf(EnumeratePaths(fst, 10)));
  }
}

TEST_CASE("minimize examples") {
  // Two final states with identical behaviour.
  StdFst fst;
  fst.AddStates(3);
  fst.SetStart(0);
  fst.AddArc(0, 1, 1, TropicalWeight(1.0), 1);
  fst.AddArc(0, 2, 2, TropicalWeight(1.0), 2);
  fst.SetFinal(1, TropicalWeight(0.5));
  fst.SetFinal(2, TropicalWeight(0.5));
  const StdFst min = Minimize(fst);
  CHECK(min.NumStates() < fst.NumStates());
  CHECK(LanguageOf(EnumeratePaths(min, 10)) ==
        LanguageOf(EnumeratePaths(fst, 10)));

  const StdFst already = Linear({{1, 1}, {2, 2}}, 1.0);
  CHECK(Minimize(already).NumStates() == already.NumStates());

  StdFst nondet;
  nondet.AddStates(2);
  nondet.SetStart(0);
  nondet.AddArc(0, 1, 1, TropicalWeight(0.0), 1);
  nondet.AddArc(0, 1, 1, TropicalWeight(1.0), 1);
  nondet.SetFinal(1, TropicalWeight::One());
  CHECK_THROWS_AS(Minimize(nondet), FstError);
}

TEST_CASE("minimize merges states that differ only by a pushable weight") {
  StdFst fst;
  fst.AddStates(3);
  fst.SetStart(0);
  fst.AddArc(0, 1, 1, TropicalWeight(0.0), 1);
  fst.AddArc(0, 2, 2, TropicalWeight(0.0), 2);
  fst.SetFinal(1, TropicalWeight(1.0));
  fst.SetFinal(2, TropicalWeight(3.0));
  const StdFst min = Minimize(fst);
  CHECK(min.NumStates() == 2);
  CHECK(LanguageOf(EnumeratePaths(min, 10)) ==
        LanguageOf(EnumeratePaths(fst, 10)));
}

TEST_CASE("minimize on 200 random deterministic acceptors") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const StdFst fst = testing::RandomDeterministic(rng, 8, 2);
    const StdFst min = Minimize(fst);
    min.Validate();
    REQUIRE(IsDeterministic(min));
    REQUIRE(min.NumStates() <= fst.NumStates());
    REQUIRE(LanguageOf(EnumeratePaths(min, 8)) ==
            LanguageOf(EnumeratePaths(fst, 8)));
    REQUIRE(Minimize(min).NumStates() == min.NumStates());
  }
}

TEST_CASE("minimize(determinize(x)) preserves the language of random acceptors") {
  std::mt19937_64 rng(8);
  RandomFstOptions opts;
  opts.acceptor = true;
  opts.arc_prob = 0.5;
  opts.num_labels = 2;
  for (int i = 0; i < 500; ++i) {
    const StdFst fst = RandomFst(rng, opts);
    const StdFst min = Minimize(Determinize(fst));
    REQUIRE(LanguageOf(EnumeratePaths(min, 10)) ==
            LanguageOf(EnumeratePaths(fst, 10)));
    REQUIRE(Minimize(min).NumStates() == min.NumStates());
  }
}

TEST_CASE("minimize works in the log semiring") {
  LogFst fst;
  fst.AddStates(3);
  fst.SetStart(0);
  fst.AddArc(0, 1, 1, LogWeight(0.25), 1);
  fst.AddArc(0, 2, 2, LogWeight(0.75), 2);
  fst.AddArc(1, 3, 3, LogWeight(1.0), 1);
  fst.AddArc(2, 3, 3, LogWeight(1.0), 2);
  fst.SetFinal(1, LogWeight(0.5));
  fst.SetFinal(2, LogWeight(0.5));
  const LogFst min = Minimize(fst);
  CHECK(min.NumStates() == 2);
  const auto a = LanguageOf(EnumeratePaths(fst, 6));
  const auto b = LanguageOf(EnumeratePaths(min, 6));
  REQUIRE(a.size() == b.size());
  for (const auto &[k, w] : a) CHECK(ApproxEqual(w, b.at(k), 1e-9));
}

TEST_CASE("shortest path examples") {
  StdFst fst = Union(Linear({{1, 1}}, 1.0), Linear({{2, 2}}, 2.0));
  auto best = ShortestPaths(fst, 1);
  REQUIRE(best.size() == 1);
  CHECK(best[0].weight == TropicalWeight(1.0));
  CHECK(StripEpsilons(best[0].ilabels) == LabelString{1});
  auto all = ShortestPaths(fst, 10);
  REQUIRE(all.size() == 2);
  CHECK(all[1].weight == TropicalWeight(2.0));
  CHECK(ShortestPaths(fst, 0).empty());
  CHECK(ShortestPaths(StdFst(), 3).empty());
}

TEST_CASE("shortest paths equal the sorted enumeration on 500 random acyclic Fsts") {
  std::mt19937_64 rng(9);
  RandomFstOptions opts;
  opts.eps_prob = 0.2;
  opts.arc_prob = 0.5;
  for (int i = 0; i < 500; ++i) {
    const StdFst fst = RandomFst(rng, opts);
    auto expected = EnumeratePaths(fst, 10);
    auto key = [](const Path<TropicalWeight> &p) {
      std::vector<int64_t> k{p.states[0]};
      for (size_t j = 0; j < p.ilabels.size(); ++j) {
        k.push_back(p.states[j + 1]);
        k.push_back(p.ilabels[j]);
        k.push_back(p.olabels[j]);
      }
      k.push_back(-1);
      return k;
    };
    std::sort(expected.begin(), expected.end(), [&](const auto &a, const auto &b) {
      if (a.weight.Value() != b.weight.Value())
        return a.weight.Value() < b.weight.Value();
      return key(a) < key(b);
    });
    const size_t n = std::uniform_int_distribution<size_t>(1, 12)(rng);
    const auto got = ShortestPaths(fst, n);
    REQUIRE(got.size() == std::min(n, expected.size()));
    for (size_t j = 0; j < got.size(); ++j) {
      REQUIRE(got[j].weight == expected[j].weight);
      REQUIRE(got[j].states == expected[j].states);
      REQUIRE(got[j].ilabels == expected[j].ilabels);
    }
    if (!expected.empty()) {
      double best = kInfinity;
      for (const auto &p : expected) best = std::min(best, p.weight.Value());
      REQUIRE(ShortestPaths(fst, 1)[0].weight.Value() == best);
    }
  }
}

TEST_CASE("text format round trip is bit exact") {
  std::mt19937_64 rng(10);
  RandomFstOptions opts;
  opts.eps_prob = 0.2;
  for (int i = 0; i < 50; ++i) {
    const StdFst fst = RandomFst(rng, opts);
    std::ostringstream first;
    WriteFstText(fst, first);
    std::istringstream in(first.str());
    const StdFst back = ReadFstText<TropicalWeight>(in, "mem");
    std::ostringstream second;
    WriteFstText(back, second);
    REQUIRE(first.str() == second.str());
  }
}

TEST_CASE("text format reader handles defaults and errors") {
  std::istringstream in("0 1 3 4\n1 2 5 5 0.5\n2\n");
  const StdFst fst = ReadFstText<TropicalWeight>(in, "mem");
  CHECK(fst.NumStates() == 3);
  CHECK(fst.Arcs(0)[0].weight == TropicalWeight::One());
  CHECK(fst.Final(2) == TropicalWeight::One());

  std::istringstream bad("0 1 a b\n");
  CHECK_THROWS_AS(ReadFstText<TropicalWeight>(bad, "mem"), FormatError);

  auto syms = std::make_shared<SymbolTable>();
  syms->AddSymbol("a");
  syms->AddSymbol("b");
  std::istringstream symbolic("0 1 a b 1.0\n1\n");
  const StdFst named = ReadFstText<TropicalWeight>(symbolic, "mem", syms, syms);
  CHECK(named.Arcs(0)[0].olabel == 2);
}

TEST_CASE("symbol tables") {
  SymbolTable t;
  CHECK(t.Find(0) == "<eps>");
  CHECK(t.AddSymbol("a") == 1);
  CHECK(t.AddSymbol("a") == 1);
  CHECK_THROWS_AS(t.AddSymbol("b", 1), SymbolTableError);
  CHECK_THROWS_AS(t.AddSymbol("x", 0), SymbolTableError);
  std::ostringstream os;
  t.WriteText(os);
  std::istringstream is(os.str());
  CHECK(SymbolTable::ReadText(is, "mem") == t);
  CHECK(IsReservedSymbol("#12"));
  CHECK(IsReservedSymbol("#graph:cs"));
  CHECK(IsReservedSymbol("<unk>"));
  CHECK_FALSE(IsReservedSymbol("huis_nl"));
  CHECK(GraphIdFromTag(GraphTagSymbol("nl++")) == "nl++");
}

}  // namespace
}  // namespace mgd
