// experiment.cc
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

#include "mgd/experiment/experiment.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "mgd/base/error.h"
#include "mgd/lm/arpa.h"
#include "mgd/lm/grammar_fst.h"
#include "mgd/lm/interpolate.h"
#include "mgd/lm/kneser_ney.h"
#include "mgd/lm/perplexity.h"
#include "mgd/rescore/nbest_io.h"
#include "mgd/rescore/rescore.h"

namespace mgd {
namespace {

namespace fs = std::filesystem;

// Runs `body`, prefixing any toolkit error with the stage name.
template <class Body>
auto InStage(const std::string &stage, Body body) -> decltype(body()) {
  const std::string prefix = "stage '" + stage + "': ";
  try {
    return body();
  } catch (const SearchError &e) {
    throw SearchError(prefix + e.what());
  } catch (const FormatError &e) {
    throw FormatError(prefix + e.what());
  } catch (const UsageError &e) {
    throw UsageError(prefix + e.what());
  } catch (const LmError &e) {
    throw LmError(prefix + e.what());
  } catch (const FstError &e) {
    throw FstError(prefix + e.what());
  }
}

// Produces `path` through `write` (given a temporary path) unless it exists
// and `reuse` is set. The rename keeps half-written files from being reused.
void Produce(const fs::path &path, bool reuse,
             const std::function<void(const std::string &)> &write) {
  if (reuse && fs::exists(path)) return;
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  write(tmp.string());
  fs::rename(tmp, path);
}

// Graph files go under a temporary prefix first; `.fst` is renamed last and
// marks the graph as complete.
void ProduceGraph(const fs::path &prefix, bool reuse,
                  const std::function<DecodingGraph()> &build) {
  if (reuse && fs::exists(prefix.string() + ".fst")) return;
  fs::create_directories(prefix.parent_path());
  const std::string tmp = prefix.string() + ".tmp";
  WriteDecodingGraph(build(), tmp);
  for (const char *ext : {".units.txt", ".words.txt", ".meta", ".fst"})
    fs::rename(tmp + ext, prefix.string() + ext);
}

void WriteText(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

std::string ReadText(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

TextCorpus WordsOf(const std::vector<SegmentRef> &refs) {
  TextCorpus corpus;
  for (const auto &r : refs) corpus.sentences.push_back(r.words);
  return corpus;
}

struct Names {
  std::string a;
  std::vector<std::string> b;  // B, B+, ...
  std::vector<std::string> all;  // cs, a, b...
};

Names CorpusNames(const SyntheticConfig &data) {
  Names n;
  n.a = data.lang_a;
  for (size_t k = 0; k < data.b_text_factors.size(); ++k) n.b.push_back(MonoBName(data, k));
  n.all = {"cs", n.a};
  n.all.insert(n.all.end(), n.b.begin(), n.b.end());
  return n;
}

std::vector<std::string> Roster(const ExperimentConfig &cfg) {
  const Names names = CorpusNames(cfg.data);
  if (cfg.roster.empty()) return names.all;
  std::set<std::string> known(names.all.begin(), names.all.end()), seen;
  for (const auto &g : cfg.roster) {
    if (!known.count(g)) throw UsageError("unknown graph '" + g + "' in the roster");
    if (!seen.insert(g).second) throw UsageError("graph '" + g + "' listed twice");
  }
  if (!seen.count("cs")) throw UsageError("the roster must include 'cs'");
  // Keep the canonical order.
  std::vector<std::string> out;
  for (const auto &g : names.all)
    if (seen.count(g)) out.push_back(g);
  return out;
}

struct System {
  std::string name;
  std::string graph;  // file prefix under graph/
  std::vector<std::string> members;  // single graphs for a union
};

std::vector<System> Systems(const ExperimentConfig &cfg) {
  const Names names = CorpusNames(cfg.data);
  const std::vector<std::string> roster = Roster(cfg);
  auto has = [&](const std::string &g) {
    return std::find(roster.begin(), roster.end(), g) != roster.end();
  };
  std::vector<System> systems{{"cs", "cs", {}}};
  std::string largest_b;
  for (const auto &b : names.b)
    if (has(b)) {
      systems.push_back({"cs+" + b, "cs+" + b, {}});
      largest_b = b;
    }
  for (const auto &g : roster)
    if (g != "cs") systems.push_back({"union-" + g, "union-" + g, {"cs", g}});
  if (has(names.a) && !largest_b.empty()) {
    const std::string name = "union-" + names.a + "-" + largest_b;
    systems.push_back({name, name, {"cs", names.a, largest_b}});
  }
  return systems;
}

void WriteReportFiles(const ExperimentResult &result, const fs::path &dir) {
  WriteText((dir / "report.csv").string(), result.csv);
  WriteText((dir / "report.txt").string(), result.text);
}

}  // namespace

void WriteSyntheticData(const SyntheticData &data, const SyntheticConfig &cfg,
                        const std::string &dir) {
  const fs::path root(dir);
  const Names names = CorpusNames(cfg);
  auto write = [&](const std::string &name, const std::function<void(const std::string &)> &f) {
    Produce(root / name, false, f);
  };
  write("units.txt", [&](const std::string &p) { WriteInventoryFile(cfg.inventory, p); });
  write("lexicon.txt", [&](const std::string &p) { WriteLexiconFile(data.lexicon, p); });
  write("cs.txt", [&](const std::string &p) { WriteCorpusFile(data.cs, p); });
  write(names.a + ".txt", [&](const std::string &p) { WriteCorpusFile(data.mono_a, p); });
  for (size_t k = 0; k < names.b.size() && k < data.mono_b.size(); ++k)
    write(names.b[k] + ".txt", [&](const std::string &p) { WriteCorpusFile(data.mono_b[k], p); });
  write("dev.ref", [&](const std::string &p) { WriteReferencesFile(data.dev, p); });
  write("test.ref", [&](const std::string &p) { WriteReferencesFile(data.test, p); });
  write("dev.scores", [&](const std::string &p) { WriteScoresArchive(data.dev_scores, p); });
  write("test.scores", [&](const std::string &p) { WriteScoresArchive(data.test_scores, p); });
}

std::vector<std::string> ExperimentSystems(const ExperimentConfig &cfg) {
  std::vector<std::string> out;
  for (const auto &s : Systems(cfg)) out.push_back(s.name);
  return out;
}

ExperimentResult RunExperiment(const ExperimentConfig &cfg, const std::string &workdir,
                               bool reuse) {
  const fs::path root(workdir);
  const fs::path data_dir = root / "data", lm_dir = root / "lm",
                 graph_dir = root / "graph", decode_dir = root / "decode";
  const Names names = CorpusNames(cfg.data);
  const std::vector<std::string> roster = InStage("config", [&] { return Roster(cfg); });
  const std::vector<System> systems = InStage("config", [&] { return Systems(cfg); });
  if (cfg.decode_order < 1 || cfg.rescore_order < 1)
    throw UsageError("stage 'config': LM orders must be >= 1");

  // Data.
  InStage("data", [&] {
    if (reuse && fs::exists(data_dir / "test.scores")) return;
    WriteSyntheticData(GenerateSynthetic(cfg.data), cfg.data, data_dir.string());
  });
  const std::vector<std::string> inventory =
      InStage("data", [&] { return ReadInventoryFile((data_dir / "units.txt").string()); });
  const Lexicon lexicon = InStage("data", [&] {
    return ReadLexiconFile((data_dir / "lexicon.txt").string(), &inventory);
  });
  const std::vector<SegmentRef> dev =
      InStage("data", [&] { return ReadReferencesFile((data_dir / "dev.ref").string()); });
  const std::vector<SegmentRef> test =
      InStage("data", [&] { return ReadReferencesFile((data_dir / "test.ref").string()); });
  const TextCorpus dev_text = WordsOf(dev);

  // Language models. Single-graph LMs for the roster; cs+X for every B
  // corpus X in it.
  std::vector<std::string> interpolated;
  for (const auto &g : roster)
    if (std::find(names.b.begin(), names.b.end(), g) != names.b.end())
      interpolated.push_back(g);
  auto lm_path = [&](const std::string &name, bool rescoring) {
    return lm_dir / (name + (rescoring ? ".rescore.arpa" : ".arpa"));
  };
  InStage("lm", [&] {
    for (const auto &g : roster) {
      const fs::path corpus = data_dir / (g + ".txt");
      for (bool rescoring : {false, true})
        Produce(lm_path(g, rescoring), reuse, [&](const std::string &p) {
          KneserNeyOptions opts;
          opts.order = rescoring ? cfg.rescore_order : cfg.decode_order;
          WriteArpaFile(TrainKneserNey(ReadCorpusFile(corpus.string()), opts), p);
        });
    }
    const fs::path weights = lm_dir / "interpolation.txt";
    Produce(weights, reuse, [&](const std::string &p) {
      std::ostringstream out;
      const NGramModel cs = ReadArpaFile(lm_path("cs", false).string());
      for (const auto &x : interpolated) {
        const NGramModel other = ReadArpaFile(lm_path(x, false).string());
        const InterpolationTuning t =
            TuneInterpolationWeight(cs, other, dev_text, cfg.tune_steps);
        out << "cs+" << x << ' ' << FormatDouble(t.lambda, 6) << ' '
            << FormatDouble(t.perplexity, 6) << '\n';
      }
      WriteText(p, out.str());
    });
    std::map<std::string, double> lambda;
    {
      std::istringstream in(ReadText(weights));
      std::string name, value, ppl;
      while (in >> name >> value >> ppl) lambda[name] = ParseDouble(value);
    }
    for (const auto &x : interpolated)
      for (bool rescoring : {false, true})
        Produce(lm_path("cs+" + x, rescoring), reuse, [&](const std::string &p) {
          const NGramModel cs = ReadArpaFile(lm_path("cs", rescoring).string());
          const NGramModel other = ReadArpaFile(lm_path(x, rescoring).string());
          if (!lambda.count("cs+" + x))
            throw FormatError("no interpolation weight for cs+" + x + " in " +
                              weights.string());
          WriteArpaFile(InterpolateStatic(cs, other, lambda.at("cs+" + x)), p);
        });
    Produce(lm_dir / "perplexity.csv", reuse, [&](const std::string &p) {
      std::ostringstream out;
      out << "lm,condition,perplexity,oovs\n";
      std::vector<std::string> models = roster;
      for (const auto &x : interpolated) models.push_back("cs+" + x);
      std::map<std::string, TextCorpus> by_condition;
      for (const auto &r : dev) by_condition[r.condition].sentences.push_back(r.words);
      by_condition["all"] = dev_text;
      for (const auto &m : models) {
        const NGramModel model = ReadArpaFile(lm_path(m, false).string());
        for (const auto &[condition, text] : by_condition) {
          const PerplexityResult r = Perplexity(model, text);
          out << m << ',' << condition << ',' << Fixed(r.perplexity, 4) << ','
              << r.oovs << '\n';
        }
      }
      WriteText(p, out.str());
    });
  });

  // Graphs.
  InStage("graph", [&] {
    std::vector<std::string> singles = roster;
    for (const auto &x : interpolated) singles.push_back("cs+" + x);
    for (const auto &g : singles)
      ProduceGraph(graph_dir / g, reuse, [&] {
        const NGramModel model = ReadArpaFile(lm_path(g, false).string());
        GrammarFstOptions gopts;
        gopts.words = lexicon.WordSymbols();
        DecodingGraph graph =
            CompileDecodingGraph(lexicon, LmToGrammarFst(model, gopts), g);
        graph.lm = lm_path(g, false).filename().string();
        return graph;
      });
    for (const auto &s : systems) {
      if (s.members.empty()) continue;
      ProduceGraph(graph_dir / s.graph, reuse, [&] {
        std::vector<DecodingGraph> members;
        for (const auto &m : s.members)
          members.push_back(ReadDecodingGraph((graph_dir / m).string()));
        return BuildMultiGraph(members, cfg.prior);
      });
    }
  });

  // Decoding.
  InStage("decode", [&] {
    std::vector<AcousticScores> scores;
    for (const auto &s : systems)
      Produce(decode_dir / (s.name + ".nbest"), reuse, [&](const std::string &p) {
        if (scores.empty())
          scores = ReadScoresArchiveFile((data_dir / "test.scores").string(), inventory);
        const DecodingGraph graph = ReadDecodingGraph((graph_dir / s.graph).string());
        const Decoder decoder(graph);
        std::vector<UtteranceNBest> lists;
        for (const auto &utt : scores) {
          const DecodeResult r = decoder.Decode(utt, cfg.decode);
          lists.push_back({utt.utt_id, LatticeNBest(r.lattice, cfg.nbest, graph.graph_id)});
        }
        WriteNBestFile(lists, p);
      });
  });

  // Rescoring: each hypothesis with the rescoring LM of its graph.
  InStage("rescore", [&] {
    std::map<std::string, std::shared_ptr<const SequenceScorer>> cache;
    auto scorer = [&](const std::string &name) {
      auto &slot = cache[name];
      if (!slot)
        slot = std::make_shared<NGramScorer>(ReadArpaFile(lm_path(name, true).string()));
      return slot;
    };
    for (const auto &s : systems)
      Produce(decode_dir / (s.name + ".rescored.nbest"), reuse, [&](const std::string &p) {
        RescoreConfig rc;
        rc.mu = cfg.mu;
        rc.lm_scale = cfg.lm_scale;
        if (s.members.empty()) {
          rc.models[s.graph] = scorer(s.graph);
        } else {
          for (const auto &m : s.members) rc.models[m] = scorer(m);
        }
        std::vector<UtteranceNBest> lists =
            ReadNBestFile((decode_dir / (s.name + ".nbest")).string());
        for (auto &list : lists) list.hyps = RescoreNBest(list.hyps, rc);
        WriteNBestFile(lists, p);
      });
  });

  // Scoring.
  ExperimentResult result = InStage("score", [&] {
    ExperimentResult out;
    std::ostringstream csv, text;
    csv << "system,rescored,condition,words,sub,del,ins,wer\n";
    for (const auto &s : systems)
      for (bool rescored : {false, true}) {
        const auto lists = ReadNBestFile(
            (decode_dir / (s.name + (rescored ? ".rescored.nbest" : ".nbest"))).string());
        std::map<std::string, std::vector<std::string>> hyps;
        for (const auto &list : lists)
          if (!list.hyps.empty()) hyps[list.utt_id] = list.hyps.front().words;
        LanguageTags tags;
        tags.codes = {cfg.data.lang_a, cfg.data.lang_b};
        SystemResult row{s.name, rescored, ReportByCondition(test, hyps, tags)};
        std::vector<std::pair<std::string, EditCounts>> cells;
        for (const auto &c : row.report.conditions)
          cells.emplace_back(c, row.report.by_condition.at(c));
        cells.emplace_back("all", row.report.all);
        for (const auto &[c, counts] : cells)
          csv << s.name << ',' << (rescored ? "yes" : "no") << ',' << c << ','
              << counts.ref_words << ',' << counts.sub << ',' << counts.del << ','
              << counts.ins << ',' << Fixed(counts.Wer(), 4) << '\n';
        if (out.rows.empty()) {
          char buf[64];
          std::snprintf(buf, sizeof(buf), "%-24s", "test WER (%)");
          text << buf;
          for (const auto &cell : cells) {
            std::snprintf(buf, sizeof(buf), " %8s", cell.first.c_str());
            text << buf;
          }
          text << '\n';
          std::snprintf(buf, sizeof(buf), "%-24s", "#words");
          text << buf;
          for (const auto &cell : cells) {
            std::snprintf(buf, sizeof(buf), " %8ld", cell.second.ref_words);
            text << buf;
          }
          text << '\n';
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%-24s",
                      (s.name + (rescored ? " +rescore" : "")).c_str());
        text << buf;
        for (const auto &cell : cells) {
          std::snprintf(buf, sizeof(buf), " %8.2f", cell.second.Wer());
          text << buf;
        }
        text << '\n';
        out.rows.push_back(std::move(row));
      }
    out.csv = csv.str();
    out.text = text.str();
    return out;
  });
  WriteReportFiles(result, root);
  return result;
}

}  // namespace mgd
