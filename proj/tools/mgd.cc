// mgd.cc
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

// Command-line front end of the toolkit. Every subcommand maps onto one
// library operation; any flag may also come from a TOML file given with
// --config (subcommand flags under a [subcommand] table).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mgd/base/error.h"
#include "mgd/base/random.h"
#include "mgd/base/version.h"
#include "mgd/decoder/acoustic_scores.h"
#include "mgd/decoder/decoder.h"
#include "mgd/decoder/lattice.h"
#include "mgd/eval/wer.h"
#include "mgd/experiment/experiment.h"
#include "mgd/experiment/synthetic.h"
#include "mgd/graph/decoding_graph.h"
#include "mgd/graph/lexicon.h"
#include "mgd/lm/arpa.h"
#include "mgd/lm/corpus.h"
#include "mgd/lm/grammar_fst.h"
#include "mgd/lm/interpolate.h"
#include "mgd/lm/kneser_ney.h"
#include "mgd/lm/perplexity.h"
#include "mgd/rescore/nbest_io.h"
#include "mgd/rescore/rescore.h"

namespace mgd {
namespace {

enum ExitCode { kOk = 0, kUsage = 2, kData = 3, kSearch = 4 };

double ParseFlagDouble(const std::string &flag, const std::string &text) {
  try {
    return ParseDouble(text);
  } catch (const FormatError &) {
    throw UsageError("--" + flag + ": not a number: '" + text + "'");
  }
}

UnionPrior ParsePrior(const std::string &text) {
  return text == "uniform" ? UnionPrior::kUniform : UnionPrior::kNone;
}

void WriteTextFile(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

// Decoding flags; the beam is a string so that "inf" is accepted.
struct DecodeFlags {
  std::string beam = "inf";
  double lattice_beam = DecodeOptions{}.lattice_beam;
  double loop_cost = DecodeOptions{}.loop_cost;

  void Add(CLI::App *app) {
    app->add_option("--beam", beam, "search beam (a cost, or inf)")->capture_default_str();
    app->add_option("--lattice-beam", lattice_beam, "lattice pruning beam")
        ->capture_default_str();
    app->add_option("--loop-cost", loop_cost, "self-loop cost per extra frame")
        ->capture_default_str();
  }
  DecodeOptions Options() const {
    DecodeOptions opts;
    opts.beam = ParseFlagDouble("beam", beam);
    opts.lattice_beam = lattice_beam;
    opts.loop_cost = loop_cost;
    return opts;
  }
};

void AddSyntheticOptions(CLI::App *app, SyntheticConfig *cfg) {
  app->add_option("--seed", cfg->seed, "root random seed")->capture_default_str();
  app->add_option("--lang-a", cfg->lang_a, "code of language A")->capture_default_str();
  app->add_option("--lang-b", cfg->lang_b, "code of language B")->capture_default_str();
  app->add_option("--units", cfg->inventory, "unit inventory")->expected(4, -1);
  app->add_option("--vocab-a", cfg->vocab_a)->capture_default_str();
  app->add_option("--vocab-b", cfg->vocab_b)->capture_default_str();
  app->add_option("--cognates", cfg->cognates, "B words sharing an A pronunciation")
      ->capture_default_str();
  app->add_option("--near-homophones", cfg->near_homophones,
                  "B words one unit away from an A word")
      ->capture_default_str();
  app->add_option("--min-pron", cfg->min_pron)->capture_default_str();
  app->add_option("--max-pron", cfg->max_pron)->capture_default_str();
  app->add_option("--successors", cfg->successors, "bigram fan-out per word")
      ->capture_default_str();
  app->add_option("--min-len", cfg->min_len, "shortest sentence")->capture_default_str();
  app->add_option("--max-len", cfg->max_len, "longest sentence")->capture_default_str();
  app->add_option("--switch-rate", cfg->switch_rate, "code-switching rate")
      ->capture_default_str();
  app->add_option("--mixed-start-a", cfg->mixed_start_a,
                  "probability that a mixed sentence starts in A")
      ->capture_default_str();
  app->add_option("--cs-sentences", cfg->cs_sentences)->capture_default_str();
  app->add_option("--cs-fraction-a", cfg->cs_fraction_a)->capture_default_str();
  app->add_option("--cs-fraction-b", cfg->cs_fraction_b)->capture_default_str();
  app->add_option("--a-text-factor", cfg->a_text_factor)->capture_default_str();
  app->add_option("--b-text-factors", cfg->b_text_factors,
                  "sizes of the B corpora relative to the B part of the cs text");
  app->add_option("--dev-per-condition", cfg->dev_per_condition)->capture_default_str();
  app->add_option("--test-per-condition", cfg->test_per_condition)->capture_default_str();
  app->add_option("--frames-per-unit", cfg->acoustics.frames_per_unit)
      ->capture_default_str();
  app->add_option("--margin", cfg->acoustics.margin, "acoustic margin of the reference unit")
      ->capture_default_str();
  app->add_option("--noise-sd", cfg->acoustics.noise_sd, "acoustic noise")
      ->capture_default_str();
}

int Run(int argc, char **argv) {
  CLI::App app{"Weighted FST toolkit and multi-graph speech decoder"};
  app.set_config("--config", "", "TOML file supplying any flag");
  app.set_version_flag("--version", VersionString());
  app.require_subcommand(1);
  std::function<void()> action;

  // train-lm
  auto *train = app.add_subcommand("train-lm", "train a Kneser-Ney n-gram model");
  std::string train_text, train_out;
  KneserNeyOptions kn;
  train->add_option("--text", train_text, "training corpus")->required();
  train->add_option("--order", kn.order)->capture_default_str();
  train->add_option("--discount", kn.discount)->capture_default_str();
  train->add_flag("--auto-discount", kn.auto_discount, "estimate discounts from counts");
  train->add_option("--out", train_out, "ARPA output")->required();
  train->callback([&] {
    action = [&] { WriteArpaFile(TrainKneserNey(ReadCorpusFile(train_text), kn), train_out); };
  });

  // interpolate-lm
  auto *interp = app.add_subcommand("interpolate-lm", "interpolate two n-gram models");
  std::string lm_a, lm_b, interp_dev, interp_out;
  double lambda = -1;
  int steps = 20;
  interp->add_option("--lm-a", lm_a)->required();
  interp->add_option("--lm-b", lm_b)->required();
  auto *lambda_opt = interp->add_option("--lambda", lambda, "weight of the first model");
  auto *dev_opt = interp->add_option("--dev", interp_dev, "tune the weight on this text");
  lambda_opt->excludes(dev_opt);
  interp->add_option("--steps", steps, "grid resolution for tuning")->capture_default_str();
  interp->add_option("--out", interp_out)->required();
  interp->callback([&] {
    if (lambda_opt->count() == 0 && dev_opt->count() == 0)
      throw CLI::RequiredError("--lambda or --dev");
    action = [&] {
      const NGramModel a = ReadArpaFile(lm_a), b = ReadArpaFile(lm_b);
      double weight = lambda;
      if (!interp_dev.empty()) {
        const InterpolationTuning t =
            TuneInterpolationWeight(a, b, ReadCorpusFile(interp_dev), steps);
        weight = t.lambda;
        std::cout << "lambda " << FormatDouble(t.lambda, 6) << " perplexity "
                  << FormatDouble(t.perplexity, 6) << '\n';
      }
      WriteArpaFile(InterpolateStatic(a, b, weight), interp_out);
    };
  });

  // perplexity
  auto *ppl = app.add_subcommand("perplexity", "perplexity of a model on a text");
  std::string ppl_lm, ppl_text;
  ppl->add_option("--lm", ppl_lm)->required();
  ppl->add_option("--text", ppl_text)->required();
  ppl->callback([&] {
    action = [&] {
      const PerplexityResult r = Perplexity(ReadArpaFile(ppl_lm), ReadCorpusFile(ppl_text));
      std::cout << "perplexity " << FormatDouble(r.perplexity, 6) << " logprob "
                << FormatDouble(r.logprob, 6) << " tokens " << r.tokens << " oovs "
                << r.oovs << '\n';
    };
  });

  // compile-graph
  auto *compile = app.add_subcommand("compile-graph", "compile L o G into a decoding graph");
  std::string lexicon_path, units_path, compile_lm, graph_id, compile_out;
  CompileOptions copts;
  compile->add_option("--lexicon", lexicon_path)->required();
  compile->add_option("--units", units_path, "unit inventory (default: units of the lexicon)");
  compile->add_option("--lm", compile_lm, "ARPA grammar")->required();
  compile->add_option("--graph-id", graph_id)->required();
  compile->add_flag("--optional-silence", copts.lexicon.optional_silence);
  compile->add_option("--silence-prob", copts.lexicon.silence_prob)->capture_default_str();
  compile->add_option("--silence-unit", copts.lexicon.silence_unit)->capture_default_str();
  compile->add_option("--out", compile_out, "output prefix")->required();
  compile->callback([&] {
    action = [&] {
      std::vector<std::string> inventory;
      if (!units_path.empty()) inventory = ReadInventoryFile(units_path);
      const Lexicon lex =
          ReadLexiconFile(lexicon_path, units_path.empty() ? nullptr : &inventory);
      GrammarFstOptions gopts;
      gopts.words = lex.WordSymbols();
      DecodingGraph graph = CompileDecodingGraph(
          lex, LmToGrammarFst(ReadArpaFile(compile_lm), gopts), graph_id, copts);
      graph.lm = compile_lm;
      WriteDecodingGraph(graph, compile_out);
    };
  });

  // union-graphs
  auto *unite = app.add_subcommand("union-graphs", "union of compiled graphs");
  std::vector<std::string> members;
  std::string prior = "none", union_out;
  unite->add_option("--graph", members, "member graph prefixes")->required()->expected(1, -1);
  unite->add_option("--union-prior", prior)
      ->check(CLI::IsMember({"none", "uniform"}))
      ->capture_default_str();
  unite->add_option("--out", union_out, "output prefix")->required();
  unite->callback([&] {
    action = [&] {
      std::vector<DecodingGraph> graphs;
      for (const auto &m : members) graphs.push_back(ReadDecodingGraph(m));
      WriteDecodingGraph(BuildMultiGraph(graphs, ParsePrior(prior)), union_out);
    };
  });

  // synth-scores
  auto *synth = app.add_subcommand("synth-scores", "synthesize acoustic scores");
  std::string synth_units, synth_lexicon, synth_refs, synth_out;
  SynthOptions sopts;
  uint64_t synth_seed = 1;
  synth->add_option("--units", synth_units)->required();
  synth->add_option("--lexicon", synth_lexicon)->required();
  synth->add_option("--refs", synth_refs, "reference segments")->required();
  synth->add_option("--frames-per-unit", sopts.frames_per_unit)->capture_default_str();
  synth->add_option("--margin", sopts.margin)->capture_default_str();
  synth->add_option("--noise-sd", sopts.noise_sd)->capture_default_str();
  synth->add_option("--seed", synth_seed)->capture_default_str();
  synth->add_option("--out", synth_out, "scores archive")->required();
  synth->callback([&] {
    action = [&] {
      const auto inventory = ReadInventoryFile(synth_units);
      const Lexicon lex = ReadLexiconFile(synth_lexicon, &inventory);
      std::vector<AcousticScores> archive;
      for (const auto &ref : ReadReferencesFile(synth_refs)) {
        auto rng = SubstreamRng(synth_seed, "noise/" + ref.utt_id);
        AcousticScores s =
            SynthAcousticScores(UnitSequence(lex, ref.words), inventory, sopts, &rng);
        s.utt_id = ref.utt_id;
        archive.push_back(std::move(s));
      }
      WriteScoresArchive(archive, synth_out);
    };
  });

  // decode
  auto *decode = app.add_subcommand("decode", "decode a scores archive");
  std::string decode_graph, decode_scores, decode_lattices, decode_hyp;
  DecodeFlags decode_flags;
  decode->add_option("--graph", decode_graph, "graph prefix")->required();
  decode->add_option("--scores", decode_scores)->required();
  decode_flags.Add(decode);
  decode->add_option("--lattices", decode_lattices, "lattice archive output");
  decode->add_option("--hyp", decode_hyp, "1-best output (default: stdout)");
  decode->callback([&] {
    action = [&] {
      const DecodeOptions opts = decode_flags.Options();
      const DecodingGraph graph = ReadDecodingGraph(decode_graph);
      const Decoder decoder(graph);
      std::vector<UtteranceLattice> lattices;
      std::ostringstream hyp;
      for (const auto &utt : ReadScoresArchiveFile(decode_scores, graph.inventory)) {
        DecodeResult r = decoder.Decode(utt, opts);
        hyp << utt.utt_id;
        for (const auto &w : r.best.words) hyp << ' ' << w;
        hyp << '\n';
        lattices.push_back({utt.utt_id, graph.graph_id, std::move(r.lattice)});
      }
      if (!decode_lattices.empty()) WriteLatticeArchiveFile(lattices, decode_lattices);
      if (decode_hyp.empty())
        std::cout << hyp.str();
      else
        WriteTextFile(decode_hyp, hyp.str());
    };
  });

  // nbest
  auto *nbest = app.add_subcommand("nbest", "n-best lists from a lattice archive");
  std::string nbest_graph, nbest_lattices, nbest_out;
  size_t nbest_n = 100;
  nbest->add_option("--graph", nbest_graph, "graph prefix the lattices came from")->required();
  nbest->add_option("--lattices", nbest_lattices)->required();
  nbest->add_option("--n", nbest_n)->capture_default_str()->check(CLI::PositiveNumber);
  nbest->add_option("--out", nbest_out)->required();
  nbest->callback([&] {
    action = [&] {
      const DecodingGraph graph = ReadDecodingGraph(nbest_graph);
      std::vector<UtteranceNBest> lists;
      for (const auto &entry : ReadLatticeArchiveFile(nbest_lattices, graph.fst.OutputSymbols()))
        lists.push_back({entry.utt_id, LatticeNBest(entry.lattice, nbest_n, entry.graph_id)});
      WriteNBestFile(lists, nbest_out);
    };
  });

  // rescore
  auto *rescore = app.add_subcommand("rescore", "rescore n-best lists per graph");
  std::string rescore_in, rescore_out;
  std::vector<std::string> models;
  RescoreConfig rc;
  rescore->add_option("--nbest", rescore_in)->required();
  rescore->add_option("--model", models, "graph_id=ARPA, one per graph")->required();
  rescore->add_option("--mu", rc.mu, "weight of the first-pass LM cost")->capture_default_str();
  rescore->add_option("--lm-scale", rc.lm_scale)->capture_default_str();
  rescore->add_option("--out", rescore_out)->required();
  rescore->callback([&] {
    action = [&] {
      for (const auto &m : models) {
        const auto eq = m.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == m.size())
          throw UsageError("--model expects graph_id=path, got '" + m + "'");
        rc.models[m.substr(0, eq)] =
            std::make_shared<NGramScorer>(ReadArpaFile(m.substr(eq + 1)));
      }
      auto lists = ReadNBestFile(rescore_in);
      for (auto &list : lists) list.hyps = RescoreNBest(list.hyps, rc);
      WriteNBestFile(lists, rescore_out);
    };
  });

  // score
  auto *score = app.add_subcommand("score", "WER report by condition");
  std::string score_ref, score_nbest, score_hyp, score_csv;
  LanguageTags tags;
  score->add_option("--ref", score_ref, "reference segments")->required();
  auto *nbest_in = score->add_option("--nbest", score_nbest, "n-best file (rank 1 is scored)");
  auto *hyp_in = score->add_option("--hyp", score_hyp, "'utt_id word...' lines");
  nbest_in->excludes(hyp_in);
  score->add_option("--languages", tags.codes, "language tag codes")->capture_default_str();
  score->add_option("--csv", score_csv, "also write the report as CSV");
  score->callback([&] {
    if (nbest_in->count() + hyp_in->count() != 1) throw CLI::RequiredError("--nbest or --hyp");
    action = [&] {
      std::map<std::string, std::vector<std::string>> hyps;
      if (!score_nbest.empty()) {
        for (const auto &list : ReadNBestFile(score_nbest))
          if (!list.hyps.empty()) hyps[list.utt_id] = list.hyps.front().words;
      } else {
        std::ifstream in(score_hyp);
        if (!in) throw FormatError("cannot open " + score_hyp);
        std::string line;
        while (std::getline(in, line)) {
          std::istringstream fields(line);
          std::string utt, word;
          if (!(fields >> utt)) continue;
          auto &words = hyps[utt];
          while (fields >> word) words.push_back(word);
        }
      }
      const WerReport report = ReportByCondition(ReadReferencesFile(score_ref), hyps, tags);
      WriteReportText(report, std::cout);
      if (!score_csv.empty()) {
        std::ofstream out(score_csv);
        if (!out) throw FormatError("cannot write " + score_csv);
        WriteReportCsv(report, out);
      }
    };
  });

  // gen-corpus
  auto *gen = app.add_subcommand("gen-corpus", "generate the synthetic bilingual data");
  SyntheticConfig gen_cfg;
  std::string gen_out;
  AddSyntheticOptions(gen, &gen_cfg);
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->callback([&] {
    action = [&] { WriteSyntheticData(GenerateSynthetic(gen_cfg), gen_cfg, gen_out); };
  });

  // run-experiment
  auto *exp = app.add_subcommand("run-experiment", "run the full comparison grid");
  ExperimentConfig ecfg;
  std::string workdir, exp_csv, exp_prior = "none";
  bool reuse = false;
  DecodeFlags exp_decode;
  {
    std::ostringstream beam;
    beam << ecfg.decode.beam;
    exp_decode.beam = beam.str();
  }
  exp_decode.lattice_beam = ecfg.decode.lattice_beam;
  exp_decode.loop_cost = ecfg.decode.loop_cost;
  AddSyntheticOptions(exp, &ecfg.data);
  exp->add_option("--roster", ecfg.roster, "graphs to build (default: all; must include cs)");
  exp->add_option("--decode-order", ecfg.decode_order)->capture_default_str();
  exp->add_option("--rescore-order", ecfg.rescore_order)->capture_default_str();
  exp->add_option("--tune-steps", ecfg.tune_steps)->capture_default_str();
  exp_decode.Add(exp);
  exp->add_option("--union-prior", exp_prior)
      ->check(CLI::IsMember({"none", "uniform"}))
      ->capture_default_str();
  exp->add_option("--nbest", ecfg.nbest)->capture_default_str()->check(CLI::PositiveNumber);
  exp->add_option("--mu", ecfg.mu)->capture_default_str();
  exp->add_option("--lm-scale", ecfg.lm_scale)->capture_default_str();
  exp->add_option("--workdir", workdir, "directory for all stage outputs")->required();
  exp->add_flag("--reuse", reuse, "keep stage outputs that already exist");
  exp->add_option("--csv", exp_csv, "copy of the CSV report");
  exp->callback([&] {
    action = [&] {
      ecfg.decode = exp_decode.Options();
      ecfg.prior = ParsePrior(exp_prior);
      const ExperimentResult r = RunExperiment(ecfg, workdir, reuse);
      std::cout << r.text;
      if (!exp_csv.empty()) WriteTextFile(exp_csv, r.csv);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    action();
    return kOk;
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const SearchError &e) {
    std::cerr << "search failed: " << e.what() << '\n';
    return kSearch;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::filesystem::filesystem_error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
}

}  // namespace
}  // namespace mgd

int main(int argc, char **argv) { return mgd::Run(argc, argv); }
