// experiment.h
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

#ifndef MGD_EXPERIMENT_EXPERIMENT_H_
#define MGD_EXPERIMENT_EXPERIMENT_H_

#include <string>
#include <vector>

#include "mgd/decoder/decoder.h"
#include "mgd/eval/wer.h"
#include "mgd/experiment/synthetic.h"
#include "mgd/graph/decoding_graph.h"

namespace mgd {

struct ExperimentConfig {
  SyntheticConfig data;
  // Graphs to build, named like the corpora ("cs", A, B, B+, B++). Empty
  // means all of them. "cs" is required.
  std::vector<std::string> roster;
  int decode_order = 3;
  int rescore_order = 4;
  int tune_steps = 20;  // grid of the interpolation weight
  DecodeOptions decode{12.0, 6.0, 0.69};
  UnionPrior prior = UnionPrior::kNone;
  size_t nbest = 100;
  double mu = 0.5;
  double lm_scale = 1.0;
};

// Systems evaluated for a roster, in report order:
//   cs                single graph, code-switched LM
//   cs+X              single graph, cs LM interpolated with X (X a B corpus)
//   union-X           union of the cs graph and the X graph
//   union-A-X         union of the cs, A and largest-B graphs
std::vector<std::string> ExperimentSystems(const ExperimentConfig &cfg);

struct SystemResult {
  std::string system;
  bool rescored = false;
  WerReport report;
};

struct ExperimentResult {
  std::vector<SystemResult> rows;
  std::string csv;   // system,rescored,condition,words,sub,del,ins,wer
  std::string text;  // one row per system, conditions as columns
};

// Writes the generated data under `dir`: units.txt, lexicon.txt, one
// corpus per LM (<name>.txt), dev.ref, test.ref, dev.scores, test.scores
// (last, so its presence marks a complete directory).
void WriteSyntheticData(const SyntheticData &data, const SyntheticConfig &cfg,
                        const std::string &dir);

// Runs every stage under `workdir`:
//   data/    units, lexicon, corpora, dev/test references and scores
//   lm/      ARPA models (decoding and rescoring order), interpolation
//            weights tuned on the dev text, dev perplexities
//   graph/   compiled single graphs and unions
//   decode/  test n-best lists before and after rescoring
//   report.csv, report.txt
// Each stage reads its inputs back from the files of the previous one. With
// `reuse`, files that already exist are not regenerated. Errors are
// rethrown with the stage name prefixed, keeping their type.
ExperimentResult RunExperiment(const ExperimentConfig &cfg, const std::string &workdir,
                               bool reuse = false);

}  // namespace mgd

#endif  // MGD_EXPERIMENT_EXPERIMENT_H_
