// nbest_io.cc
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

#include "mgd/rescore/nbest_io.h"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "mgd/base/error.h"

namespace mgd {
namespace {

std::string Cost(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void WriteNBest(const std::vector<UtteranceNBest> &lists, std::ostream &os) {
  for (const auto &list : lists)
    for (size_t i = 0; i < list.hyps.size(); ++i) {
      const Hypothesis &h = list.hyps[i];
      os << list.utt_id << ' ' << i + 1 << ' ' << h.graph_id << ' '
         << Cost(h.am_cost) << ' ' << Cost(h.lm_cost) << ' ' << Cost(h.total_cost);
      for (const auto &w : h.words) os << ' ' << w;
      os << '\n';
    }
}

void WriteNBestFile(const std::vector<UtteranceNBest> &lists,
                    const std::string &path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  WriteNBest(lists, out);
}

std::vector<UtteranceNBest> ReadNBest(std::istream &is, const std::string &source) {
  std::vector<UtteranceNBest> lists;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string utt, rank_text, graph_id, am, lm, total;
    if (!(fields >> utt)) continue;
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    if (!(fields >> rank_text >> graph_id >> am >> lm >> total))
      throw FormatError(where + "expected 'utt rank graph_id am lm total words...'");
    Hypothesis h;
    h.graph_id = graph_id;
    h.am_cost = ParseDouble(am);
    h.lm_cost = ParseDouble(lm);
    h.total_cost = ParseDouble(total);
    for (std::string w; fields >> w;) h.words.push_back(w);
    long rank = 0;
    try {
      size_t used = 0;
      rank = std::stol(rank_text, &used);
      if (used != rank_text.size()) rank = 0;
    } catch (const std::exception &) {
      rank = 0;
    }
    if (lists.empty() || lists.back().utt_id != utt) {
      if (!seen.insert(utt).second)
        throw FormatError(where + "lines of utterance '" + utt + "' are not contiguous");
      lists.push_back({utt, {}});
    }
    if (rank != static_cast<long>(lists.back().hyps.size()) + 1)
      throw FormatError(where + "expected rank " +
                        std::to_string(lists.back().hyps.size() + 1) + ", found '" +
                        rank_text + "'");
    lists.back().hyps.push_back(std::move(h));
  }
  return lists;
}

std::vector<UtteranceNBest> ReadNBestFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  return ReadNBest(in, path);
}

}  // namespace mgd
