// rescore.cc
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

#include "mgd/rescore/rescore.h"

#include <algorithm>

#include "mgd/base/error.h"

namespace mgd {

std::vector<Hypothesis> RescoreNBest(const std::vector<Hypothesis> &hyps,
                                     const RescoreConfig &config) {
  if (!(config.mu >= 0 && config.mu <= 1))
    throw UsageError("rescoring weight mu must lie in [0, 1]");
  if (!(config.lm_scale > 0)) throw UsageError("lm_scale must be positive");
  std::vector<Hypothesis> out;
  out.reserve(hyps.size());
  for (const Hypothesis &hyp : hyps) {
    auto it = config.models.find(hyp.graph_id);
    if (it == config.models.end() || !it->second)
      throw UsageError("no rescoring model for graph id '" + hyp.graph_id + "'");
    Hypothesis h = hyp;
    // At mu = 1 the rescoring model is not consulted at all.
    if (config.mu < 1) {
      h.lm_cost = config.mu * hyp.lm_cost +
                  (1 - config.mu) * config.lm_scale * it->second->Cost(hyp.words);
      h.total_cost = h.am_cost + h.lm_cost;
    }
    out.push_back(std::move(h));
  }
  std::stable_sort(out.begin(), out.end(), [](const Hypothesis &a, const Hypothesis &b) {
    return a.total_cost < b.total_cost;
  });
  return out;
}

}  // namespace mgd
