// wer.cc
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

#include "mgd/eval/wer.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "mgd/base/error.h"

namespace mgd {

std::string LanguageOf(const std::string &word, const LanguageTags &tags) {
  const size_t pos = word.rfind(tags.delimiter);
  if (pos == std::string::npos || pos == 0) return "";
  const std::string code = word.substr(pos + 1);
  for (const auto &c : tags.codes)
    if (c == code) return code;
  return "";
}

std::string StripLanguageTag(const std::string &word, const LanguageTags &tags) {
  std::string out = word;
  for (std::string code; !(code = LanguageOf(out, tags)).empty();)
    out.resize(out.size() - code.size() - 1);
  return out;
}

std::vector<std::string> StripLanguageTags(const std::vector<std::string> &words,
                                           const LanguageTags &tags) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto &w : words) out.push_back(StripLanguageTag(w, tags));
  return out;
}

EditCounts ComputeWer(const std::vector<std::string> &ref,
                      const std::vector<std::string> &hyp) {
  if (ref.empty()) throw FormatError("empty reference");
  // cost[i][j] = (errors, subs, dels) for ref[0, i) against hyp[0, j);
  // lexicographic minimization is compatible with adding step costs.
  using Cost = std::tuple<long, long, long>;
  const size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<Cost>> cost(n + 1, std::vector<Cost>(m + 1));
  for (size_t i = 1; i <= n; ++i) {
    auto [e, s, d] = cost[i - 1][0];
    cost[i][0] = {e + 1, s, d + 1};
  }
  for (size_t j = 1; j <= m; ++j) {
    auto [e, s, d] = cost[0][j - 1];
    cost[0][j] = {e + 1, s, d};
  }
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = 1; j <= m; ++j) {
      auto [de, ds, dd] = cost[i - 1][j - 1];
      Cost best = ref[i - 1] == hyp[j - 1] ? Cost{de, ds, dd} : Cost{de + 1, ds + 1, dd};
      auto [le, ls, ld] = cost[i - 1][j];
      best = std::min(best, Cost{le + 1, ls, ld + 1});
      auto [ie, is, id] = cost[i][j - 1];
      best = std::min(best, Cost{ie + 1, is, id});
      cost[i][j] = best;
    }
  const auto [errors, subs, dels] = cost[n][m];
  EditCounts counts;
  counts.ref_words = static_cast<long>(n);
  counts.sub = subs;
  counts.del = dels;
  counts.ins = errors - subs - dels;
  return counts;
}

WerReport ReportByCondition(
    const std::vector<SegmentRef> &refs,
    const std::map<std::string, std::vector<std::string>> &hyps,
    const LanguageTags &tags) {
  WerReport report;
  std::set<std::string> seen;
  for (const auto &ref : refs) {
    if (!seen.insert(ref.utt_id).second)
      throw FormatError("duplicate utterance id '" + ref.utt_id + "'");
    const auto ref_words = StripLanguageTags(ref.words, tags);
    for (const auto &w : ref.words) ++report.words_by_language[LanguageOf(w, tags)];
    EditCounts counts;
    auto it = hyps.find(ref.utt_id);
    if (it == hyps.end()) {
      report.missing.push_back(ref.utt_id);
      counts = ComputeWer(ref_words, {});
    } else {
      counts = ComputeWer(ref_words, StripLanguageTags(it->second, tags));
    }
    report.by_condition[ref.condition] += counts;
    report.all += counts;
  }
  for (const char *c : {"fy", "nl", "fy-nl"})
    if (report.by_condition.count(c)) report.conditions.push_back(c);
  for (const auto &[c, counts] : report.by_condition)
    if (std::find(report.conditions.begin(), report.conditions.end(), c) ==
        report.conditions.end())
      report.conditions.push_back(c);
  return report;
}

namespace {

std::string Fixed(double v, int decimals) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

void WriteReportText(const WerReport &report, std::ostream &os) {
  std::vector<std::pair<std::string, EditCounts>> columns;
  for (const auto &c : report.conditions) columns.emplace_back(c, report.by_condition.at(c));
  columns.emplace_back("all", report.all);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%-8s", "");
  os << buf;
  for (const auto &column : columns) {
    std::snprintf(buf, sizeof(buf), " %9s", column.first.c_str());
    os << buf;
  }
  os << '\n';
  auto row = [&](const char *label, auto value) {
    std::snprintf(buf, sizeof(buf), "%-8s", label);
    os << buf;
    for (const auto &column : columns) {
      std::snprintf(buf, sizeof(buf), " %9s", value(column.second).c_str());
      os << buf;
    }
    os << '\n';
  };
  row("#words", [](const EditCounts &c) { return std::to_string(c.ref_words); });
  row("sub", [](const EditCounts &c) { return std::to_string(c.sub); });
  row("del", [](const EditCounts &c) { return std::to_string(c.del); });
  row("ins", [](const EditCounts &c) { return std::to_string(c.ins); });
  row("WER", [](const EditCounts &c) { return Fixed(c.Wer(), 2); });
  if (!report.missing.empty())
    os << "missing hypotheses: " << report.missing.size() << '\n';
}

void WriteReportCsv(const WerReport &report, std::ostream &os) {
  os << "condition,words,sub,del,ins,wer\n";
  auto line = [&](const std::string &name, const EditCounts &c) {
    os << name << ',' << c.ref_words << ',' << c.sub << ',' << c.del << ',' << c.ins
       << ',' << Fixed(c.Wer(), 4) << '\n';
  };
  for (const auto &c : report.conditions) line(c, report.by_condition.at(c));
  line("all", report.all);
}

std::vector<SegmentRef> ReadReferences(std::istream &is, const std::string &source) {
  std::vector<SegmentRef> refs;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream fields(line);
    SegmentRef ref;
    if (!(fields >> ref.utt_id)) continue;
    for (std::string w; fields >> w;) ref.words.push_back(w);
    if (ref.words.size() < 2)
      throw FormatError(source + ":" + std::to_string(lineno) +
                        ": expected 'utt_id condition word...'");
    ref.condition = ref.words.front();
    ref.words.erase(ref.words.begin());
    refs.push_back(std::move(ref));
  }
  return refs;
}

std::vector<SegmentRef> ReadReferencesFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  return ReadReferences(in, path);
}

void WriteReferences(const std::vector<SegmentRef> &refs, std::ostream &os) {
  for (const auto &ref : refs) {
    os << ref.utt_id << ' ' << ref.condition;
    for (const auto &w : ref.words) os << ' ' << w;
    os << '\n';
  }
}

void WriteReferencesFile(const std::vector<SegmentRef> &refs, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  WriteReferences(refs, out);
}

}  // namespace mgd
