// wer.h
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

#ifndef MGD_EVAL_WER_H_
#define MGD_EVAL_WER_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace mgd {

struct LanguageTags {
  char delimiter = '_';
  std::vector<std::string> codes{"fy", "nl"};
};

// Removes a final `<delimiter><code>` suffix when `code` is declared and
// something precedes it, repeatedly, so that stripping is idempotent. Other
// tokens are returned unchanged.
std::string StripLanguageTag(const std::string &word, const LanguageTags &tags = {});
std::vector<std::string> StripLanguageTags(const std::vector<std::string> &words,
                                           const LanguageTags &tags = {});
// The declared code a token is tagged with, or "" if untagged.
std::string LanguageOf(const std::string &word, const LanguageTags &tags = {});

struct EditCounts {
  long ref_words = 0;
  long sub = 0;
  long del = 0;
  long ins = 0;

  long Errors() const { return sub + del + ins; }
  double Wer() const { return ref_words ? 100.0 * Errors() / ref_words : 0.0; }
  EditCounts &operator+=(const EditCounts &o) {
    ref_words += o.ref_words;
    sub += o.sub;
    del += o.del;
    ins += o.ins;
    return *this;
  }
};

// Minimum edit distance with unit costs. Among optimal alignments the one
// with the fewest substitutions, then the fewest deletions, is reported.
// Throws FormatError on an empty reference.
EditCounts ComputeWer(const std::vector<std::string> &ref,
                      const std::vector<std::string> &hyp);

struct SegmentRef {
  std::string utt_id;
  std::string condition;
  std::vector<std::string> words;  // possibly language-tagged
};

// Per-condition errors pooled over words.
struct WerReport {
  std::vector<std::string> conditions;  // column order
  std::map<std::string, EditCounts> by_condition;
  EditCounts all;
  // Reference tokens per language tag ("" for untagged tokens).
  std::map<std::string, long> words_by_language;
  std::vector<std::string> missing;  // references without a hypothesis
};

// Scores every reference against hyps[utt_id] after stripping language tags
// from both sides. A missing hypothesis counts as all deletions and is
// listed in `missing`. Conditions fy, nl, fy-nl come first, others follow
// in sorted order. Throws FormatError on a duplicate utterance id.
WerReport ReportByCondition(
    const std::vector<SegmentRef> &refs,
    const std::map<std::string, std::vector<std::string>> &hyps,
    const LanguageTags &tags = {});

// Conditions as columns plus `all`, in the layout of a results table.
void WriteReportText(const WerReport &report, std::ostream &os);
// Header `condition,words,sub,del,ins,wer`, one row per condition, then
// `all`.
void WriteReportCsv(const WerReport &report, std::ostream &os);

// Reference file lines: `utt_id condition word...`.
std::vector<SegmentRef> ReadReferences(std::istream &is, const std::string &source);
std::vector<SegmentRef> ReadReferencesFile(const std::string &path);
void WriteReferences(const std::vector<SegmentRef> &refs, std::ostream &os);
void WriteReferencesFile(const std::vector<SegmentRef> &refs, const std::string &path);

}  // namespace mgd

#endif  // MGD_EVAL_WER_H_
