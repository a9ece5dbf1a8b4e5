// corpus.h
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

#ifndef MGD_LM_CORPUS_H_
#define MGD_LM_CORPUS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace mgd {

using Sentence = std::vector<std::string>;

// Whitespace-tokenized sentences without boundary markers.
struct TextCorpus {
  std::vector<Sentence> sentences;

  size_t NumTokens() const;
  bool Empty() const { return sentences.empty(); }
};

// One sentence per line; blank lines are skipped. Throws FormatError on
// reserved tokens such as `<s>` or `#0`.
TextCorpus ReadCorpus(std::istream &is, const std::string &source);
TextCorpus ReadCorpusFile(const std::string &path);
void WriteCorpus(const TextCorpus &corpus, std::ostream &os);
void WriteCorpusFile(const TextCorpus &corpus, const std::string &path);

std::string JoinWords(const Sentence &words);

}  // namespace mgd

#endif  // MGD_LM_CORPUS_H_
