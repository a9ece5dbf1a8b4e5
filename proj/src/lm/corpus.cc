// corpus.cc
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

#include "mgd/lm/corpus.h"

#include <fstream>
#include <sstream>

#include "mgd/base/error.h"
#include "mgd/fst/symbol_table.h"

namespace mgd {

size_t TextCorpus::NumTokens() const {
  size_t n = 0;
  for (const auto &s : sentences) n += s.size();
  return n;
}

TextCorpus ReadCorpus(std::istream &is, const std::string &source) {
  TextCorpus corpus;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream tokens(line);
    Sentence sentence;
    std::string token;
    while (tokens >> token) {
      if (IsReservedSymbol(token))
        throw FormatError(source + ":" + std::to_string(lineno) +
                          ": reserved token '" + token + "' in corpus");
      sentence.push_back(std::move(token));
    }
    if (!sentence.empty()) corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

TextCorpus ReadCorpusFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return ReadCorpus(in, path);
}

std::string JoinWords(const Sentence &words) {
  std::string out;
  for (const auto &w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

void WriteCorpus(const TextCorpus &corpus, std::ostream &os) {
  for (const auto &s : corpus.sentences) os << JoinWords(s) << '\n';
}

void WriteCorpusFile(const TextCorpus &corpus, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  WriteCorpus(corpus, out);
}

}  // namespace mgd
