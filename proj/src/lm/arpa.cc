// arpa.cc
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

#include "mgd/lm/arpa.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "mgd/base/error.h"
#include "mgd/fst/symbol_table.h"
#include "mgd/fst/weight.h"

namespace mgd {
namespace {

std::string FormatValue(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.7g", value);
  return buf;
}

struct ArpaLine {
  int lineno;
  std::vector<std::string> fields;
};

}  // namespace

void WriteArpa(const NGramModel &model, std::ostream &os) {
  os << "\n\\data\\\n";
  for (int k = 1; k <= model.Order(); ++k)
    os << "ngram " << k << "=" << model.NumNGrams(k) << "\n";
  for (int k = 1; k <= model.Order(); ++k) {
    os << "\n\\" << k << "-grams:\n";
    for (const auto &[ngram, entry] : model.NGrams(k)) {
      os << FormatValue(entry.logprob) << '\t';
      for (size_t i = 0; i < ngram.size(); ++i)
        os << (i ? " " : "") << model.Word(ngram[i]);
      if (k < model.Order() && entry.backoff != 0.0)
        os << '\t' << FormatValue(entry.backoff);
      os << '\n';
    }
  }
  os << "\n\\end\\\n";
}

void WriteArpaFile(const NGramModel &model, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  WriteArpa(model, out);
}

NGramModel ReadArpa(std::istream &is, const std::string &source) {
  auto fail = [&](int lineno, const std::string &msg) -> FormatError {
    return FormatError(source + ":" + std::to_string(lineno) + ": " + msg);
  };
  std::string text;
  int lineno = 0;
  auto next_line = [&]() -> std::optional<std::string> {
    while (std::getline(is, text)) {
      ++lineno;
      if (!text.empty() && text.back() == '\r') text.pop_back();
      if (text.find_first_not_of(" \t") != std::string::npos) return text;
    }
    return std::nullopt;
  };

  auto line = next_line();
  if (!line || *line != "\\data\\") throw fail(lineno, "expected \\data\\");
  std::vector<size_t> declared;
  while ((line = next_line()) && line->rfind("ngram ", 0) == 0) {
    int k = 0;
    long long n = -1;
    char tail = 0;
    if (std::sscanf(line->c_str(), "ngram %d=%lld%c", &k, &n, &tail) != 2 ||
        k != static_cast<int>(declared.size()) + 1 || n < 0)
      throw fail(lineno, "malformed count line '" + *line + "'");
    declared.push_back(static_cast<size_t>(n));
  }
  if (declared.empty()) throw fail(lineno, "no ngram counts in header");
  const int order = static_cast<int>(declared.size());

  // Sections are buffered so the vocabulary is known before ids are bound.
  std::vector<std::vector<ArpaLine>> sections(order);
  for (int k = 1; k <= order; ++k) {
    const std::string header = "\\" + std::to_string(k) + "-grams:";
    if (!line || *line != header)
      throw fail(lineno, "expected " + header);
    while ((line = next_line()) && (*line)[0] != '\\') {
      ArpaLine entry{lineno, {}};
      std::istringstream tokens(*line);
      std::string field;
      while (tokens >> field) entry.fields.push_back(field);
      const size_t n = entry.fields.size();
      if (n != static_cast<size_t>(k) + 1 && n != static_cast<size_t>(k) + 2)
        throw fail(lineno, "expected " + std::to_string(k) + "-gram entry");
      if (n == static_cast<size_t>(k) + 2 && k == order)
        throw fail(lineno, "backoff weight on a top-order n-gram");
      sections[k - 1].push_back(std::move(entry));
    }
    if (sections[k - 1].size() != declared[k - 1])
      throw fail(lineno, header + " section has " +
                             std::to_string(sections[k - 1].size()) +
                             " entries but the header declares " +
                             std::to_string(declared[k - 1]));
  }
  if (!line || *line != "\\end\\") throw fail(lineno, "expected \\end\\");

  std::vector<std::string> vocab;
  std::map<std::string, WordId> ids;
  for (const auto &entry : sections[0]) {
    if (!ids.emplace(entry.fields[1], static_cast<WordId>(vocab.size())).second)
      throw fail(entry.lineno, "duplicate unigram '" + entry.fields[1] + "'");
    vocab.push_back(entry.fields[1]);
  }
  const std::string bos(kSentenceStart), eos(kSentenceEnd);
  if (!ids.count(eos)) throw fail(lineno, "model has no </s> unigram");
  const bool add_bos = !ids.count(bos);
  if (add_bos) vocab.push_back(bos);

  NGramModel model(order, vocab);
  if (add_bos) model.Set({model.BosId()}, {kLog10Zero, 0.0});
  for (int k = 1; k <= order; ++k)
    for (const auto &entry : sections[k - 1]) {
      NGram ngram;
      for (int i = 1; i <= k; ++i) {
        const auto it = ids.find(entry.fields[i]);
        if (it == ids.end())
          throw fail(entry.lineno, "word '" + entry.fields[i] +
                                       "' missing from the unigrams");
        ngram.push_back(it->second);
      }
      NGramModel::Entry value;
      try {
        value.logprob = ParseDouble(entry.fields[0]);
        if (entry.fields.size() == static_cast<size_t>(k) + 2)
          value.backoff = ParseDouble(entry.fields.back());
      } catch (const FormatError &) {
        throw fail(entry.lineno, "non-numeric value");
      }
      if (k > 1 && model.Find(ngram) != nullptr)
        throw fail(entry.lineno, "duplicate n-gram");
      model.Set(ngram, value);
    }
  return model;
}

NGramModel ReadArpaFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return ReadArpa(in, path);
}

}  // namespace mgd
