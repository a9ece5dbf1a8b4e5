// lexicon.cc
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

#include "mgd/graph/lexicon.h"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "mgd/base/error.h"

namespace mgd {

Lexicon::Lexicon(std::vector<std::string> inventory)
    : inventory_(std::move(inventory)) {
  if (inventory_.empty()) throw FormatError("empty unit inventory");
  for (size_t i = 0; i < inventory_.size(); ++i) {
    const auto &u = inventory_[i];
    if (u.empty() || IsReservedSymbol(u) || u.find_first_of(" \t") != std::string::npos)
      throw FormatError("invalid unit name '" + u + "'");
    if (!unit_index_.emplace(u, static_cast<int>(i)).second)
      throw FormatError("duplicate unit '" + u + "' in inventory");
  }
}

bool Lexicon::HasUnit(const std::string &unit) const {
  return unit_index_.count(unit) > 0;
}

void Lexicon::AddPronunciation(const std::string &word,
                               const std::vector<std::string> &units,
                               double prob) {
  if (word.empty() || IsReservedSymbol(word))
    throw FormatError("reserved or empty word '" + word + "' in lexicon");
  if (units.empty()) throw FormatError("empty pronunciation for '" + word + "'");
  if (!(prob > 0.0 && prob <= 1.0))
    throw FormatError("pronunciation probability of '" + word +
                      "' must be in (0, 1]");
  for (const auto &u : units)
    if (!HasUnit(u))
      throw FormatError("unknown unit '" + u + "' in pronunciation of '" +
                        word + "'");
  entries_[word].push_back({units, prob});
}

SymbolTablePtr Lexicon::UnitSymbols() const {
  auto table = std::make_shared<SymbolTable>();
  for (const auto &u : inventory_) table->AddSymbol(u);
  return table;
}

SymbolTablePtr Lexicon::WordSymbols() const {
  auto table = std::make_shared<SymbolTable>();
  for (const auto &[word, prons] : entries_) table->AddSymbol(word);
  table->AddSymbol(kBackoffSymbol);
  return table;
}

Lexicon ReadLexicon(std::istream &is, const std::string &source,
                    const std::vector<std::string> *inventory) {
  std::vector<std::pair<std::string, std::vector<std::string>>> lines;
  std::set<std::string> seen_units;
  std::string text;
  int lineno = 0;
  while (std::getline(is, text)) {
    ++lineno;
    std::istringstream tokens(text);
    std::string word, unit;
    if (!(tokens >> word)) continue;
    std::vector<std::string> units;
    while (tokens >> unit) units.push_back(unit);
    if (units.empty())
      throw FormatError(source + ":" + std::to_string(lineno) +
                        ": word '" + word + "' has no units");
    seen_units.insert(units.begin(), units.end());
    lines.emplace_back(std::move(word), std::move(units));
  }
  Lexicon lex(inventory != nullptr
                  ? *inventory
                  : std::vector<std::string>(seen_units.begin(), seen_units.end()));
  lineno = 0;
  for (const auto &[word, units] : lines) {
    ++lineno;
    try {
      lex.AddPronunciation(word, units);
    } catch (const FormatError &e) {
      throw FormatError(source + ": entry " + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
  return lex;
}

Lexicon ReadLexiconFile(const std::string &path,
                        const std::vector<std::string> *inventory) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return ReadLexicon(in, path, inventory);
}

void WriteLexicon(const Lexicon &lex, std::ostream &os) {
  for (const auto &[word, prons] : lex.Entries())
    for (const auto &p : prons) {
      os << word;
      for (const auto &u : p.units) os << ' ' << u;
      os << '\n';
    }
}

void WriteLexiconFile(const Lexicon &lex, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  WriteLexicon(lex, out);
}

std::vector<std::string> ReadInventoryFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::vector<std::string> units;
  std::string unit;
  while (in >> unit) units.push_back(unit);
  return units;
}

void WriteInventoryFile(const std::vector<std::string> &units,
                        const std::string &path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  for (const auto &u : units) out << u << '\n';
}

std::string InventoryHash(const std::vector<std::string> &units) {
  uint64_t h = 1469598103934665603ULL;
  for (const auto &u : units) {
    for (unsigned char c : u) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= '\n';
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mgd
