// symbol_table.cc
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

#include "mgd/fst/symbol_table.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "mgd/base/error.h"

namespace mgd {

namespace {

const std::string kEmpty;

}  // namespace

bool IsDisambiguationSymbol(std::string_view symbol) {
  if (symbol.size() < 2 || symbol[0] != '#') return false;
  return std::all_of(symbol.begin() + 1, symbol.end(),
                     [](char c) { return std::isdigit(c); });
}

bool IsGraphTag(std::string_view symbol) {
  return symbol.size() > kGraphTagPrefix.size() &&
         symbol.substr(0, kGraphTagPrefix.size()) == kGraphTagPrefix;
}

bool IsReservedSymbol(std::string_view symbol) {
  return symbol == kEpsilonSymbol || symbol == kUnknownSymbol ||
         symbol == kSentenceStart || symbol == kSentenceEnd ||
         symbol == kSilenceWord || IsDisambiguationSymbol(symbol) ||
         IsGraphTag(symbol);
}

std::string GraphTagSymbol(std::string_view graph_id) {
  return std::string(kGraphTagPrefix) + std::string(graph_id);
}

std::string GraphIdFromTag(std::string_view symbol) {
  if (!IsGraphTag(symbol)) return {};
  return std::string(symbol.substr(kGraphTagPrefix.size()));
}

SymbolTable::SymbolTable() { AddSymbol(kEpsilonSymbol, kEpsilon); }

Label SymbolTable::AddSymbol(std::string_view symbol) {
  const Label existing = Find(symbol);
  if (existing != kNoLabel) return existing;
  return AddSymbol(symbol, AvailableKey());
}

Label SymbolTable::AddSymbol(std::string_view symbol, Label id) {
  if (symbol.empty()) throw SymbolTableError("empty symbol");
  if (id < 0) throw SymbolTableError("negative symbol id");
  if (id == kEpsilon && symbol != kEpsilonSymbol)
    throw SymbolTableError("id 0 is reserved for <eps>, got '" +
                           std::string(symbol) + "'");
  const Label existing = Find(symbol);
  if (existing == id) return id;
  if (existing != kNoLabel)
    throw SymbolTableError("symbol '" + std::string(symbol) +
                           "' already has id " + std::to_string(existing));
  if (Member(id))
    throw SymbolTableError("id " + std::to_string(id) +
                           " already bound to '" + Find(id) + "'");
  if (static_cast<size_t>(id) >= symbols_.size()) symbols_.resize(id + 1);
  symbols_[id] = std::string(symbol);
  ids_.emplace(symbols_[id], id);
  ++size_;
  return id;
}

Label SymbolTable::Find(std::string_view symbol) const {
  auto it = ids_.find(std::string(symbol));
  return it == ids_.end() ? kNoLabel : it->second;
}

const std::string &SymbolTable::Find(Label id) const {
  if (id < 0 || static_cast<size_t>(id) >= symbols_.size()) return kEmpty;
  return symbols_[id];
}

std::vector<Label> SymbolTable::Labels() const {
  std::vector<Label> labels;
  labels.reserve(size_);
  for (size_t i = 0; i < symbols_.size(); ++i)
    if (!symbols_[i].empty()) labels.push_back(static_cast<Label>(i));
  return labels;
}

void SymbolTable::WriteText(std::ostream &os) const {
  for (Label id : Labels()) os << symbols_[id] << ' ' << id << '\n';
}

SymbolTable SymbolTable::ReadText(std::istream &is, const std::string &source) {
  SymbolTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string symbol, id_text, extra;
    if (!(fields >> symbol)) continue;
    if (!(fields >> id_text) || (fields >> extra))
      throw FormatError(source + ":" + std::to_string(lineno) +
                        ": expected 'symbol id'");
    char *end = nullptr;
    const long id = std::strtol(id_text.c_str(), &end, 10);
    if (*end != '\0' || id < 0)
      throw FormatError(source + ":" + std::to_string(lineno) +
                        ": bad symbol id '" + id_text + "'");
    try {
      table.AddSymbol(symbol, static_cast<Label>(id));
    } catch (const SymbolTableError &e) {
      throw FormatError(source + ":" + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
  return table;
}

SymbolTable SymbolTable::ReadFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open symbol table " + path);
  return ReadText(in, path);
}

void SymbolTable::WriteFile(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write symbol table " + path);
  WriteText(out);
}

bool CompatibleSymbols(const SymbolTable *a, const SymbolTable *b) {
  if (a == nullptr || b == nullptr || a == b) return true;
  for (Label id : b->Labels()) {
    const std::string &symbol = b->Find(id);
    const Label other = a->Find(symbol);
    if (other != kNoLabel && other != id) return false;
    if (a->Member(id) && a->Find(id) != symbol) return false;
  }
  return true;
}

SymbolTablePtr MergeSymbolTables(const SymbolTablePtr &a,
                                 const SymbolTablePtr &b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (!CompatibleSymbols(a.get(), b.get()))
    throw SymbolTableError("symbol tables conflict and cannot be merged");
  if (*a == *b) return a;
  auto merged = std::make_shared<SymbolTable>(*a);
  for (Label id : b->Labels()) merged->AddSymbol(b->Find(id), id);
  return merged;
}

}  // namespace mgd
