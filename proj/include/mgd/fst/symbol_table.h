// symbol_table.h
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

#ifndef MGD_FST_SYMBOL_TABLE_H_
#define MGD_FST_SYMBOL_TABLE_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mgd {

using Label = int32_t;
using StateId = int32_t;

constexpr Label kEpsilon = 0;
constexpr Label kNoLabel = -1;
constexpr StateId kNoStateId = -1;

inline constexpr std::string_view kEpsilonSymbol = "<eps>";
inline constexpr std::string_view kUnknownSymbol = "<unk>";
inline constexpr std::string_view kSentenceStart = "<s>";
inline constexpr std::string_view kSentenceEnd = "</s>";
inline constexpr std::string_view kSilenceWord = "!SIL";
inline constexpr std::string_view kBackoffSymbol = "#0";
inline constexpr std::string_view kGraphTagPrefix = "#graph:";

// True for `#0`, `#1`, ... (disambiguation and backoff symbols).
bool IsDisambiguationSymbol(std::string_view symbol);
bool IsGraphTag(std::string_view symbol);
// Symbols that must never be used as lexical words.
bool IsReservedSymbol(std::string_view symbol);

std::string GraphTagSymbol(std::string_view graph_id);
// Inverse of GraphTagSymbol; returns an empty string for non-tags.
std::string GraphIdFromTag(std::string_view symbol);

// Bijection between symbol strings and non-negative ids. Id 0 is always
// `<eps>`.
class SymbolTable {
 public:
  SymbolTable();

  // Returns the id of `symbol`, adding it with the next free id if absent.
  Label AddSymbol(std::string_view symbol);
  // Adds `symbol` with an explicit id. Throws SymbolTableError if either the
  // symbol or the id is already bound to something else.
  Label AddSymbol(std::string_view symbol, Label id);

  Label Find(std::string_view symbol) const;  // kNoLabel if absent
  // Empty string if the id is unbound.
  const std::string &Find(Label id) const;
  bool Member(Label id) const { return !Find(id).empty(); }
  bool Member(std::string_view symbol) const {
    return Find(symbol) != kNoLabel;
  }

  size_t NumSymbols() const { return size_; }
  Label AvailableKey() const { return static_cast<Label>(symbols_.size()); }
  // Bound ids in increasing order.
  std::vector<Label> Labels() const;

  // Two-column `symbol id` text format.
  void WriteText(std::ostream &os) const;
  static SymbolTable ReadText(std::istream &is, const std::string &source);
  static SymbolTable ReadFile(const std::string &path);
  void WriteFile(const std::string &path) const;

  friend bool operator==(const SymbolTable &a, const SymbolTable &b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;  // indexed by id; "" marks a hole
  std::unordered_map<std::string, Label> ids_;
  size_t size_ = 0;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

// True when no symbol maps to different ids and no id maps to different
// symbols across the two tables. Null tables are compatible with anything.
bool CompatibleSymbols(const SymbolTable *a, const SymbolTable *b);

// Union of two compatible tables; throws SymbolTableError otherwise.
SymbolTablePtr MergeSymbolTables(const SymbolTablePtr &a,
                                 const SymbolTablePtr &b);

}  // namespace mgd

#endif  // MGD_FST_SYMBOL_TABLE_H_
