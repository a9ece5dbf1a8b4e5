// lexicon.h
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

#ifndef MGD_GRAPH_LEXICON_H_
#define MGD_GRAPH_LEXICON_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mgd/fst/symbol_table.h"

namespace mgd {

struct Pronunciation {
  std::vector<std::string> units;
  double prob = 1.0;
};

// Word -> pronunciations over a declared unit inventory.
class Lexicon {
 public:
  explicit Lexicon(std::vector<std::string> inventory);

  // Throws FormatError for unknown units, reserved words, empty
  // pronunciations or probabilities outside (0, 1].
  void AddPronunciation(const std::string &word,
                        const std::vector<std::string> &units,
                        double prob = 1.0);

  const std::vector<std::string> &Inventory() const { return inventory_; }
  const std::map<std::string, std::vector<Pronunciation>> &Entries() const {
    return entries_;
  }
  bool HasWord(const std::string &word) const { return entries_.count(word) > 0; }
  size_t NumWords() const { return entries_.size(); }
  bool HasUnit(const std::string &unit) const;

  // <eps> followed by the inventory (ids 1..U).
  SymbolTablePtr UnitSymbols() const;
  // <eps>, the words in byte order, then `#0`.
  SymbolTablePtr WordSymbols() const;

 private:
  std::vector<std::string> inventory_;
  std::map<std::string, int> unit_index_;
  std::map<std::string, std::vector<Pronunciation>> entries_;
};

// `word unit unit ...`, one pronunciation per line. Without an inventory the
// units seen in the file form one, in byte order.
Lexicon ReadLexicon(std::istream &is, const std::string &source,
                    const std::vector<std::string> *inventory = nullptr);
Lexicon ReadLexiconFile(const std::string &path,
                        const std::vector<std::string> *inventory = nullptr);
void WriteLexicon(const Lexicon &lex, std::ostream &os);
void WriteLexiconFile(const Lexicon &lex, const std::string &path);

// Unit inventory files hold one unit per line.
std::vector<std::string> ReadInventoryFile(const std::string &path);
void WriteInventoryFile(const std::vector<std::string> &units,
                        const std::string &path);

// FNV-1a hash of the inventory, as 16 hex digits.
std::string InventoryHash(const std::vector<std::string> &units);

}  // namespace mgd

#endif  // MGD_GRAPH_LEXICON_H_
