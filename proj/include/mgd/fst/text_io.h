// text_io.h
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

#ifndef MGD_FST_TEXT_IO_H_
#define MGD_FST_TEXT_IO_H_

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mgd/fst/fst.h"

namespace mgd {

constexpr int kDefaultWeightPrecision = 6;

// AT&T text format: `src dst ilabel olabel weight` per arc and
// `state weight` per final state. The start state is printed first.
template <class W>
void WriteFstText(const Fst<W> &fst, std::ostream &os,
                  int precision = kDefaultWeightPrecision) {
  if (fst.Start() == kNoStateId) return;
  auto write_state = [&](StateId s) {
    for (const auto &arc : fst.Arcs(s))
      os << s << '\t' << arc.nextstate << '\t' << arc.ilabel << '\t'
         << arc.olabel << '\t' << arc.weight.ToString(precision) << '\n';
    if (fst.IsFinal(s)) os << s << '\t' << fst.Final(s).ToString(precision) << '\n';
  };
  write_state(fst.Start());
  for (StateId s = 0; s < fst.NumStates(); ++s)
    if (s != fst.Start()) write_state(s);
}

namespace internal {

inline Label ParseLabel(const std::string &field, const SymbolTable *table,
                        const std::string &where) {
  char *end = nullptr;
  const long value = std::strtol(field.c_str(), &end, 10);
  if (!field.empty() && *end == '\0') {
    if (value < 0) throw FormatError(where + ": negative label " + field);
    return static_cast<Label>(value);
  }
  if (table != nullptr) {
    const Label id = table->Find(field);
    if (id != kNoLabel) return id;
  }
  throw FormatError(where + ": unknown label '" + field + "'");
}

inline StateId ParseState(const std::string &field, const std::string &where) {
  char *end = nullptr;
  const long value = std::strtol(field.c_str(), &end, 10);
  if (field.empty() || *end != '\0' || value < 0)
    throw FormatError(where + ": bad state id '" + field + "'");
  return static_cast<StateId>(value);
}

}  // namespace internal

// Reads the AT&T text format. Labels may be numeric or, when the matching
// table is given, symbolic. Lines with 3 fields are acceptor arcs; a missing
// weight is One.
template <class W>
Fst<W> ReadFstText(std::istream &is, const std::string &source,
                   SymbolTablePtr isyms = nullptr,
                   SymbolTablePtr osyms = nullptr) {
  struct Line {
    std::vector<std::string> fields;
    std::string where;
  };
  std::vector<Line> lines;
  std::string text;
  int lineno = 0;
  StateId max_state = -1;
  while (std::getline(is, text)) {
    ++lineno;
    std::istringstream tokens(text);
    Line line;
    line.where = source + ":" + std::to_string(lineno);
    std::string field;
    while (tokens >> field) line.fields.push_back(field);
    if (line.fields.empty()) continue;
    if (line.fields.size() > 5)
      throw FormatError(line.where + ": too many fields");
    max_state = std::max(max_state, internal::ParseState(line.fields[0], line.where));
    if (line.fields.size() >= 3)
      max_state =
          std::max(max_state, internal::ParseState(line.fields[1], line.where));
    lines.push_back(std::move(line));
  }
  Fst<W> fst;
  fst.SetInputSymbols(isyms);
  fst.SetOutputSymbols(osyms);
  if (lines.empty()) return fst;
  fst.AddStates(max_state + 1);
  fst.SetStart(internal::ParseState(lines.front().fields[0], lines.front().where));
  for (const auto &line : lines) {
    const auto &f = line.fields;
    const StateId src = internal::ParseState(f[0], line.where);
    try {
      if (f.size() <= 2) {
        fst.SetFinal(src, f.size() == 2 ? W::FromString(f[1]) : W::One());
        continue;
      }
      const StateId dst = internal::ParseState(f[1], line.where);
      const Label ilabel = internal::ParseLabel(f[2], isyms.get(), line.where);
      const Label olabel =
          f.size() == 3 ? ilabel
                        : internal::ParseLabel(f[3], osyms.get(), line.where);
      const W weight = f.size() == 5 ? W::FromString(f[4]) : W::One();
      fst.AddArc(src, ilabel, olabel, weight, dst);
    } catch (const FormatError &e) {
      const std::string msg = e.what();
      if (msg.rfind(source, 0) == 0) throw;
      throw FormatError(line.where + ": " + msg);
    }
  }
  try {
    fst.Validate();
  } catch (const FstError &e) {
    throw FormatError(source + ": " + e.what());
  }
  return fst;
}

template <class W>
void WriteFstFile(const Fst<W> &fst, const std::string &path,
                  int precision = kDefaultWeightPrecision) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  WriteFstText(fst, out, precision);
}

template <class W>
Fst<W> ReadFstFile(const std::string &path, SymbolTablePtr isyms = nullptr,
                   SymbolTablePtr osyms = nullptr) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return ReadFstText<W>(in, path, std::move(isyms), std::move(osyms));
}

}  // namespace mgd

#endif  // MGD_FST_TEXT_IO_H_
