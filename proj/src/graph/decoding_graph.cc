// decoding_graph.cc
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

#include "mgd/graph/decoding_graph.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mgd/base/error.h"
#include "mgd/fst/compose.h"
#include "mgd/fst/minimize.h"
#include "mgd/fst/rmepsilon.h"
#include "mgd/fst/text_io.h"

namespace mgd {
namespace {

// Maps the labels of `fst` on one side onto `table` by symbol; arcs whose
// symbol is missing are dropped.
StdFst RelabelBySymbol(const StdFst &fst, const SymbolTablePtr &table,
                       bool input, bool output) {
  StdFst out = EmptyLike(fst);
  out.AddStates(fst.NumStates());
  out.SetStart(fst.Start());
  for (StateId s = 0; s < fst.NumStates(); ++s) out.SetFinal(s, fst.Final(s));
  auto map_label = [&](Label l, const SymbolTablePtr &from) {
    if (l == kEpsilon) return kEpsilon;
    if (from == nullptr) throw FormatError("relabeling needs a symbol table");
    const std::string &sym = from->Find(l);
    return sym.empty() ? kNoLabel : table->Find(sym);
  };
  for (StateId s = 0; s < fst.NumStates(); ++s)
    for (auto arc : fst.Arcs(s)) {
      if (input) arc.ilabel = map_label(arc.ilabel, fst.InputSymbols());
      if (output) arc.olabel = map_label(arc.olabel, fst.OutputSymbols());
      if (arc.ilabel == kNoLabel || arc.olabel == kNoLabel) continue;
      out.AddArc(s, arc);
    }
  if (input) out.SetInputSymbols(table);
  if (output) out.SetOutputSymbols(table);
  return out;
}

bool HasEpsilonInput(const StdFst &fst) {
  for (StateId s = 0; s < fst.NumStates(); ++s)
    for (const auto &arc : fst.Arcs(s))
      if (arc.ilabel == kEpsilon) return true;
  return false;
}

std::string Join(const std::vector<std::string> &items, char sep) {
  std::string out;
  for (const auto &x : items) {
    if (!out.empty()) out += sep;
    out += x;
  }
  return out;
}

}  // namespace

StdFst CompileWithDisambiguation(const Lexicon &lex, const StdFst &g,
                                 const CompileOptions &opts) {
  g.Validate();
  const LexiconFst l = CompileLexiconFst(lex, opts.lexicon);
  const SymbolTablePtr words = l.fst.OutputSymbols();
  StdFst grammar = g;
  const bool same_input = g.InputSymbols() && *g.InputSymbols() == *words;
  const bool same_output = g.OutputSymbols() && *g.OutputSymbols() == *words;
  if (!same_input || !same_output)
    grammar = RelabelBySymbol(g, words, !same_input, !same_output);
  StdFst lg = Compose(l.fst, grammar);
  if (lg.NumStates() == 0) throw FstError("L o G is empty");
  if (HasEpsilonInput(lg)) lg = RmEpsilon(lg);
  return Minimize(Determinize(lg, opts.determinize));
}

StdFst RemoveDisambiguation(const StdFst &fst, const Lexicon &lex) {
  const SymbolTablePtr units = lex.UnitSymbols();
  const Label first_disambig = static_cast<Label>(lex.Inventory().size()) + 1;
  StdFst out = fst;
  for (StateId s = 0; s < out.NumStates(); ++s)
    for (auto &arc : out.MutableArcs(s))
      if (arc.ilabel >= first_disambig) arc.ilabel = kEpsilon;
  out.SetInputSymbols(units);
  return out;
}

DecodingGraph CompileDecodingGraph(const Lexicon &lex, const StdFst &g,
                                   const std::string &graph_id,
                                   const CompileOptions &opts) {
  if (graph_id.empty() || graph_id.find_first_of(" \t,") != std::string::npos)
    throw FormatError("invalid graph id '" + graph_id + "'");
  DecodingGraph graph;
  graph.graph_id = graph_id;
  graph.inventory = lex.Inventory();
  graph.fst = RemoveDisambiguation(CompileWithDisambiguation(lex, g, opts), lex);
  return graph;
}

DecodingGraph BuildMultiGraph(const std::vector<DecodingGraph> &graphs,
                              UnionPrior prior) {
  if (graphs.empty()) throw FormatError("union needs at least one graph");
  std::set<std::string> ids;
  std::set<std::string> words;
  for (const auto &g : graphs) {
    if (!ids.insert(g.graph_id).second)
      throw FormatError("duplicate graph id '" + g.graph_id + "'");
    if (g.inventory != graphs[0].inventory)
      throw FormatError("graph '" + g.graph_id +
                        "' uses a different unit inventory");
    if (g.IsUnion())
      throw FormatError("graph '" + g.graph_id + "' is already a union");
    if (g.fst.OutputSymbols() == nullptr)
      throw FormatError("graph '" + g.graph_id + "' has no word table");
    for (Label l : g.fst.OutputSymbols()->Labels()) {
      const std::string &w = g.fst.OutputSymbols()->Find(l);
      if (!IsReservedSymbol(w)) words.insert(w);
    }
  }
  auto table = std::make_shared<SymbolTable>();
  for (const auto &w : words) table->AddSymbol(w);
  for (const auto &g : graphs) table->AddSymbol(GraphTagSymbol(g.graph_id));

  DecodingGraph out;
  out.inventory = graphs[0].inventory;
  std::vector<std::string> lms;
  for (const auto &g : graphs) {
    out.members.push_back(g.graph_id);
    lms.push_back(g.lm);
  }
  out.graph_id = "union:" + Join(out.members, ',');
  out.lm = Join(lms, ',');

  StdFst &fst = out.fst;
  const StateId start = fst.AddState();
  fst.SetStart(start);
  const TropicalWeight entry =
      prior == UnionPrior::kUniform
          ? TropicalWeight(-std::log(1.0 / static_cast<double>(graphs.size())))
          : TropicalWeight::One();
  for (const auto &g : graphs) {
    if (g.fst.Start() == kNoStateId) continue;
    const StdFst member = RelabelBySymbol(g.fst, table, false, true);
    const StateId offset = AppendStates(member, &fst);
    fst.AddArc(start, kEpsilon, table->Find(GraphTagSymbol(g.graph_id)), entry,
               offset + member.Start());
  }
  fst.SetInputSymbols(graphs[0].fst.InputSymbols());
  fst.SetOutputSymbols(table);
  return out;
}

void WriteDecodingGraph(const DecodingGraph &graph, const std::string &prefix) {
  WriteFstFile(graph.fst, prefix + ".fst", 9);
  auto units = std::make_shared<SymbolTable>();
  for (const auto &u : graph.inventory) units->AddSymbol(u);
  units->WriteFile(prefix + ".units.txt");
  if (graph.fst.OutputSymbols() == nullptr)
    throw FormatError("graph has no word table");
  graph.fst.OutputSymbols()->WriteFile(prefix + ".words.txt");
  std::ofstream meta(prefix + ".meta");
  if (!meta) throw FormatError("cannot write " + prefix + ".meta");
  meta << "graph_id " << graph.graph_id << "\n"
       << "kind " << (graph.IsUnion() ? "union" : "single") << "\n"
       << "units_hash " << InventoryHash(graph.inventory) << "\n"
       << "lm " << graph.lm << "\n"
       << "members " << Join(graph.members, ',') << "\n";
}

DecodingGraph ReadDecodingGraph(const std::string &prefix) {
  DecodingGraph graph;
  std::ifstream meta(prefix + ".meta");
  if (!meta) throw FormatError("cannot open " + prefix + ".meta");
  std::map<std::string, std::string> fields;
  std::string line;
  while (std::getline(meta, line)) {
    const size_t space = line.find(' ');
    if (line.empty()) continue;
    fields[line.substr(0, space)] =
        space == std::string::npos ? "" : line.substr(space + 1);
  }
  for (const char *key : {"graph_id", "kind", "units_hash"})
    if (!fields.count(key))
      throw FormatError(prefix + ".meta: missing field '" + key + "'");
  graph.graph_id = fields["graph_id"];
  graph.lm = fields["lm"];
  std::istringstream members(fields["members"]);
  std::string id;
  while (std::getline(members, id, ','))
    if (!id.empty()) graph.members.push_back(id);
  if ((fields["kind"] == "union") != graph.IsUnion())
    throw FormatError(prefix + ".meta: kind and members disagree");

  const SymbolTable units = SymbolTable::ReadFile(prefix + ".units.txt");
  for (Label l : units.Labels())
    if (l != kEpsilon) {
      if (l != static_cast<Label>(graph.inventory.size()) + 1)
        throw FormatError(prefix + ".units.txt: unit ids must be 1..U");
      graph.inventory.push_back(units.Find(l));
    }
  if (InventoryHash(graph.inventory) != fields["units_hash"])
    throw FormatError(prefix + ": unit inventory hash mismatch");
  auto words = std::make_shared<SymbolTable>(SymbolTable::ReadFile(prefix + ".words.txt"));
  graph.fst = ReadFstFile<TropicalWeight>(
      prefix + ".fst", std::make_shared<SymbolTable>(units), words);
  return graph;
}

}  // namespace mgd
