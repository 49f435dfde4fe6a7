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

#include "oovfst/text-io.h"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "oovfst/errors.h"

namespace oovfst {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

StateId ParseState(std::string_view field, std::size_t lineno) {
  StateId s = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), s);
  if (ec != std::errc() || ptr != field.data() + field.size() || s < 0) {
    throw ParseError(lineno, "bad state id \"" + std::string(field) + "\"");
  }
  return s;
}

TropicalWeight ParseWeight(std::string_view field, std::size_t lineno) {
  if (field == "Infinity" || field == "inf") return TropicalWeight::Zero();
  double w = 0.0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), w);
  if (ec != std::errc() || ptr != field.data() + field.size() || !(w >= 0.0)) {
    throw ParseError(lineno, "bad weight \"" + std::string(field) + "\"");
  }
  return TropicalWeight(w);
}

void WriteState(const Wfst &t, StateId s, std::ostream &os) {
  const auto &isyms = *t.InputSymbols();
  const auto &osyms = *t.OutputSymbols();
  for (const Arc &arc : t.Arcs(s)) {
    os << s << '\t' << arc.nextstate << '\t' << isyms.Find(arc.ilabel) << '\t'
       << osyms.Find(arc.olabel);
    if (arc.weight != TropicalWeight::One()) {
      os << '\t' << FormatDouble(arc.weight.Value());
    }
    os << '\n';
  }
  if (t.IsFinal(s)) {
    os << s;
    if (t.Final(s) != TropicalWeight::One()) {
      os << '\t' << FormatDouble(t.Final(s).Value());
    }
    os << '\n';
  }
}

}  // namespace

std::string FormatDouble(double value) {
  std::array<char, 32> buffer;
  auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

void WriteText(const Wfst &t, std::ostream &os) {
  if (t.Empty()) return;
  // A start state without arcs or final weight cannot lead a file; the
  // machine accepts nothing and is written as the empty machine.
  if (t.NumArcs(t.Start()) == 0 && !t.IsFinal(t.Start())) return;
  WriteState(t, t.Start(), os);
  for (StateId s = 0; s < t.NumStates(); ++s) {
    if (s != t.Start()) WriteState(t, s, os);
  }
}

Wfst ReadText(std::istream &is, SymbolTablePtr isyms, SymbolTablePtr osyms) {
  struct ArcLine {
    StateId src;
    Arc arc;
  };
  std::vector<ArcLine> arcs;
  std::vector<std::pair<StateId, TropicalWeight>> finals;
  StateId start = kNoStateId;
  StateId max_state = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto fields = SplitFields(line);
    if (fields.empty()) continue;
    const StateId src = ParseState(fields[0], lineno);
    if (start == kNoStateId) start = src;
    max_state = std::max(max_state, src);
    if (fields.size() <= 2) {
      finals.emplace_back(src, fields.size() == 2
                                   ? ParseWeight(fields[1], lineno)
                                   : TropicalWeight::One());
    } else if (fields.size() == 4 || fields.size() == 5) {
      Arc arc;
      arc.nextstate = ParseState(fields[1], lineno);
      max_state = std::max(max_state, arc.nextstate);
      try {
        arc.ilabel = isyms->Find(fields[2]);
        arc.olabel = osyms->Find(fields[3]);
      } catch (const UnknownSymbolError &e) {
        throw ParseError(lineno, std::string("unknown symbol ") + e.Symbol());
      }
      if (fields.size() == 5) {
        arc.weight = ParseWeight(fields[4], lineno);
        if (arc.weight.IsZero()) {
          throw ParseError(lineno, "arc weight must be finite");
        }
      }
      arcs.push_back({src, arc});
    } else {
      throw ParseError(lineno, "expected 1-2 or 4-5 fields");
    }
  }
  WfstBuilder builder(std::move(isyms), std::move(osyms));
  for (StateId s = 0; s <= max_state; ++s) builder.AddState();
  if (start != kNoStateId) builder.SetStart(start);
  for (const auto &[src, arc] : arcs) builder.AddArc(src, arc);
  for (const auto &[s, w] : finals) builder.SetFinal(s, w);
  return std::move(builder).Build();
}

std::filesystem::path InputSymbolsPath(const std::filesystem::path &fst) {
  auto p = fst;
  return p.replace_extension(".isyms");
}

std::filesystem::path OutputSymbolsPath(const std::filesystem::path &fst) {
  auto p = fst;
  return p.replace_extension(".osyms");
}

SymbolTable ReadSymbolFile(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return SymbolTable::ReadText(in);
  } catch (const ParseError &e) {
    throw ParseError(e.Line(), path.string() + ": " + e.Message());
  }
}

void WriteSymbolFile(const SymbolTable &syms,
                     const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  syms.WriteText(out);
}

void WriteFiles(const Wfst &t, const std::filesystem::path &fst) {
  {
    std::ofstream out(fst);
    if (!out) throw std::runtime_error("cannot write " + fst.string());
    WriteText(t, out);
  }
  WriteSymbolFile(*t.InputSymbols(), InputSymbolsPath(fst));
  WriteSymbolFile(*t.OutputSymbols(), OutputSymbolsPath(fst));
}

Wfst ReadFiles(const std::filesystem::path &fst) {
  auto isyms = Share(ReadSymbolFile(InputSymbolsPath(fst)));
  auto osyms = Share(ReadSymbolFile(OutputSymbolsPath(fst)));
  // Identical files share one table so that the machine stays composable
  // with itself.
  if (*isyms == *osyms) osyms = isyms;
  std::ifstream in(fst);
  if (!in) throw std::runtime_error("cannot open " + fst.string());
  try {
    return ReadText(in, std::move(isyms), std::move(osyms));
  } catch (const ParseError &e) {
    throw ParseError(e.Line(), fst.string() + ": " + e.Message());
  }
}

}  // namespace oovfst
