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

// Line-oriented text format for transducers.
//
//   src dst isym osym [weight]   arc; the first line's src is the start
//   state [weight]               final state
//
// Weights default to 0 and are omitted on output when 0. Arcs of the start
// state are printed first, then every other state in id order, each state's
// final line following its arcs. A machine whose start state has neither
// arcs nor a final weight accepts nothing and is written as an empty file.

#ifndef OOVFST_TEXT_IO_H_
#define OOVFST_TEXT_IO_H_

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>

#include "oovfst/wfst.h"

namespace oovfst {

void WriteText(const Wfst &t, std::ostream &os);
Wfst ReadText(std::istream &is, SymbolTablePtr isyms, SymbolTablePtr osyms);

// A machine on disk is three files: `path` plus `path` with its extension
// replaced by .isyms and .osyms.
std::filesystem::path InputSymbolsPath(const std::filesystem::path &fst);
std::filesystem::path OutputSymbolsPath(const std::filesystem::path &fst);
void WriteFiles(const Wfst &t, const std::filesystem::path &fst);
Wfst ReadFiles(const std::filesystem::path &fst);

SymbolTable ReadSymbolFile(const std::filesystem::path &path);
void WriteSymbolFile(const SymbolTable &syms,
                     const std::filesystem::path &path);

// Shortest decimal form that reads back to the same double.
std::string FormatDouble(double value);

}  // namespace oovfst

#endif  // OOVFST_TEXT_IO_H_
