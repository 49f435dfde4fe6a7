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

#include "oovfst/symbol-table.h"

#include <charconv>
#include <string>

#include "oovfst/errors.h"

namespace oovfst {

SymbolTable::SymbolTable() { AddSymbol(kEpsilonSymbol); }

Label SymbolTable::AddSymbol(std::string_view symbol) {
  auto it = labels_.find(std::string(symbol));
  if (it != labels_.end()) return it->second;
  const auto label = static_cast<Label>(symbols_.size());
  symbols_.emplace_back(symbol);
  labels_.emplace(symbols_.back(), label);
  return label;
}

Label SymbolTable::Find(std::string_view symbol) const {
  auto it = labels_.find(std::string(symbol));
  if (it == labels_.end()) throw UnknownSymbolError(std::string(symbol));
  return it->second;
}

const std::string &SymbolTable::Find(Label label) const {
  if (!Contains(label)) throw UnknownSymbolError("#" + std::to_string(label));
  return symbols_[label];
}

bool SymbolTable::Contains(std::string_view symbol) const {
  return labels_.count(std::string(symbol)) > 0;
}

void SymbolTable::WriteText(std::ostream &os) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    os << symbols_[i] << '\t' << i << '\n';
  }
}

SymbolTable SymbolTable::ReadText(std::istream &is) {
  SymbolTable table;
  std::string line;
  std::size_t lineno = 0;
  bool saw_epsilon = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError(lineno, "expected symbol<TAB>id");
    }
    const std::string symbol = line.substr(0, tab);
    const std::string id_text = line.substr(tab + 1);
    Label id = 0;
    auto [ptr, ec] =
        std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
    if (ec != std::errc() || ptr != id_text.data() + id_text.size()) {
      throw ParseError(lineno, "bad symbol id \"" + id_text + "\"");
    }
    if (id == 0) {
      if (symbol != kEpsilonSymbol) {
        throw ParseError(lineno, "id 0 must be " + std::string(kEpsilonSymbol));
      }
      saw_epsilon = true;
      continue;
    }
    if (static_cast<std::size_t>(id) != table.Size() ||
        table.Contains(symbol)) {
      throw ParseError(lineno, "symbol ids must be dense and unique");
    }
    table.AddSymbol(symbol);
  }
  if (!saw_epsilon) throw ParseError(0, "symbol table lacks <eps> 0");
  return table;
}

}  // namespace oovfst
