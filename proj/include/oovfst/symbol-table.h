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

// Bidirectional mapping between symbol strings and integer labels.

#ifndef OOVFST_SYMBOL_TABLE_H_
#define OOVFST_SYMBOL_TABLE_H_

#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace oovfst {

using Label = std::int32_t;

inline constexpr Label kEpsilon = 0;
inline constexpr std::string_view kEpsilonSymbol = "<eps>";

// Labels are dense: the table always holds "<eps>" at 0 and every other
// symbol at 1..Size()-1 in registration order. Find() never inserts; use
// AddSymbol() to register.
class SymbolTable {
 public:
  SymbolTable();

  // Returns the label of `symbol`, registering it if new.
  Label AddSymbol(std::string_view symbol);

  // Throws UnknownSymbolError for unregistered symbols and labels.
  Label Find(std::string_view symbol) const;
  const std::string &Find(Label label) const;

  bool Contains(std::string_view symbol) const;
  bool Contains(Label label) const {
    return label >= 0 && static_cast<std::size_t>(label) < symbols_.size();
  }

  // Number of labels including epsilon.
  std::size_t Size() const { return symbols_.size(); }
  const std::vector<std::string> &Symbols() const { return symbols_; }

  friend bool operator==(const SymbolTable &a, const SymbolTable &b) {
    return a.symbols_ == b.symbols_;
  }

  // `symbol<TAB>id` per line, ids ascending.
  void WriteText(std::ostream &os) const;
  // Ids must be dense and `<eps>` must be 0.
  static SymbolTable ReadText(std::istream &is);

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Label> labels_;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

inline SymbolTablePtr Share(SymbolTable table) {
  return std::make_shared<const SymbolTable>(std::move(table));
}

// Same table object or equal contents.
inline bool Compatible(const SymbolTablePtr &a, const SymbolTablePtr &b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace oovfst

#endif  // OOVFST_SYMBOL_TABLE_H_
