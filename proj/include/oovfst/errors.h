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

// Error types shared by all oovfst libraries.

#ifndef OOVFST_ERRORS_H_
#define OOVFST_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oovfst {

// A symbol string or label that is not registered in the table consulted.
class UnknownSymbolError : public std::runtime_error {
 public:
  explicit UnknownSymbolError(const std::string &symbol)
      : std::runtime_error("unknown symbol: \"" + symbol + "\""),
        symbol_(symbol) {}

  const std::string &Symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

// Two machines were combined whose symbol tables disagree.
class TableMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input. Line numbers are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string &message)
      : std::runtime_error(
            line ? "line " + std::to_string(line) + ": " + message : message),
        line_(line),
        message_(message) {}

  std::size_t Line() const { return line_; }
  // The message without the line prefix.
  const std::string &Message() const { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

// A value outside the range a type or operation allows.
class InvalidArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace oovfst

#endif  // OOVFST_ERRORS_H_
