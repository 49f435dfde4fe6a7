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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "oovfst/errors.h"
#include "oovfst/rewrite-rule.h"
#include "oovfst/utf8.h"

namespace oovfst {
namespace {

constexpr std::string_view kBos = "[BOS]";
constexpr std::string_view kEos = "[EOS]";

bool IsOperator(std::string_view t) {
  return t == "(" || t == ")" || t == "|" || t == "?";
}

bool IsReserved(std::string_view t) {
  return IsOperator(t) || t == "->" || t == "/" || t == "_" || t == ";" ||
         t == kBos || t == kEos;
}

// Whitespace split, with `(`, `)`, `|`, `?` and a trailing `;` broken out of
// longer tokens.
std::vector<std::string> Tokenize(std::string_view line) {
  std::vector<std::string> out;
  for (const auto &raw : SplitWhitespace(line)) {
    if (raw == kBos || raw == kEos || raw == "->" ||
        (raw.size() > 2 && raw.front() == '<' && raw.back() == '>')) {
      out.push_back(raw);
      continue;
    }
    std::string current;
    for (char c : raw) {
      if (c == '(' || c == ')' || c == '|' || c == '?' || c == ';') {
        if (!current.empty()) out.push_back(std::move(current));
        current.clear();
        out.emplace_back(1, c);
      } else {
        current.push_back(c);
      }
    }
    if (!current.empty()) out.push_back(std::move(current));
  }
  return out;
}

class RegexParser {
 public:
  RegexParser(const std::vector<std::string> &tokens, std::size_t lineno,
              const char *part)
      : tokens_(tokens), lineno_(lineno), part_(part) {}

  Regex Parse() {
    Regex r = ParseUnion();
    if (pos_ != tokens_.size()) Fail("unexpected \"" + tokens_[pos_] + "\"");
    return r;
  }

 private:
  [[noreturn]] void Fail(const std::string &message) const {
    throw ParseError(lineno_, std::string(part_) + ": " + message);
  }

  Regex ParseUnion() {
    std::vector<Regex> alternatives{ParseSequence()};
    while (pos_ < tokens_.size() && tokens_[pos_] == "|") {
      ++pos_;
      alternatives.push_back(ParseSequence());
    }
    if (alternatives.size() == 1) return std::move(alternatives[0]);
    return Regex{Regex::Kind::kUnion, {}, std::move(alternatives)};
  }

  Regex ParseSequence() {
    std::vector<Regex> items;
    while (pos_ < tokens_.size() && tokens_[pos_] != "|" &&
           tokens_[pos_] != ")") {
      Regex atom = ParseAtom();
      while (pos_ < tokens_.size() && tokens_[pos_] == "?") {
        ++pos_;
        atom = Regex{Regex::Kind::kOptional, {}, {std::move(atom)}};
      }
      items.push_back(std::move(atom));
    }
    if (items.empty()) return Regex::Empty();
    if (items.size() == 1) return std::move(items[0]);
    return Regex{Regex::Kind::kConcat, {}, std::move(items)};
  }

  Regex ParseAtom() {
    const std::string &t = tokens_[pos_];
    if (t == "(") {
      ++pos_;
      Regex inner = ParseUnion();
      if (pos_ >= tokens_.size() || tokens_[pos_] != ")") Fail("missing \")\"");
      ++pos_;
      return inner;
    }
    if (t == "?") Fail("\"?\" without operand");
    if (t == kBos || t == kEos) Fail("misplaced " + t);
    if (IsReserved(t)) Fail("unexpected \"" + t + "\"");
    ++pos_;
    if (t == "0") return Regex::Empty();
    return Regex::Symbol(t);
  }

  const std::vector<std::string> &tokens_;
  std::size_t pos_ = 0;
  std::size_t lineno_;
  const char *part_;
};

std::vector<std::string> Slice(const std::vector<std::string> &tokens,
                               std::size_t begin, std::size_t end) {
  return {tokens.begin() + begin, tokens.begin() + end};
}

std::size_t Find(const std::vector<std::string> &tokens, std::string_view t,
                 std::size_t from = 0) {
  for (std::size_t i = from; i < tokens.size(); ++i) {
    if (tokens[i] == t) return i;
  }
  return tokens.size();
}

}  // namespace

bool Regex::AcceptsEmpty() const {
  switch (kind) {
    case Kind::kEmpty:
    case Kind::kOptional:
      return true;
    case Kind::kSymbol:
      return false;
    case Kind::kConcat:
      return std::all_of(children.begin(), children.end(),
                         [](const Regex &r) { return r.AcceptsEmpty(); });
    case Kind::kUnion:
      return std::any_of(children.begin(), children.end(),
                         [](const Regex &r) { return r.AcceptsEmpty(); });
  }
  return false;
}

void Regex::CollectSymbols(std::vector<std::string> &out) const {
  if (kind == Kind::kSymbol) out.push_back(symbol);
  for (const auto &child : children) child.CollectSymbols(out);
}

SymbolTablePtr RuleSet::CascadeSymbols() const {
  SymbolTable table = *alphabet;
  for (const auto &p : phonemes->Symbols()) table.AddSymbol(p);
  return Share(std::move(table));
}

RewriteRule ParseRule(std::string_view line, std::size_t lineno) {
  auto tokens = Tokenize(line);
  RewriteRule rule;
  rule.line = lineno;
  // Trailing modifiers in any order.
  while (!tokens.empty()) {
    const std::string &t = tokens.back();
    if (t == ";") {
    } else if (t == "optional") {
      rule.optional = true;
    } else if (t.size() > 2 && t.front() == '<' && t.back() == '>') {
      double w = 0.0;
      const char *first = t.data() + 1;
      const char *last = t.data() + t.size() - 1;
      auto [ptr, ec] = std::from_chars(first, last, w);
      if (ec != std::errc() || ptr != last || !(w >= 0.0) || std::isinf(w)) {
        throw ParseError(lineno, "bad weight " + t);
      }
      rule.weight = TropicalWeight(w);
    } else {
      break;
    }
    tokens.pop_back();
  }

  const std::size_t arrow = Find(tokens, "->");
  if (arrow == tokens.size()) throw ParseError(lineno, "expected \"->\"");
  if (arrow == 0) throw ParseError(lineno, "empty left-hand side");
  if (Find(tokens, "->", arrow + 1) != tokens.size()) {
    throw ParseError(lineno, "more than one \"->\"");
  }
  const std::size_t slash = Find(tokens, "/", arrow + 1);

  rule.phi =
      RegexParser(Slice(tokens, 0, arrow), lineno, "left-hand side").Parse();
  if (rule.phi.AcceptsEmpty()) {
    throw ParseError(lineno, "left-hand side matches the empty string");
  }

  const auto psi = Slice(tokens, arrow + 1, slash);
  if (psi.empty()) throw ParseError(lineno, "empty right-hand side (use 0)");
  for (const auto &t : psi) {
    if (IsReserved(t)) {
      throw ParseError(
          lineno, "right-hand side must be plain symbols, got \"" + t + "\"");
    }
  }
  if (!(psi.size() == 1 && psi[0] == "0")) {
    for (const auto &t : psi) {
      if (t == "0") throw ParseError(lineno, "0 mixed with symbols");
    }
    rule.psi = psi;
  }

  if (slash == tokens.size()) return rule;
  auto context = Slice(tokens, slash + 1, tokens.size());
  const std::size_t under = Find(context, "_");
  if (under == context.size()) throw ParseError(lineno, "context lacks \"_\"");
  if (Find(context, "_", under + 1) != context.size()) {
    throw ParseError(lineno, "context has more than one \"_\"");
  }
  auto lambda = Slice(context, 0, under);
  auto rho = Slice(context, under + 1, context.size());
  if (!lambda.empty() && lambda.front() == kBos) {
    rule.bos = true;
    lambda.erase(lambda.begin());
  }
  if (!rho.empty() && rho.back() == kEos) {
    rule.eos = true;
    rho.pop_back();
  }
  rule.lambda = RegexParser(lambda, lineno, "left context").Parse();
  rule.rho = RegexParser(rho, lineno, "right context").Parse();
  return rule;
}

RuleSet ParseRules(std::string_view text) {
  std::vector<std::string> alphabet_header;
  std::vector<std::string> phoneme_header;
  bool has_alphabet = false;
  bool has_phonemes = false;
  std::vector<RewriteRule> rules;

  std::size_t lineno = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    line = line.substr(first);
    if (line.starts_with("!alphabet:")) {
      has_alphabet = true;
      for (auto &s : SplitWhitespace(line.substr(10))) {
        alphabet_header.push_back(std::move(s));
      }
    } else if (line.starts_with("!phonemes:")) {
      has_phonemes = true;
      for (auto &s : SplitWhitespace(line.substr(10))) {
        phoneme_header.push_back(std::move(s));
      }
    } else if (line.starts_with("!")) {
      throw ParseError(lineno, "unknown header");
    } else {
      rules.push_back(ParseRule(line, lineno));
    }
  }

  for (const auto &s : alphabet_header) {
    if (IsReserved(s) || s == "0") {
      throw ParseError(0, "reserved token \"" + s + "\" in !alphabet");
    }
  }
  for (const auto &s : phoneme_header) {
    if (IsReserved(s) || s == "0") {
      throw ParseError(0, "reserved token \"" + s + "\" in !phonemes");
    }
  }

  SymbolTable alphabet;
  SymbolTable phonemes;
  for (const auto &s : alphabet_header) alphabet.AddSymbol(s);
  for (const auto &s : phoneme_header) phonemes.AddSymbol(s);
  for (const auto &rule : rules) {
    for (const auto &s : rule.psi) phonemes.AddSymbol(s);
  }
  for (const auto &rule : rules) {
    std::vector<std::string> literals;
    rule.phi.CollectSymbols(literals);
    rule.lambda.CollectSymbols(literals);
    rule.rho.CollectSymbols(literals);
    for (const auto &s : literals) {
      if (has_alphabet) {
        if (!alphabet.Contains(s) && !phonemes.Contains(s)) {
          throw ParseError(rule.line, "symbol \"" + s + "\" not in alphabet");
        }
      } else if (!phonemes.Contains(s)) {
        alphabet.AddSymbol(s);
      }
    }
  }
  // Without a phoneme inventory, unrewritten input symbols pass through.
  if (!has_phonemes) {
    for (const auto &s : alphabet.Symbols()) {
      if (s != kEpsilonSymbol) phonemes.AddSymbol(s);
    }
  }

  RuleSet set;
  set.rules = std::move(rules);
  set.alphabet = Share(std::move(alphabet));
  set.phonemes = Share(std::move(phonemes));
  return set;
}

}  // namespace oovfst
