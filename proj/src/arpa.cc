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

#include "oovfst/arpa.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <vector>

#include "oovfst/errors.h"
#include "oovfst/utf8.h"

namespace oovfst {
namespace {

constexpr double kLogZero = -99.0;

std::string FormatLog(std::optional<double> value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.7f",
                value ? std::log10(*value) : kLogZero);
  return buf;
}

struct Entry {
  std::vector<Label> ngram;
  std::optional<double> prob;
  bool has_backoff = false;
  std::optional<double> backoff;
};

double ParseNumber(const std::string &s, std::size_t lineno) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || std::isnan(v)) {
    throw ParseError(lineno, "bad number \"" + s + "\"");
  }
  return v;
}

}  // namespace

std::string WriteArpa(const NgramModel &model) {
  const auto &vocab = *model.Vocabulary();
  const auto &contexts = model.Contexts();
  std::vector<std::vector<Entry>> sections(model.Order());
  auto add = [&](std::vector<Label> ngram, std::optional<double> prob) {
    Entry e{std::move(ngram), prob, false, std::nullopt};
    if (const auto it = contexts.find(e.ngram); it != contexts.end()) {
      e.has_backoff = true;
      e.backoff = it->second.backoff;
    }
    sections[e.ngram.size() - 1].push_back(std::move(e));
  };

  const auto &unigrams = contexts.at({});
  bool wrote_bos = false;
  for (const auto &[w, p] : unigrams.probs) {
    if (!wrote_bos && w > model.Bos()) {
      add({model.Bos()}, std::nullopt);
      wrote_bos = true;
    }
    add({w}, p);
  }
  if (!wrote_bos) add({model.Bos()}, std::nullopt);
  for (const auto &[h, ctx] : contexts) {
    if (h.empty()) continue;
    for (const auto &[w, p] : ctx.probs) {
      std::vector<Label> ngram = h;
      ngram.push_back(w);
      add(std::move(ngram), p);
    }
  }

  std::string out = "\\data\\\n";
  for (std::size_t n = 0; n < sections.size(); ++n) {
    out += "ngram " + std::to_string(n + 1) + "=" +
           std::to_string(sections[n].size()) + "\n";
  }
  for (std::size_t n = 0; n < sections.size(); ++n) {
    out += "\n\\" + std::to_string(n + 1) + "-grams:\n";
    for (const auto &e : sections[n]) {
      out += FormatLog(e.prob) + "\t";
      for (std::size_t i = 0; i < e.ngram.size(); ++i) {
        if (i) out += ' ';
        out += vocab.Find(e.ngram[i]);
      }
      if (e.has_backoff) out += "\t" + FormatLog(e.backoff);
      out += "\n";
    }
  }
  out += "\n\\end\\\n";
  return out;
}

NgramModel ReadArpa(std::string_view text) {
  enum class Stage {
    kPreamble,
    kCounts,
    kNgrams,
    kEnd
  } stage = Stage::kPreamble;
  std::vector<std::size_t> declared;
  std::vector<std::size_t> seen;
  std::size_t current = 0;

  SymbolTable vocab;
  vocab.AddSymbol(kBosSymbol);
  vocab.AddSymbol(kEosSymbol);
  NgramModel::ContextMap contexts;
  // Explicit backoff fields by n-gram; nullopt value means -99.
  std::map<std::vector<Label>, std::optional<double>> backoffs;

  std::size_t lineno = 0;
  std::size_t begin = 0;
  while (begin < text.size() && stage != Stage::kEnd) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++lineno;
    const auto fields = SplitWhitespace(line);
    if (fields.empty()) continue;

    if (stage == Stage::kPreamble) {
      if (fields[0] == "\\data\\") stage = Stage::kCounts;
      continue;
    }
    if (fields[0] == "\\end\\") {
      stage = Stage::kEnd;
      continue;
    }
    if (fields.size() == 1 && fields[0].size() > 8 && fields[0][0] == '\\' &&
        fields[0].ends_with("-grams:")) {
      const std::string n = fields[0].substr(1, fields[0].size() - 8);
      current = static_cast<std::size_t>(ParseNumber(n, lineno));
      if (current < 1 || current > declared.size()) {
        throw ParseError(lineno, "undeclared section " + fields[0]);
      }
      stage = Stage::kNgrams;
      continue;
    }
    if (stage == Stage::kCounts) {
      const auto eq = line.find('=');
      if (fields[0] != "ngram" || eq == std::string_view::npos) {
        throw ParseError(lineno, "expected \"ngram N=count\"");
      }
      const std::string lhs = SplitWhitespace(line.substr(0, eq)).back();
      const auto rhs = SplitWhitespace(line.substr(eq + 1));
      if (rhs.size() != 1) throw ParseError(lineno, "bad ngram count line");
      const auto n = static_cast<std::size_t>(ParseNumber(lhs, lineno));
      if (n != declared.size() + 1) {
        throw ParseError(lineno, "n-gram orders must be declared in sequence");
      }
      declared.push_back(static_cast<std::size_t>(ParseNumber(rhs[0], lineno)));
      seen.push_back(0);
      continue;
    }

    if (fields.size() != current + 1 && fields.size() != current + 2) {
      throw ParseError(lineno, "expected " + std::to_string(current) +
                                   " tokens with probability and backoff");
    }
    const double logp = ParseNumber(fields[0], lineno);
    std::vector<Label> ngram;
    for (std::size_t i = 1; i <= current; ++i) {
      ngram.push_back(vocab.AddSymbol(fields[i]));
    }
    if (logp > kLogZero) {
      if (logp > 0.0) throw ParseError(lineno, "log probability above 0");
      const std::vector<Label> h(ngram.begin(), ngram.end() - 1);
      contexts[h].probs[ngram.back()] = std::pow(10.0, logp);
    }
    if (fields.size() == current + 2) {
      const double bo = ParseNumber(fields.back(), lineno);
      backoffs[ngram] =
          bo <= kLogZero ? std::nullopt : std::optional(std::pow(10.0, bo));
    }
    ++seen[current - 1];
  }
  if (stage == Stage::kPreamble) throw ParseError(lineno, "missing \\data\\");
  if (stage != Stage::kEnd) throw ParseError(lineno, "missing \\end\\");
  if (declared.empty()) throw ParseError(lineno, "no n-gram counts");
  for (std::size_t n = 0; n < declared.size(); ++n) {
    if (declared[n] != seen[n]) {
      throw ParseError(lineno, std::to_string(n + 1) + "-gram count " +
                                   std::to_string(seen[n]) + " != declared " +
                                   std::to_string(declared[n]));
    }
  }

  const int order = static_cast<int>(declared.size());
  const Label eos = vocab.Find(kEosSymbol);
  for (const auto &[ngram, bo] : backoffs) {
    if (static_cast<int>(ngram.size()) < order && ngram.back() != eos) {
      contexts.try_emplace(ngram);
    }
  }
  for (auto &[h, ctx] : contexts) {
    if (h.empty()) continue;
    const auto it = backoffs.find(h);
    ctx.backoff = it == backoffs.end() ? std::optional(1.0) : it->second;
  }
  try {
    return NgramModel(order, Share(std::move(vocab)), std::move(contexts));
  } catch (const InvalidArgumentError &e) {
    throw ParseError(lineno, e.what());
  } catch (const UnknownSymbolError &e) {
    throw ParseError(lineno, e.what());
  }
}

}  // namespace oovfst
