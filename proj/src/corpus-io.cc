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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oovfst/corpus.h"
#include "oovfst/errors.h"

namespace oovfst {
namespace {

template <typename F>
void ForEachLine(std::string_view text, F &&f) {
  std::size_t lineno = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    f(lineno, line);
  }
}

// Splits `unit<TAB>number`.
std::pair<std::string, double> KeyValue(std::size_t lineno,
                                        std::string_view line) {
  const auto tab = line.rfind('\t');
  if (tab == std::string_view::npos || tab == 0) {
    throw ParseError(lineno, "expected key<TAB>number");
  }
  const std::string_view num = line.substr(tab + 1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
  if (ec != std::errc() || ptr != num.data() + num.size() ||
      !std::isfinite(v) || v < 0.0) {
    throw ParseError(lineno, "bad number \"" + std::string(num) + "\"");
  }
  return {std::string(line.substr(0, tab)), v};
}

}  // namespace

std::vector<ManifestEntry> ParseManifest(std::string_view text,
                                         const std::filesystem::path &base) {
  std::vector<ManifestEntry> out;
  ForEachLine(text, [&](std::size_t lineno, std::string_view line) {
    if (line.front() == '#') return;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 == line.size()) {
      throw ParseError(lineno, "expected id<TAB>path");
    }
    ManifestEntry e{std::string(line.substr(0, tab)),
                    std::filesystem::path(std::string(line.substr(tab + 1)))};
    for (const auto &prev : out) {
      if (prev.id == e.id) throw ParseError(lineno, "duplicate id " + e.id);
    }
    if (e.path.is_relative()) e.path = base / e.path;
    out.push_back(std::move(e));
  });
  if (out.empty()) throw ParseError(0, "empty manifest");
  return out;
}

std::vector<std::string> ReadLines(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::string FormatCounts(const std::map<std::string, double> &counts) {
  std::ostringstream os;
  os.precision(17);
  for (const auto &[unit, c] : counts) os << unit << '\t' << c << '\n';
  return os.str();
}

std::map<std::string, double> ParseCounts(std::string_view text) {
  std::map<std::string, double> out;
  ForEachLine(text, [&](std::size_t lineno, std::string_view line) {
    auto [unit, c] = KeyValue(lineno, line);
    out[unit] += c;
  });
  return out;
}

std::string FormatWeights(std::span<const std::string> ids,
                          std::span<const double> weights) {
  if (ids.size() != weights.size()) {
    throw InvalidArgumentError("one weight per corpus expected");
  }
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.9f", weights[i]);
    out += ids[i] + "\t" + buf + "\n";
  }
  return out;
}

std::vector<std::pair<std::string, double>> ParseWeights(
    std::string_view text) {
  std::vector<std::pair<std::string, double>> out;
  ForEachLine(text, [&](std::size_t lineno, std::string_view line) {
    out.push_back(KeyValue(lineno, line));
  });
  return out;
}

}  // namespace oovfst
