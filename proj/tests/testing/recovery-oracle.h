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

// Exhaustive spelling recovery used as an oracle in tests.

#ifndef OOVFST_TESTS_TESTING_RECOVERY_ORACLE_H_
#define OOVFST_TESTS_TESTING_RECOVERY_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "oovfst/lexicon.h"
#include "oovfst/recovery.h"
#include "oovfst/wfst.h"
#include "testing/ngram-oracle.h"

namespace oovfst::testing {

// Graphemes a c e k s x; forward rules map them to phonemes a e k s.
inline constexpr char kSmallRules[] =
    "!alphabet: a c e k s x\n"
    "!phonemes: a e k s\n"
    "c -> s / _ e\n"
    "c -> k\n"
    "x -> k s <0.3>\n"
    "k k -> k <0.5>\n"
    "e -> a / _ [EOS] <1.2> optional\n";

// Grapheme LM over a few spellings the small rules can produce.
inline NgramModel SmallGraphemeLm(int order) {
  Lexicon lex;
  for (const char *w : {"kask", "sees", "axe", "case", "cake", "sak", "kes",
                        "aks", "ekse", "sack"}) {
    lex.Add(w, {"x"});
  }
  return BuildGraphemeLm(
      lex, {order, Smoothing::kWittenBell, {"a", "c", "e", "k", "s", "x"}});
}

struct OracleCandidate {
  std::string graphemes;
  double cost = 0.0;
};

// Walks `inverse` directly over the phoneme string, collecting every
// spelling of at most `max_length` symbols with its cheapest rule weight,
// then adds lm_scale times the LM acceptor cost. Paths are cut after
// `max_arcs` arcs. Sorted by (cost, spelling); unreachable spellings are
// dropped.
inline std::vector<OracleCandidate> BruteForceRecover(
    const std::vector<std::string> &phonemes, const Wfst &inverse,
    const Wfst &lm, double lm_scale, std::size_t max_length,
    std::size_t max_arcs) {
  std::map<std::vector<std::string>, double> lattice;
  const auto &isyms = *inverse.InputSymbols();
  const auto &osyms = *inverse.OutputSymbols();
  std::vector<std::string> out;
  auto dfs = [&](auto &&self, StateId s, std::size_t pos, double w,
                 std::size_t depth) -> void {
    if (pos == phonemes.size() && inverse.IsFinal(s)) {
      const double total = w + inverse.Final(s).Value();
      auto [it, fresh] = lattice.try_emplace(out, total);
      if (!fresh) it->second = std::min(it->second, total);
    }
    if (depth == max_arcs) return;
    for (const Arc &arc : inverse.Arcs(s)) {
      std::size_t next = pos;
      if (arc.ilabel != kEpsilon) {
        if (pos == phonemes.size() || isyms.Find(arc.ilabel) != phonemes[pos]) {
          continue;
        }
        ++next;
      }
      if (arc.olabel != kEpsilon) {
        if (out.size() == max_length) continue;
        out.push_back(osyms.Find(arc.olabel));
      }
      self(self, arc.nextstate, next, w + arc.weight.Value(), depth + 1);
      if (arc.olabel != kEpsilon) out.pop_back();
    }
  };
  if (!inverse.Empty()) dfs(dfs, inverse.Start(), 0, 0.0, 0);

  std::vector<OracleCandidate> result;
  for (const auto &[spelling, w] : lattice) {
    const double lm_cost = AcceptorCost(lm, spelling);
    if (std::isinf(lm_cost)) continue;
    OracleCandidate c;
    for (const auto &g : spelling) c.graphemes += g;
    c.cost = w + lm_scale * lm_cost;
    result.push_back(std::move(c));
  }
  std::sort(result.begin(), result.end(), [](const auto &a, const auto &b) {
    return a.cost != b.cost ? a.cost < b.cost : a.graphemes < b.graphemes;
  });
  // Keep the cheapest of spellings that join to the same string.
  std::vector<OracleCandidate> unique;
  for (auto &c : result) {
    if (std::none_of(unique.begin(), unique.end(), [&](const auto &u) {
          return u.graphemes == c.graphemes;
        })) {
      unique.push_back(std::move(c));
    }
  }
  return unique;
}

// Empty when `got` is a valid top-n of `want`: same length, costs agree
// rank by rank within tol, every returned spelling carries its own oracle
// cost, and spellings strictly cheaper than the n-th cost all appear.
// Otherwise a description of the first mismatch.
inline std::string CompareTopN(const std::vector<CandidateWord> &got,
                               const std::vector<OracleCandidate> &want,
                               std::size_t n, double tol) {
  char buf[256];
  const std::size_t expected = std::min(n, want.size());
  if (got.size() != expected) {
    std::snprintf(buf, sizeof(buf), "got %zu candidates, want %zu", got.size(),
                  expected);
    return buf;
  }
  std::map<std::string, double> cost;
  for (const auto &c : want) cost.emplace(c.graphemes, c.cost);
  for (std::size_t i = 0; i < expected; ++i) {
    const double g = got[i].cost.Value();
    if (std::abs(g - want[i].cost) > tol) {
      std::snprintf(buf, sizeof(buf), "rank %zu: cost %.9f, want %.9f (%s)", i,
                    g, want[i].cost, want[i].graphemes.c_str());
      return buf;
    }
    const auto it = cost.find(got[i].graphemes);
    if (it == cost.end() || std::abs(it->second - g) > tol) {
      return "rank " + std::to_string(i) + ": unexpected candidate " +
             got[i].graphemes;
    }
  }
  if (expected == 0) return "";
  const double cutoff = want[expected - 1].cost;
  for (std::size_t i = 0; i < expected; ++i) {
    if (want[i].cost < cutoff - tol && std::none_of(
                                           got.begin(), got.end(),
                                           [&](const CandidateWord &c) {
                                             return c.graphemes ==
                                                    want[i].graphemes;
                                           })) {
      return "missing candidate " + want[i].graphemes;
    }
  }
  return "";
}

}  // namespace oovfst::testing

#endif  // OOVFST_TESTS_TESTING_RECOVERY_ORACLE_H_
