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
#include <cstdint>
#include <functional>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "oovfst/operations.h"

namespace oovfst {
namespace {

constexpr double kInfinity = TropicalWeight::Zero().Value();

// Costs that differ only by summation order count as ties.
double TieSlack(double cost) { return 1e-9 * std::max(1.0, cost); }

struct QueueEntry {
  double priority;
  std::uint64_t seq;  // insertion order; makes equal priorities deterministic
  std::int64_t node;
  bool complete;

  bool operator>(const QueueEntry &other) const {
    return std::tie(priority, seq) > std::tie(other.priority, other.seq);
  }
};

using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>,
                                     std::greater<QueueEntry>>;

}  // namespace

std::vector<TropicalWeight> ShortestDistanceToFinal(const Wfst &t) {
  const StateId n = t.NumStates();
  std::vector<std::vector<std::pair<StateId, double>>> reverse(n);
  for (StateId s = 0; s < n; ++s) {
    for (const Arc &arc : t.Arcs(s)) {
      reverse[arc.nextstate].emplace_back(s, arc.weight.Value());
    }
  }
  std::vector<double> dist(n, kInfinity);
  using Entry = std::pair<double, StateId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (StateId s = 0; s < n; ++s) {
    if (t.IsFinal(s)) {
      dist[s] = t.Final(s).Value();
      heap.emplace(dist[s], s);
    }
  }
  while (!heap.empty()) {
    auto [d, s] = heap.top();
    heap.pop();
    if (d > dist[s]) continue;
    for (auto [p, w] : reverse[s]) {
      if (d + w < dist[p]) {
        dist[p] = d + w;
        heap.emplace(dist[p], p);
      }
    }
  }
  std::vector<TropicalWeight> result;
  result.reserve(n);
  for (double d : dist) result.emplace_back(d);
  return result;
}

bool PathLess(const Path &a, const Path &b) {
  return std::tie(a.weight, a.output, a.input) <
         std::tie(b.weight, b.output, b.input);
}

std::vector<Path> ShortestPaths(const Wfst &t, std::size_t n) {
  std::vector<Path> paths;
  if (t.Empty() || n == 0) return paths;
  const auto to_final = ShortestDistanceToFinal(t);
  if (to_final[t.Start()].IsZero()) return paths;

  struct Node {
    StateId state;
    std::int64_t parent;
    Label ilabel;
    Label olabel;
    double cost;
  };
  std::vector<Node> nodes;
  MinQueue queue;
  std::uint64_t seq = 0;
  nodes.push_back(Node{t.Start(), -1, kEpsilon, kEpsilon, 0.0});
  queue.push({to_final[t.Start()].Value(), seq++, 0, false});

  std::vector<std::size_t> expansions(t.NumStates(), 0);
  std::vector<double> nth_cost(t.NumStates(), kInfinity);
  std::vector<std::pair<std::int64_t, double>> complete;
  double cutoff = kInfinity;

  while (!queue.empty()) {
    const QueueEntry entry = queue.top();
    if (complete.size() >= n && entry.priority > cutoff + TieSlack(cutoff)) {
      break;
    }
    queue.pop();
    if (entry.complete) {
      complete.emplace_back(entry.node, entry.priority);
      if (complete.size() == n) cutoff = entry.priority;
      continue;
    }
    const Node node = nodes[entry.node];
    auto &count = expansions[node.state];
    if (count >= n) {
      const bool tie =
          node.cost <= nth_cost[node.state] + TieSlack(nth_cost[node.state]);
      if (!tie || count >= 2 * n) continue;
    }
    if (++count == n) nth_cost[node.state] = node.cost;
    if (t.IsFinal(node.state)) {
      queue.push(
          {node.cost + t.Final(node.state).Value(), seq++, entry.node, true});
    }
    for (const Arc &arc : t.Arcs(node.state)) {
      if (to_final[arc.nextstate].IsZero()) continue;
      const double cost = node.cost + arc.weight.Value();
      nodes.push_back(
          Node{arc.nextstate, entry.node, arc.ilabel, arc.olabel, cost});
      queue.push({cost + to_final[arc.nextstate].Value(), seq++,
                  static_cast<std::int64_t>(nodes.size() - 1), false});
    }
  }

  const auto &isyms = *t.InputSymbols();
  const auto &osyms = *t.OutputSymbols();
  for (const auto &[leaf, cost] : complete) {
    Path path;
    path.weight = TropicalWeight(cost);
    for (std::int64_t i = leaf; nodes[i].parent >= 0; i = nodes[i].parent) {
      if (nodes[i].ilabel != kEpsilon) {
        path.input.push_back(isyms.Find(nodes[i].ilabel));
      }
      if (nodes[i].olabel != kEpsilon) {
        path.output.push_back(osyms.Find(nodes[i].olabel));
      }
    }
    std::reverse(path.input.begin(), path.input.end());
    std::reverse(path.output.begin(), path.output.end());
    paths.push_back(std::move(path));
  }
  std::sort(paths.begin(), paths.end(), PathLess);
  if (paths.size() > n) paths.resize(n);
  return paths;
}

std::vector<OutputString> ShortestDistinctOutputs(
    const Wfst &t, std::size_t n, std::size_t max_output_length) {
  std::vector<OutputString> found;
  if (t.Empty() || n == 0) return found;
  const auto to_final = ShortestDistanceToFinal(t);
  if (to_final[t.Start()].IsZero()) return found;

  // Output prefixes are interned in a trie; a search node is identified by
  // (state, prefix) and expanded only once, at its cheapest cost.
  struct TrieNode {
    std::int32_t parent;
    Label label;
    std::uint32_t depth;
  };
  std::vector<TrieNode> trie{{-1, kEpsilon, 0}};
  std::unordered_map<std::uint64_t, std::int32_t> children;
  auto child = [&](std::int32_t parent, Label label) {
    const std::uint64_t key = (static_cast<std::uint64_t>(parent) << 32) |
                              static_cast<std::uint32_t>(label);
    auto [it, inserted] =
        children.try_emplace(key, static_cast<std::int32_t>(trie.size()));
    if (inserted) {
      trie.push_back({parent, label, trie[parent].depth + 1});
    }
    return it->second;
  };

  struct Node {
    StateId state;
    std::int32_t prefix;
    double cost;
  };
  std::vector<Node> nodes{{t.Start(), 0, 0.0}};
  MinQueue queue;
  std::uint64_t seq = 0;
  queue.push({to_final[t.Start()].Value(), seq++, 0, false});
  std::unordered_set<std::uint64_t> expanded;
  std::unordered_set<std::int32_t> emitted;
  double cutoff = kInfinity;

  while (!queue.empty()) {
    const QueueEntry entry = queue.top();
    if (found.size() >= n && entry.priority > cutoff + TieSlack(cutoff)) {
      break;
    }
    queue.pop();
    const Node node = nodes[entry.node];
    if (entry.complete) {
      if (!emitted.insert(node.prefix).second) continue;
      OutputString out;
      out.weight = TropicalWeight(entry.priority);
      for (std::int32_t i = node.prefix; i > 0; i = trie[i].parent) {
        out.labels.push_back(trie[i].label);
      }
      std::reverse(out.labels.begin(), out.labels.end());
      found.push_back(std::move(out));
      if (found.size() == n) cutoff = entry.priority;
      continue;
    }
    const std::uint64_t signature =
        (static_cast<std::uint64_t>(node.state) << 32) |
        static_cast<std::uint32_t>(node.prefix);
    if (!expanded.insert(signature).second) continue;
    if (t.IsFinal(node.state) && !emitted.count(node.prefix)) {
      queue.push(
          {node.cost + t.Final(node.state).Value(), seq++, entry.node, true});
    }
    for (const Arc &arc : t.Arcs(node.state)) {
      if (to_final[arc.nextstate].IsZero()) continue;
      std::int32_t prefix = node.prefix;
      if (arc.olabel != kEpsilon) {
        if (trie[prefix].depth >= max_output_length) continue;
        prefix = child(prefix, arc.olabel);
      }
      const double cost = node.cost + arc.weight.Value();
      nodes.push_back(Node{arc.nextstate, prefix, cost});
      queue.push({cost + to_final[arc.nextstate].Value(), seq++,
                  static_cast<std::int64_t>(nodes.size() - 1), false});
    }
  }
  return found;
}

}  // namespace oovfst
