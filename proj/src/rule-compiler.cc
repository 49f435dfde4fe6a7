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

#include "oovfst/rule-compiler.h"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "nfa.h"
#include "oovfst/errors.h"
#include "oovfst/operations.h"
#include "oovfst/utf8.h"

namespace oovfst {
namespace {

using internal::ConcatNfa;
using internal::FollowedByAnything;
using internal::Nfa;
using internal::PrecededByAnything;
using internal::RegexToNfa;
using internal::StateSet;

// Assigns dense ids to values. References returned by Get stay valid.
template <typename T>
class Interner {
 public:
  int Intern(const T &value) {
    auto [it, inserted] =
        ids_.try_emplace(value, static_cast<int>(values_.size()));
    if (inserted) values_.push_back(value);
    return it->second;
  }
  const T &Get(int id) const { return values_[id]; }

 private:
  std::map<T, int> ids_;
  std::deque<T> values_;
};

StateSet Union(const StateSet &a, const StateSet &b) {
  StateSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

// Builds the transducer for one rule by exploring the reachable product of:
//
//   left   - subset of the automaton for (Sigma* lambda), or lambda when
//            anchored, run over the input read so far. The left context holds
//            at the current position iff the subset contains a final state.
//   match  - while inside a match, the subset of the phi automaton reached
//            by the symbols matched so far; -1 between matches.
//   owed   - right-context obligations: one subset of the (rho Sigma*)
//            automaton per completed match still waiting for its context.
//   banned - for obligatory rules, a single subset of the (phi rho Sigma*)
//            automaton that must never accept. It records positions that
//            were copied although the left context held (no valid match may
//            start there) and matches that ended (no longer valid match may
//            extend them). A union of subsets accepts iff one of them does,
//            so all such constraints share one subset.
class RuleBuilder {
 public:
  RuleBuilder(const RewriteRule &rule, const SymbolTablePtr &symbols)
      : rule_(rule), symbols_(symbols), builder_(symbols, symbols) {
    const Nfa lambda = RegexToNfa(rule.lambda, *symbols);
    left_ = rule.bos ? lambda : PrecededByAnything(lambda);
    phi_ = RegexToNfa(rule.phi, *symbols);
    const Nfa rho = RegexToNfa(rule.rho, *symbols);
    right_ = rule.eos ? rho : FollowedByAnything(rho);
    banned_nfa_ = ConcatNfa(phi_, right_).first;
    left_.Analyze();
    phi_.Analyze();
    right_.Analyze();
    banned_nfa_.Analyze();
    for (Label l = 1; l < static_cast<Label>(symbols->Size()); ++l) {
      sigma_.push_back(l);
    }
    for (const auto &s : rule.psi) psi_.push_back(symbols->Find(s));
    left_start_ = left_.Closure({left_.Start()});
    phi_start_ = phi_.Closure({phi_.Start()});
    right_start_ = right_.Closure({right_.Start()});
    banned_start_ = banned_nfa_.Closure({banned_nfa_.Start()});
  }

  Wfst Build() && {
    const StateId start = FindState(
        Key{sets_.Intern(left_start_), -1, owed_.Intern({}), sets_.Intern({})});
    builder_.SetStart(start);
    while (!queue_.empty()) {
      auto [key, id] = queue_.front();
      queue_.pop_front();
      Expand(key, id);
    }
    return Connect(std::move(builder_).Build());
  }

 private:
  struct Key {
    int left;
    int match;
    int owed;
    int banned;
    auto operator<=>(const Key &) const = default;
  };

  StateId FindState(const Key &key) {
    auto [it, inserted] = ids_.try_emplace(key, builder_.NumStates());
    if (inserted) {
      builder_.AddState();
      queue_.emplace_back(key, it->second);
    }
    return it->second;
  }

  // Advances each owed right context over `label`. Returns false if one of
  // them can no longer be met. Satisfied obligations are dropped.
  bool StepOwed(const std::vector<int> &owed, Label label,
                std::vector<int> &out) {
    out.clear();
    for (int id : owed) {
      const StateSet next = right_.Closure(right_.Step(sets_.Get(id), label));
      if (next.empty()) return false;
      if (right_.AnyUniversal(next)) continue;
      out.push_back(sets_.Intern(next));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return true;
  }

  // Returns false if a banned match has become certain.
  bool StepBanned(const StateSet &banned, Label label, StateSet &out) {
    out = banned_nfa_.Closure(banned_nfa_.Step(banned, label));
    return !banned_nfa_.AnyUniversal(out);
  }

  void Expand(const Key &key, StateId id) {
    const StateSet &left = sets_.Get(key.left);
    const std::vector<int> &owed = owed_.Get(key.owed);
    const StateSet &banned = sets_.Get(key.banned);

    if (key.match < 0) {
      bool done = banned_nfa_.AnyFinal(banned) ? false : true;
      for (int o : owed) {
        if (!right_.AnyFinal(sets_.Get(o))) done = false;
      }
      if (done) builder_.SetFinal(id, TropicalWeight::One());
    }

    const bool left_ok = key.match < 0 && left_.AnyFinal(left);
    const bool obligatory = !rule_.optional;
    std::vector<int> next_owed;
    StateSet next_banned;
    for (Label label : sigma_) {
      const int next_left =
          sets_.Intern(left_.Closure(left_.Step(left, label)));
      if (!StepOwed(owed, label, next_owed)) continue;
      const int next_owed_id = owed_.Intern(next_owed);

      StateSet matched;
      if (key.match < 0) {
        // Copy the symbol. If a match could start here, forbid it.
        const StateSet copy_banned =
            obligatory && left_ok ? Union(banned, banned_start_) : banned;
        if (StepBanned(copy_banned, label, next_banned)) {
          const StateId next = FindState(
              Key{next_left, -1, next_owed_id, sets_.Intern(next_banned)});
          builder_.AddArc(id, label, label, TropicalWeight::One(), next);
        }
        if (!left_ok) continue;
        matched = phi_.Closure(phi_.Step(phi_start_, label));
      } else {
        matched = phi_.Closure(phi_.Step(sets_.Get(key.match), label));
      }
      if (matched.empty()) continue;
      if (!StepBanned(banned, label, next_banned)) continue;

      // Continue the match.
      const int next_banned_id = sets_.Intern(next_banned);
      const StateId cont = FindState(
          Key{next_left, sets_.Intern(matched), next_owed_id, next_banned_id});
      builder_.AddArc(id, label, kEpsilon, TropicalWeight::One(), cont);

      if (!phi_.AnyFinal(matched)) continue;
      // End the match after this symbol: the right context is now owed and,
      // for obligatory rules, no longer match may exist.
      std::vector<int> owed_after = next_owed;
      if (!right_.AnyUniversal(right_start_)) {
        owed_after.push_back(sets_.Intern(right_start_));
        std::sort(owed_after.begin(), owed_after.end());
        owed_after.erase(std::unique(owed_after.begin(), owed_after.end()),
                         owed_after.end());
      }
      const StateSet banned_after =
          obligatory ? Union(next_banned, matched) : next_banned;
      const StateId target = FindState(Key{
          next_left, -1, owed_.Intern(owed_after), sets_.Intern(banned_after)});
      EmitReplacement(id, label, target);
    }
  }

  // Arc consuming the last matched symbol and writing psi, via a chain of
  // input-epsilon arcs when psi has several symbols. Chains are shared per
  // target state.
  void EmitReplacement(StateId from, Label label, StateId target) {
    if (psi_.size() <= 1) {
      builder_.AddArc(from, label, psi_.empty() ? kEpsilon : psi_[0],
                      rule_.weight, target);
      return;
    }
    auto [it, inserted] = chains_.try_emplace(target, kNoStateId);
    if (inserted) {
      StateId next = target;
      for (std::size_t k = psi_.size() - 1; k >= 1; --k) {
        const StateId s = builder_.AddState();
        builder_.AddArc(s, kEpsilon, psi_[k], TropicalWeight::One(), next);
        next = s;
      }
      it->second = next;
    }
    builder_.AddArc(from, label, psi_[0], rule_.weight, it->second);
  }

  const RewriteRule &rule_;
  SymbolTablePtr symbols_;
  WfstBuilder builder_;
  Nfa left_;
  Nfa phi_;
  Nfa right_;
  Nfa banned_nfa_;
  std::vector<Label> sigma_;
  std::vector<Label> psi_;
  StateSet left_start_;
  StateSet phi_start_;
  StateSet right_start_;
  StateSet banned_start_;

  Interner<StateSet> sets_;
  Interner<std::vector<int>> owed_;
  std::map<Key, StateId> ids_;
  std::deque<std::pair<Key, StateId>> queue_;
  std::map<StateId, StateId> chains_;
};

}  // namespace

Wfst CompileRule(const RewriteRule &rule, const SymbolTablePtr &symbols) {
  if (rule.phi.AcceptsEmpty()) {
    throw InvalidArgumentError("rule left-hand side matches the empty string");
  }
  return RuleBuilder(rule, symbols).Build();
}

Wfst CompileRuleSet(const RuleSet &rules, const CascadeOptions &options) {
  const SymbolTablePtr cascade = rules.CascadeSymbols();
  std::vector<Label> input_labels;
  for (const auto &s : rules.alphabet->Symbols()) {
    if (s != kEpsilonSymbol) input_labels.push_back(cascade->Find(s));
  }
  std::vector<Label> output_labels;
  for (const auto &s : rules.phonemes->Symbols()) {
    if (s != kEpsilonSymbol) output_labels.push_back(cascade->Find(s));
  }
  Wfst t = Identity(cascade, input_labels);
  for (const auto &rule : rules.rules) {
    RewriteRule compiled = rule;
    if (options.all_optional) compiled.optional = true;
    t = Compose(t, CompileRule(compiled, cascade));
  }
  t = RemoveEpsilon(Compose(t, Identity(cascade, output_labels)));
  return Relabel(t, rules.alphabet, rules.phonemes);
}

std::vector<Rewrite> Apply(const Wfst &t, std::span<const std::string> tokens,
                           const ApplyOptions &options) {
  const Wfst lattice =
      Project(Compose(LinearAcceptor(tokens, t.InputSymbols()), t),
              ProjectSide::kOutput);
  const auto &osyms = *t.OutputSymbols();
  std::vector<Rewrite> out;
  for (const auto &o : ShortestDistinctOutputs(lattice, options.max_outputs,
                                               options.max_output_length)) {
    Rewrite r;
    r.weight = o.weight;
    for (Label l : o.labels) r.output.push_back(osyms.Find(l));
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const Rewrite &a, const Rewrite &b) {
    return std::tie(a.weight, a.output) < std::tie(b.weight, b.output);
  });
  if (out.size() > options.max_outputs) out.resize(options.max_outputs);
  return out;
}

std::vector<Rewrite> ApplyString(const Wfst &t, std::string_view text,
                                 const ApplyOptions &options) {
  const auto tokens = SplitCodePoints(text);
  return Apply(t, tokens, options);
}

}  // namespace oovfst
