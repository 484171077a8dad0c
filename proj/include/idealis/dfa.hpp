#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "idealis/core.hpp"

namespace idealis {

/// Deterministic automaton over {0,1}; transitions are total.
struct DFA {
  using State = std::uint32_t;

  State states = 1;
  State start = 0;
  std::vector<bool> accepting;               // size == states
  std::vector<std::array<State, 2>> delta;   // size == states

  static DFA empty() { return DFA{1, 0, {false}, {{0, 0}}}; }
  static DFA all() { return DFA{1, 0, {true}, {{0, 0}}}; }

  void validate() const {
    if (states == 0) fail(ErrorKind::Presentation, "DFA: zero states");
    if (start >= states) fail(ErrorKind::Presentation, "DFA: start state out of range");
    if (accepting.size() != states || delta.size() != states)
      fail(ErrorKind::Presentation, "DFA: accept/delta tables do not match the state count");
    for (const auto& row : delta)
      for (State t : row)
        if (t >= states) fail(ErrorKind::Presentation, "DFA: transition target out of range");
  }

  State step(State q, char c) const { return delta[q][c == '1' ? 1 : 0]; }

  State run(std::string_view w) const { return run_from(start, w); }

  State run_from(State q, std::string_view w) const {
    for (char c : w) q = step(q, c);
    return q;
  }

  bool accepts(std::string_view w) const { return accepting[run(w)]; }

  DFA complement() const {
    DFA d = *this;
    d.accepting.flip();
    return d;
  }

  /// States from which some accepting state is reachable.
  std::vector<bool> live_states() const {
    std::vector<std::vector<State>> rev(states);
    for (State q = 0; q < states; ++q)
      for (State t : delta[q]) rev[t].push_back(q);
    std::vector<bool> live(states, false);
    std::vector<State> stack;
    for (State q = 0; q < states; ++q)
      if (accepting[q]) {
        live[q] = true;
        stack.push_back(q);
      }
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      for (State p : rev[q])
        if (!live[p]) {
          live[p] = true;
          stack.push_back(p);
        }
    }
    return live;
  }

  std::vector<bool> reachable_states() const {
    std::vector<bool> seen(states, false);
    std::vector<State> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      for (State t : delta[q])
        if (!seen[t]) {
          seen[t] = true;
          stack.push_back(t);
        }
    }
    return seen;
  }

  bool language_empty() const {
    auto reach = reachable_states();
    for (State q = 0; q < states; ++q)
      if (reach[q] && accepting[q]) return false;
    return true;
  }

  /// True iff the language is finite: no cycle through a reachable, live state.
  bool language_finite() const {
    auto reach = reachable_states();
    auto live = live_states();
    // colour-based cycle detection restricted to useful states
    std::vector<int> colour(states, 0);
    for (State root = 0; root < states; ++root) {
      if (!reach[root] || !live[root] || colour[root] != 0) continue;
      std::vector<std::pair<State, int>> stack{{root, 0}};
      colour[root] = 1;
      while (!stack.empty()) {
        auto& [q, i] = stack.back();
        if (i == 2) {
          colour[q] = 2;
          stack.pop_back();
          continue;
        }
        State t = delta[q][static_cast<std::size_t>(i++)];
        if (!live[t]) continue;
        if (colour[t] == 1) return false;
        if (colour[t] == 0) {
          colour[t] = 1;
          stack.push_back({t, 0});
        }
      }
    }
    return true;
  }

  bool operator==(const DFA&) const = default;
};

enum class BoolOp { Union, Intersection, Difference };

/// Reachable part of the product automaton.
inline DFA product(const DFA& x, const DFA& y, BoolOp op) {
  std::map<std::pair<DFA::State, DFA::State>, DFA::State> index;
  std::vector<std::pair<DFA::State, DFA::State>> order;
  auto intern = [&](DFA::State p, DFA::State q) {
    auto [it, fresh] = index.try_emplace({p, q}, static_cast<DFA::State>(order.size()));
    if (fresh) order.push_back({p, q});
    return it->second;
  };
  intern(x.start, y.start);
  DFA out;
  out.accepting.clear();
  out.delta.clear();
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [p, q] = order[i];
    bool a = x.accepting[p], b = y.accepting[q];
    bool acc = op == BoolOp::Union ? (a || b) : op == BoolOp::Intersection ? (a && b) : (a && !b);
    out.accepting.push_back(acc);
    std::array<DFA::State, 2> row{};
    for (int c = 0; c < 2; ++c) row[static_cast<std::size_t>(c)] = intern(x.delta[p][c], y.delta[q][c]);
    out.delta.push_back(row);
  }
  out.states = static_cast<DFA::State>(order.size());
  out.start = 0;
  return out;
}

/// Trie automaton for a finite set of binary words.
inline DFA finite_language(const std::vector<std::string>& words) {
  DFA d;
  d.states = 1;
  d.accepting = {false};
  d.delta = {{0, 0}};
  // state 0 is the sink; the root is state 1
  auto fresh = [&]() {
    d.accepting.push_back(false);
    d.delta.push_back({0, 0});
    return d.states++;
  };
  d.start = fresh();
  for (const auto& w : words) {
    DFA::State q = d.start;
    for (char c : w) {
      auto bit = static_cast<std::size_t>(c == '1');
      if (d.delta[q][bit] == 0) {
        DFA::State t = fresh();
        d.delta[q][bit] = t;
      }
      q = d.delta[q][bit];
    }
    d.accepting[q] = true;
  }
  return d;
}

}  // namespace idealis
