#pragma once

// The ℚ-copy: finite binary strings s, embedded as e(s) = s·1·0^ω. Cones C_u = {s : u ⊑ e(s)}.

#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "idealis/sets.hpp"

namespace idealis {

using QPoint = std::string;

/// u ⊑ e(s).
inline bool in_cone(std::string_view u, std::string_view s) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    const char want = i < s.size() ? s[i] : (i == s.size() ? '1' : '0');
    if (u[i] != want) return false;
  }
  return true;
}

/// The point s with u = s·1·0^j, if u contains a 1. It is the only point of C_u shorter than u.
inline std::optional<QPoint> cone_strip(std::string_view u) {
  const auto last = u.find_last_of('1');
  if (last == std::string_view::npos) return std::nullopt;
  return QPoint(u.substr(0, last));
}

/// Least-code point of C_u.
inline QPoint cone_least(std::string_view u) {
  if (auto s = cone_strip(u)) return *s;
  return QPoint(u);
}

/// DFA of a QStrings set built from Regular, Finite, Cofinite leaves and boolean combinations.
inline DFA regular_of(const SymbolicSet& s) {
  using namespace set_nodes;
  if (s.ground().kind != GroundKind::QStrings) fail(ErrorKind::Precondition, "regular_of needs a QStrings set");
  return std::visit(
      [&](const auto& x) -> DFA {
        using T = std::decay_t<decltype(x)>;
        auto words = [](const std::vector<Natural>& codes) {
          std::vector<std::string> w;
          for (Natural k : codes) w.push_back(qstring_decode(k));
          return finite_language(w);
        };
        if constexpr (std::is_same_v<T, Regular>) return x.dfa;
        else if constexpr (std::is_same_v<T, Finite>) return words(x.codes);
        else if constexpr (std::is_same_v<T, Cofinite>) return words(x.excluded).complement();
        else if constexpr (std::is_same_v<T, Binary>) return product(regular_of(*x.left), regular_of(*x.right), x.op);
        else fail(ErrorKind::UnsupportedPresentation, "QStrings set is not regular-presented");
      },
      s.node());
}

/// Prefix-closure automaton L' = {u : C_u ∩ L ≠ ∅} and the greatest set of its states from which
/// every path stays inside L'. L is dense in C_u exactly when the L'-state of u lies in that set.
struct NwdAnalysis {
  DFA closure;                 // state 2q + flag
  std::vector<bool> dense;     // greatest fixpoint
  std::vector<bool> reachable;

  explicit NwdAnalysis(const DFA& L) {
    L.validate();
    const auto live = L.live_states();
    const DFA::State n = L.states;
    closure.states = 2 * n;
    closure.start = 2 * L.start;
    closure.accepting.assign(2 * n, false);
    closure.delta.assign(2 * n, {0, 0});
    for (DFA::State q = 0; q < n; ++q)
      for (DFA::State f = 0; f < 2; ++f) {
        const DFA::State s = 2 * q + f;
        // u·0 keeps the s·1·0^j shape; u·1 starts it afresh iff u ∈ L
        closure.delta[s] = {2 * L.delta[q][0] + f, 2 * L.delta[q][1] + (L.accepting[q] ? 1u : 0u)};
        closure.accepting[s] = live[q] || f == 1;
      }
    dense = closure.accepting;
    for (bool changed = true; changed;) {
      changed = false;
      for (DFA::State s = 0; s < closure.states; ++s)
        if (dense[s] && (!dense[closure.delta[s][0]] || !dense[closure.delta[s][1]])) {
          dense[s] = false;
          changed = true;
        }
    }
    reachable = closure.reachable_states();
  }

  bool nowhere_dense() const {
    for (DFA::State s = 0; s < closure.states; ++s)
      if (reachable[s] && dense[s]) return false;
    return true;
  }

  bool everywhere_dense() const { return dense[closure.start]; }

  /// Least-code u with L dense in C_u.
  std::optional<std::string> least_dense_cone() const {
    // BFS in length-lexicographic order reaches each state first along its least-code word
    std::vector<bool> seen(closure.states, false);
    std::deque<std::pair<DFA::State, std::string>> queue{{closure.start, ""}};
    seen[closure.start] = true;
    while (!queue.empty()) {
      auto [s, w] = queue.front();
      queue.pop_front();
      if (dense[s]) return w;
      for (int c = 0; c < 2; ++c) {
        const DFA::State t = closure.delta[s][static_cast<std::size_t>(c)];
        if (!seen[t]) {
          seen[t] = true;
          queue.emplace_back(t, w + static_cast<char>('0' + c));
        }
      }
    }
    return std::nullopt;
  }
};

/// True iff L is nowhere dense in the ℚ-copy. Exact.
inline bool nwd_regular_decide(const DFA& L) { return NwdAnalysis(L).nowhere_dense(); }

/// True iff L meets every cone.
inline bool dense_regular(const DFA& L) { return NwdAnalysis(L).everywhere_dense(); }

inline constexpr Natural kConeSearchMaxDepth = 16;

/// Brute-force search for a cone in which L is dense, looking only at strings of bounded length.
/// Candidate cones u have |u| ≤ depth − 2·states (room for an escape path of the prefix-closure
/// automaton), every extension v with |v| ≤ depth must meet L, and C_v ∩ L is searched among
/// strings of length ≤ depth + states. Returns the least such u, or nullopt (inconclusive).
inline std::optional<std::string> cone_search_oracle(const DFA& L, Natural depth) {
  L.validate();
  if (depth > kConeSearchMaxDepth) fail(ErrorKind::Precondition, "cone search depth above 16");
  const Natural n = L.states;
  const Natural D = depth + n;
  if (D > 26) fail(ErrorKind::Budget, "cone search: trie deeper than 26 levels");
  const std::size_t nodes = (std::size_t{1} << (D + 1)) - 1;
  // node index is the QStrings code: children of k are 2k+1 and 2k+2
  std::vector<DFA::State> state(nodes);
  std::vector<bool> in_l(nodes), ext(nodes);
  state[0] = L.start;
  for (std::size_t k = 0; 2 * k + 2 < nodes; ++k) {
    state[2 * k + 1] = L.delta[state[k]][0];
    state[2 * k + 2] = L.delta[state[k]][1];
  }
  for (std::size_t k = 0; k < nodes; ++k) in_l[k] = L.accepting[state[k]];
  for (std::size_t k = nodes; k-- > 0;) {
    bool e = in_l[k];
    if (2 * k + 2 < nodes) e = e || ext[2 * k + 1] || ext[2 * k + 2];
    ext[k] = e;
  }
  const std::size_t shallow = (std::size_t{1} << (depth + 1)) - 1;
  std::vector<bool> hits(shallow), good(shallow);
  for (std::size_t k = 0; k < shallow; ++k) {
    bool h = ext[k];
    if (!h)
      if (auto s = cone_strip(qstring_decode(k))) h = in_l[static_cast<std::size_t>(qstring_code(*s))];
    hits[k] = h;
  }
  const std::size_t last_level = (std::size_t{1} << depth) - 1;
  for (std::size_t k = shallow; k-- > 0;)
    good[k] = hits[k] && (k >= last_level || (good[2 * k + 1] && good[2 * k + 2]));
  if (depth < 2 * n) return std::nullopt;
  const std::size_t candidates = (std::size_t{1} << (depth - 2 * n + 1)) - 1;
  for (std::size_t k = 0; k < candidates; ++k)
    if (good[k]) return qstring_decode(k);
  return std::nullopt;
}

/// Does the code interval [lo, hi) contain a point of C_v?
inline bool code_interval_meets_cone(const BigNat& lo, const BigNat& hi, const std::string& v) {
  if (lo >= hi) return false;
  if (auto s = cone_strip(v)) {
    const BigNat c = qstring_code_big(*s);
    if (lo <= c && c < hi) return true;
  }
  const auto len_of = [](const BigNat& code) {
    return static_cast<std::size_t>(boost::multiprecision::msb(BigNat(code + 1)));
  };
  const std::size_t from = std::max(v.size(), len_of(lo)), to = len_of(hi - 1);
  BigNat val = 0;
  for (char c : v) val = val * 2 + (c == '1' ? 1 : 0);
  for (std::size_t l = from; l <= to; ++l) {
    const BigNat span = BigNat(1) << (l - v.size());
    const BigNat first = (BigNat(1) << l) - 1 + val * span;
    const BigNat last = first + span;  // exclusive
    if (first < hi && lo < last) return true;
  }
  return false;
}

namespace qtop_detail {

/// Least-code point of C_w ∩ Y passing `keep`, searched length by length under a budget.
class ConeSearch {
 public:
  explicit ConeSearch(const DFA& y) : y_(y) { reach_.push_back(y.accepting); }

  template <typename Keep, typename SkipLength>
  std::optional<QPoint> least(const std::string& w, Keep keep, SkipLength skip_length, Natural& budget) {
    if (auto s = cone_strip(w))
      if (y_.accepts(*s) && keep(*s)) return s;
    const DFA::State q0 = y_.run(w);
    for (Natural r = 0;; ++r) {
      if (budget == 0) return std::nullopt;
      --budget;
      if (skip_length(w.size() + r)) continue;
      if (!accepts_in(q0, r)) continue;
      std::string cur = w;
      if (auto hit = dfs(cur, q0, r, keep, budget)) return hit;
    }
  }

 private:
  bool accepts_in(DFA::State q, Natural r) {
    while (reach_.size() <= r) {
      const auto& prev = reach_.back();
      std::vector<bool> next(y_.states);
      for (DFA::State s = 0; s < y_.states; ++s) next[s] = prev[y_.delta[s][0]] || prev[y_.delta[s][1]];
      reach_.push_back(std::move(next));
    }
    return reach_[static_cast<std::size_t>(r)][q];
  }

  template <typename Keep>
  std::optional<QPoint> dfs(std::string& cur, DFA::State q, Natural r, Keep& keep, Natural& budget) {
    if (budget == 0) return std::nullopt;
    --budget;
    if (r == 0) {
      if (keep(cur)) return cur;
      return std::nullopt;
    }
    for (int c = 0; c < 2; ++c) {
      const DFA::State t = y_.delta[q][static_cast<std::size_t>(c)];
      if (!accepts_in(t, r - 1)) continue;
      cur.push_back(static_cast<char>('0' + c));
      auto hit = dfs(cur, t, r - 1, keep, budget);
      cur.pop_back();
      if (hit) return hit;
    }
    return std::nullopt;
  }

  DFA y_;
  std::vector<std::vector<bool>> reach_;  // reach_[r][q]: some word of length exactly r leads q to acceptance
};

}  // namespace qtop_detail

/// A sequence inside a dense set D converging to a, meeting each nowhere dense N_m at most once.
/// Step n picks the least-code point of D in the neighbourhood C_{a·1·0^n}, avoiding a, N_0..N_n
/// and every N_m already met.
class ConvergingSequence {
 public:
  ConvergingSequence(QPoint a, DFA dense, std::vector<DFA> avoid, Natural budget = default_budget())
      : a_(std::move(a)), d_(std::move(dense)), avoid_(std::move(avoid)), search_(d_), budget_(budget) {
    if (!is_binary_word(a_)) fail(ErrorKind::Presentation, "point must be a binary word");
    if (!dense_regular(d_)) fail(ErrorKind::Precondition, "converging_sequence: D is not dense");
    for (std::size_t m = 0; m < avoid_.size(); ++m)
      if (!nwd_regular_decide(avoid_[m]))
        fail(ErrorKind::Precondition, "converging_sequence: N_" + std::to_string(m) + " is not nowhere dense");
    met_.assign(avoid_.size(), false);
  }

  const QPoint& target() const { return a_; }
  Natural steps() const { return static_cast<Natural>(points_.size()); }
  const std::vector<QPoint>& points() const { return points_; }

  /// Neighbourhood cone of step n.
  std::string neighbourhood(Natural n) const { return a_ + "1" + std::string(static_cast<std::size_t>(n), '0'); }

  QPoint next() {
    const Natural n = steps();
    auto keep = [&](const QPoint& s) {
      if (s == a_) return false;
      for (std::size_t m = 0; m < avoid_.size(); ++m)
        if ((m <= n || met_[m]) && avoid_[m].accepts(s)) return false;
      return std::find(points_.begin(), points_.end(), s) == points_.end();
    };
    Natural budget = budget_;
    auto hit = search_.least(neighbourhood(n), keep, [](Natural) { return false; }, budget);
    if (!hit) fail(ErrorKind::Budget, "converging_sequence: budget exhausted in neighbourhood " + std::to_string(n));
    for (std::size_t m = 0; m < avoid_.size(); ++m)
      if (avoid_[m].accepts(*hit)) met_[m] = true;
    points_.push_back(*hit);
    return *hit;
  }

  /// Points outside the neighbourhood C_{a·1·0^d}: only picks made before step d.
  static Natural outside_bound(Natural d) { return d; }

 private:
  QPoint a_;
  DFA d_;
  std::vector<DFA> avoid_;
  qtop_detail::ConeSearch search_;
  Natural budget_;
  std::vector<bool> met_;
  std::vector<QPoint> points_;
};

/// A partition of the ℚ-copy into blocks, given by a computable index and a DFA per block.
struct QBlocks {
  std::string name;
  std::function<Natural(const QPoint&)> index;
  std::function<DFA(Natural)> language;
  bool by_length = false;  // block n = strings of length n; lets searches skip whole lengths

  static QBlocks length() {
    QBlocks b;
    b.name = "length";
    b.index = [](const QPoint& s) { return static_cast<Natural>(s.size()); };
    b.language = [](Natural n) {
      // n+2 states: counter 0..n, then a sink
      DFA d;
      d.states = static_cast<DFA::State>(n + 2);
      d.start = 0;
      d.accepting.assign(d.states, false);
      d.accepting[static_cast<std::size_t>(n)] = true;
      d.delta.resize(d.states);
      for (DFA::State q = 0; q < d.states; ++q) {
        const DFA::State t = q + 1 < d.states ? q + 1 : q;
        d.delta[q] = {t, t};
      }
      return d;
    };
    b.by_length = true;
    return b;
  }

  static QBlocks constant(Natural c) {
    QBlocks b;
    b.name = "constant " + std::to_string(c);
    b.index = [c](const QPoint&) { return c; };
    b.language = [c](Natural n) { return n == c ? DFA::all() : DFA::empty(); };
    return b;
  }
};

/// Partial selector B ⊆ Y dense in a cone where Y is dense, meeting every block at most once.
/// Points a_j of the cone are enumerated in code order; a converging sequence toward each a_j is
/// built inside Y, and the sequences are dovetailed in rounds 0; 0,1; 0,1,2; ...
class WsSelector {
 public:
  WsSelector(DFA y, QBlocks blocks, Natural budget = default_budget())
      : y_(std::move(y)), blocks_(std::move(blocks)), search_(y_), budget_(budget) {
    NwdAnalysis an(y_);
    auto u = an.least_dense_cone();
    if (!u) fail(ErrorKind::Precondition, "ws_selector: Y is nowhere dense");
    cone_ = *u;
  }

  const std::string& cone() const { return cone_; }
  const std::vector<QPoint>& points() const { return points_; }
  /// Index of the converging sequence each point came from.
  const std::vector<Natural>& sources() const { return sources_; }

  /// j-th point of the cone in code order.
  QPoint cone_point(Natural j) const {
    auto s = cone_strip(cone_);
    if (s) {
      if (j == 0) return *s;
      --j;
    }
    return cone_ + qstring_decode(j);
  }

  QPoint next() {
    {
      const Natural j = cursor_;
      if (++cursor_ > round_) {
        cursor_ = 0;
        ++round_;
      }
      if (steps_.size() <= j) steps_.resize(static_cast<std::size_t>(j) + 1, kInfinity);
      const QPoint a = cone_point(j);
      Natural& k = steps_[static_cast<std::size_t>(j)];
      if (k == kInfinity) k = cone_.size() > a.size() + 1 ? cone_.size() - a.size() - 1 : 0;
      const std::string w = a + "1" + std::string(static_cast<std::size_t>(k), '0');
      ++k;
      auto keep = [&](const QPoint& s) { return s != a && !used_.count(blocks_.index(s)); };
      auto skip = [&](Natural len) { return blocks_.by_length && used_.count(len) > 0; };
      Natural budget = budget_;
      auto hit = search_.least(w, keep, skip, budget);
      if (!hit) fail(ErrorKind::Budget, "ws_selector: budget exhausted serving point " + std::to_string(j));
      const Natural b = blocks_.index(*hit);
      if (!nwd_regular_decide(blocks_.language(b)))
        fail(ErrorKind::Precondition, "ws_selector: block " + std::to_string(b) + " is not nowhere dense");
      used_.insert(b);
      points_.push_back(*hit);
      sources_.push_back(j);
      return *hit;
    }
  }

 private:
  DFA y_;
  QBlocks blocks_;
  qtop_detail::ConeSearch search_;
  Natural budget_;
  std::string cone_;
  Natural round_ = 0, cursor_ = 0;
  std::vector<Natural> steps_;
  std::set<Natural> used_;
  std::vector<QPoint> points_;
  std::vector<Natural> sources_;
};

}  // namespace idealis
