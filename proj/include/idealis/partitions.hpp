#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "idealis/qtop.hpp"
#include "idealis/sets.hpp"

namespace idealis {

/// Number of blocks of P meeting the finite set s.
inline Natural cov(const IntervalPartition& P, const std::vector<Natural>& s) {
  std::set<Natural> blocks;
  for (Natural k : s) blocks.insert(P.block_of(k));
  return blocks.size();
}

/// A subset of ω meeting every block of its partition at most once.
struct PartialSelector {
  SymbolicSet set;
  IntervalPartition partition;

  /// The selected point of block n, if any.
  std::optional<Natural> on_block(Natural n) const {
    const Block<> b = partition.block(n);
    std::optional<Natural> hit;
    for (Natural k = b.start; k < b.end(); ++k)
      if (symbolic_member(set, k)) {
        if (hit) fail(ErrorKind::Precondition, "not a partial selector: two points in block " + std::to_string(n));
        hit = k;
      }
    return hit;
  }
};

/// A partial selector as a function: block n ↦ its point in P_n, if any.
using BlockChoice = std::function<std::optional<Natural>(Natural)>;

/// Total selector h of P that hits every listed partial selector infinitely often.
/// Discipline: a current index i; on each block where f_i is defined take its point, then advance
/// i cyclically; on blocks where f_i is undefined take the least element.
class ServingSelector {
 public:
  struct Pick {
    Natural block = 0;
    Natural point = 0;
    std::optional<std::size_t> served;  // which f_i supplied the point
  };

  /// Each f must have infinite domain and be a selector; both spot-checked on the first `spot_check` blocks
  /// (0 skips the check).
  ServingSelector(IntervalPartition P, const std::vector<PartialSelector>& fs, Natural spot_check = 64)
      : ServingSelector(P, as_choices(P, fs), spot_check) {}

  /// Selectors given directly as block ↦ optional point of that block.
  ServingSelector(IntervalPartition P, std::vector<BlockChoice> fs, Natural spot_check = 64)
      : p_(std::move(P)), fs_(std::move(fs)), hits_(fs_.size(), 0) {
    for (std::size_t i = 0; i < fs_.size() && spot_check > 0; ++i) {
      bool seen = false;
      for (Natural n = 0; n < spot_check; ++n) seen = fs_[i](n).has_value() || seen;
      if (!seen)
        fail(ErrorKind::Precondition, "selector " + std::to_string(i) + " has no point in the first " +
                                          std::to_string(spot_check) + " blocks");
    }
  }

  Pick next() {
    const Natural n = picks_.size();
    Pick pick{n, p_.start(n), std::nullopt};
    if (!fs_.empty()) {
      if (auto v = fs_[current_](n)) {
        pick.point = *v;
        pick.served = current_;
        ++hits_[current_];
        current_ = (current_ + 1) % fs_.size();
      }
    }
    picks_.push_back(pick);
    return pick;
  }

  const std::vector<Pick>& picks() const { return picks_; }
  const std::vector<Natural>& hits() const { return hits_; }
  std::size_t current() const { return current_; }

  /// The picks so far as a finite set.
  SymbolicSet prefix_set() const {
    std::vector<Natural> codes;
    for (const auto& p : picks_) codes.push_back(p.point);
    return SymbolicSet::finite(GroundSet{GroundKind::Omega}, codes);
  }

 private:
  IntervalPartition p_;
  std::vector<BlockChoice> fs_;
  std::vector<Natural> hits_;
  std::size_t current_ = 0;
  std::vector<Pick> picks_;

  static std::vector<BlockChoice> as_choices(const IntervalPartition& P, const std::vector<PartialSelector>& fs) {
    std::vector<BlockChoice> out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (!(fs[i].partition == P)) fail(ErrorKind::Precondition, "selector " + std::to_string(i) + " uses another partition");
      out.push_back([f = fs[i]](Natural n) { return f.on_block(n); });
    }
    return out;
  }
};

/// Strictly increasing stream of codes; nullopt means the producer gave up within its budget.
template <typename Code>
using CodeStream = std::function<std::optional<Code>()>;

/// Members of an ω-presented set in increasing order, at most `budget` membership tests per call.
inline CodeStream<Natural> symbolic_stream(SymbolicSet s, Natural budget = default_budget()) {
  if (s.ground().kind != GroundKind::Omega) fail(ErrorKind::Precondition, "symbolic_stream needs an Omega set");
  return [s = std::move(s), budget, k = Natural{0}]() mutable -> std::optional<Natural> {
    for (Natural spent = 0; spent < budget; ++spent, ++k)
      if (symbolic_member(s, k)) return k++;
    return std::nullopt;
  };
}

/// Codes of a converging sequence in the ℚ-copy.
inline CodeStream<BigNat> converging_stream(QPoint a, DFA dense, std::vector<DFA> avoid) {
  auto seq = std::make_shared<ConvergingSequence>(std::move(a), std::move(dense), std::move(avoid));
  return [seq]() -> std::optional<BigNat> { return qstring_code_big(seq->next()); };
}

/// Greedy Talagrand partition: P_n = [s, e) with s the end of P_{n-1} and e the least end such that
/// P_n meets A_0, ..., A_n.
template <typename Code>
class TalagrandBuilder {
 public:
  using Family = std::function<CodeStream<Code>(Natural)>;

  explicit TalagrandBuilder(Family family) : family_(std::move(family)) {}

  Block<Code> next() {
    const Natural n = blocks_.size();
    streams_.push_back(family_(n));
    heads_.emplace_back(std::nullopt);
    const Code s = blocks_.empty() ? Code(0) : blocks_.back().end();
    Code last = s;
    for (Natural i = 0; i <= n; ++i) last = std::max(last, least_at_least(i, s));
    blocks_.push_back(Block<Code>{s, Code(last + 1 - s)});
    return blocks_.back();
  }

  const std::vector<Block<Code>>& blocks() const { return blocks_; }

 private:
  Code least_at_least(Natural i, const Code& s) {
    auto& head = heads_[i];
    while (!head || *head < s) {
      auto v = streams_[i]();
      if (!v) fail(ErrorKind::Budget, "talagrand_build: A_" + std::to_string(i) + " exhausted its budget");
      if (head && *v <= *head) fail(ErrorKind::Precondition, "talagrand_build: A_" + std::to_string(i) + " is not increasing");
      head = *v;
    }
    return *head;
  }

  Family family_;
  std::vector<CodeStream<Code>> streams_;
  std::vector<std::optional<Code>> heads_;
  std::vector<Block<Code>> blocks_;
};

/// Which of the given consecutive blocks a fresh increasing stream meets.
template <typename Code>
std::vector<bool> blocks_met(const std::vector<Block<Code>>& blocks, CodeStream<Code> stream) {
  std::vector<bool> met(blocks.size(), false);
  if (blocks.empty()) return met;
  const Code end = blocks.back().end();
  while (auto v = stream()) {
    if (!(*v < end)) break;
    auto it = std::upper_bound(blocks.begin(), blocks.end(), *v,
                               [](const Code& x, const Block<Code>& b) { return x < b.start; });
    if (it != blocks.begin()) met[static_cast<std::size_t>(std::prev(it) - blocks.begin())] = true;
  }
  return met;
}

/// Finite-depth nwd positivity: the union of the named blocks meets every cone of length ≤ depth.
template <typename Code>
bool nwd_dense_to_depth(const std::vector<Block<Code>>& blocks, const std::vector<Natural>& indices, Natural depth) {
  if (indices.empty()) return false;
  for (Natural u = 0; u < (Natural{2} << depth) - 1; ++u) {
    const std::string cone = qstring_decode(u);
    bool met = false;
    for (Natural i : indices) {
      const auto& b = blocks.at(static_cast<std::size_t>(i));
      if (code_interval_meets_cone(BigNat(b.start), BigNat(b.end()), cone)) {
        met = true;
        break;
      }
    }
    if (!met) return false;
  }
  return true;
}

/// Blocks 0..count-1 of an IntervalPartition.
inline std::vector<Block<>> partition_prefix(const IntervalPartition& P, Natural count) {
  std::vector<Block<>> out;
  for (Natural n = 0; n < count; ++n) out.push_back(P.block(n));
  return out;
}

/// Depth-indexed Talagrand check: does the union of the named blocks pass the positivity test?
template <typename Code>
bool talagrand_check(const std::function<bool(const std::vector<Block<Code>>&, const std::vector<Natural>&, Natural)>& positive,
                     const std::vector<Block<Code>>& blocks, const std::vector<Natural>& indices, Natural depth) {
  return positive(blocks, indices, depth);
}

}  // namespace idealis
