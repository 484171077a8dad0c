#pragma once

#include <vector>

#include "idealis/function_spec.hpp"

namespace idealis {

/// Half-open interval [start, start + length) of codes.
template <typename Code = Natural>
struct Block {
  Code start{};
  Code length{};
  Code end() const { return start + length; }
  bool contains(const Code& k) const { return start <= k && k < start + length; }
  bool operator==(const Block&) const = default;
};

/// Partition of ω into consecutive finite intervals P_0, P_1, ... with |P_n| given by a rule.
class IntervalPartition {
 public:
  IntervalPartition() : IntervalPartition(FunctionSpec::constant(1), false) {}

  IntervalPartition(FunctionSpec lengths, bool increasing) : lengths_(std::move(lengths)), increasing_(increasing) {
    lengths_.validate();
    for (Natural v : lengths_.table)
      if (v == 0) fail(ErrorKind::Presentation, "partition: block length 0");
    if (lengths_(lengths_.cutoff) == 0 || (lengths_.a == 0 && lengths_.b == 0))
      fail(ErrorKind::Presentation, "partition: block length 0 in the affine tail");
    if (increasing_ && !strictly_increasing())
      fail(ErrorKind::Presentation, "partition flagged increasing but |P_n| < |P_{n+1}| fails");
    prefix_.reserve(lengths_.table.size() + 1);
    prefix_.push_back(0);
    for (Natural v : lengths_.table) prefix_.push_back(checked_add(prefix_.back(), v));
  }

  /// Partition with |P_n| = n + 1: blocks {0}, {1,2}, {3,4,5}, ...
  static IntervalPartition triangular() { return {FunctionSpec::affine(1, 1), true}; }

  const FunctionSpec& lengths() const { return lengths_; }
  bool increasing() const { return increasing_; }

  Natural length(Natural n) const { return lengths_(n); }

  Natural start(Natural n) const {
    const Natural c = lengths_.cutoff;
    if (n <= c) return prefix_[static_cast<std::size_t>(n)];
    using U = unsigned __int128;
    const U nn = n, cc = c;
    const U sum_i = nn * (nn - 1) / 2 - cc * (cc - 1) / 2;  // sum of i for c <= i < n
    const U total = U(prefix_.back()) + U(lengths_.a) * sum_i + U(lengths_.b) * (nn - cc);
    if (total > U(kInfinity)) fail(ErrorKind::Presentation, "partition: block start overflows 64 bits");
    return static_cast<Natural>(total);
  }

  Block<> block(Natural n) const { return {start(n), length(n)}; }

  /// Index of the block containing k.
  Natural block_of(Natural k) const {
    Natural lo = 0, hi = k;  // start(n) >= n, so the answer is <= k
    while (lo < hi) {
      Natural mid = lo + (hi - lo + 1) / 2;
      if (start_fits(mid, k))
        lo = mid;
      else
        hi = mid - 1;
    }
    return lo;
  }

  bool operator==(const IntervalPartition& o) const {
    return lengths_ == o.lengths_ && increasing_ == o.increasing_;
  }

 private:
  bool start_fits(Natural n, Natural k) const {
    try {
      return start(n) <= k;
    } catch (const Error&) {
      return false;
    }
  }

  bool strictly_increasing() const {
    const auto& t = lengths_.table;
    for (std::size_t i = 1; i < t.size(); ++i)
      if (t[i - 1] >= t[i]) return false;
    if (lengths_.a == 0) return false;
    if (!t.empty() && t.back() >= lengths_(lengths_.cutoff)) return false;
    return true;
  }

  FunctionSpec lengths_;
  bool increasing_ = false;
  std::vector<Natural> prefix_;
};

}  // namespace idealis
