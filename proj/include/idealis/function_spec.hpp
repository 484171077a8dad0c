#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "idealis/core.hpp"

namespace idealis {

/// A total function on ω: table lookup below `cutoff`, then a·n + b.
struct FunctionSpec {
  std::vector<Natural> table;
  Natural a = 0;
  Natural b = 0;
  Natural cutoff = 0;

  static FunctionSpec affine(Natural a, Natural b) { return FunctionSpec{{}, a, b, 0}; }
  static FunctionSpec constant(Natural c) { return affine(0, c); }
  static FunctionSpec identity() { return affine(1, 0); }

  void validate() const {
    if (table.size() != cutoff)
      fail(ErrorKind::Presentation, "FunctionSpec: table length " + std::to_string(table.size()) +
                                        " does not match cutoff " + std::to_string(cutoff));
  }

  Natural operator()(Natural n) const {
    if (n < cutoff) return table[static_cast<std::size_t>(n)];
    return checked_add(checked_mul(a, n), b);
  }

  /// Largest table value, or 0.
  Natural table_max() const {
    return table.empty() ? 0 : *std::max_element(table.begin(), table.end());
  }

  bool operator==(const FunctionSpec&) const = default;
};

/// Least c such that f(n) <= g(n) for every n >= c, or nullopt when g does not eventually dominate f.
inline std::optional<Natural> domination_cutoff(const FunctionSpec& f, const FunctionSpec& g) {
  const Natural tail = std::max(f.cutoff, g.cutoff);
  Natural from = tail;
  if (f.a > g.a) return std::nullopt;
  if (f.a == g.a) {
    if (f.b > g.b) return std::nullopt;
  } else {
    // a_f n + b_f <= a_g n + b_g  <=>  n >= (b_f - b_g) / (a_g - a_f)
    if (f.b > g.b) {
      const Natural d = g.a - f.a;
      from = std::max(from, (f.b - g.b + d - 1) / d);
    }
  }
  // scan downward through the region where either function may still use its table
  Natural c = from;
  while (c > 0 && f(c - 1) <= g(c - 1)) --c;
  return c;
}

}  // namespace idealis
