#pragma once

// Shared test-only helpers: deterministic random presentations and brute-force oracles.

#include <functional>
#include <random>
#include <vector>

#include "idealis/sets.hpp"

namespace idealis::testing {

using Rng = std::mt19937_64;

inline Natural uniform(Rng& rng, Natural lo, Natural hi) {
  return std::uniform_int_distribution<Natural>(lo, hi)(rng);
}

inline FunctionSpec random_function(Rng& rng, Natural max_slope = 1) {
  FunctionSpec f;
  f.cutoff = uniform(rng, 0, 2);
  for (Natural i = 0; i < f.cutoff; ++i) f.table.push_back(uniform(rng, 0, 4));
  f.a = uniform(rng, 0, max_slope);
  f.b = uniform(rng, 0, 3);
  return f;
}

inline GeneratorName random_name(Rng& rng, std::size_t max_prefix = 2, std::size_t max_period = 3) {
  auto word = [&](std::size_t len) {
    std::string w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(uniform(rng, 0, 1) ? '1' : '0');
    return w;
  };
  return GeneratorName(word(uniform(rng, 0, max_prefix)), word(uniform(rng, 1, max_period)));
}

/// A random leaf of the planar presentation class, with parameters small enough that every
/// feature of the presented set shows up below Cantor code 2^10: slopes ≤ 1, intercepts ≤ 3,
/// column periods ≤ 2 and explicit points below code 16.
inline SymbolicSet random_planar_leaf(Rng& rng, GroundSet g) {
  switch (uniform(rng, 0, 6)) {
    case 0: return SymbolicSet::column(g, uniform(rng, 0, 4));
    case 1: return SymbolicSet::graph(g, random_function(rng));
    case 2: return SymbolicSet::below_graph(g, random_function(rng));
    case 3: return SymbolicSet::column_set(g, random_name(rng, 2, 2));
    case 4: {
      std::vector<Natural> codes;
      for (Natural i = uniform(rng, 0, 4); i > 0; --i) codes.push_back(uniform(rng, 0, 15));
      return SymbolicSet::finite(g, codes);
    }
    case 5: {
      std::vector<Natural> codes;
      for (Natural i = uniform(rng, 0, 3); i > 0; --i) codes.push_back(uniform(rng, 0, 15));
      return SymbolicSet::cofinite(g, codes);
    }
    default: return SymbolicSet::graph(g, FunctionSpec::identity());
  }
}

/// Random boolean tree with at most `leaves` leaves.
inline SymbolicSet random_planar_set(Rng& rng, GroundSet g, std::size_t leaves = 6) {
  if (leaves <= 1 || uniform(rng, 0, 3) == 0) return random_planar_leaf(rng, g);
  const std::size_t left = 1 + static_cast<std::size_t>(uniform(rng, 0, leaves - 2));
  auto l = random_planar_set(rng, g, left);
  auto r = random_planar_set(rng, g, leaves - left);
  switch (uniform(rng, 0, 2)) {
    case 0: return l | r;
    case 1: return l & r;
    default: return l - r;
  }
}

/// A random subset of ω read through the blocks of P, mixed with explicit points.
inline SymbolicSet random_block_set(Rng& rng, const IntervalPartition& p, std::size_t leaves = 6) {
  const GroundSet omega{GroundKind::Omega}, plane{GroundKind::OmegaSquared};
  auto leaf = [&]() {
    switch (uniform(rng, 0, 4)) {
      case 0: {
        std::vector<Natural> codes;
        for (Natural i = uniform(rng, 0, 4); i > 0; --i) codes.push_back(uniform(rng, 0, 63));
        return SymbolicSet::finite(omega, codes);
      }
      case 1: {
        std::vector<Natural> codes;
        for (Natural i = uniform(rng, 0, 3); i > 0; --i) codes.push_back(uniform(rng, 0, 63));
        return SymbolicSet::cofinite(omega, codes);
      }
      default: return SymbolicSet::in_blocks(p, random_planar_set(rng, plane, 3));
    }
  };
  std::function<SymbolicSet(std::size_t)> build = [&](std::size_t n) -> SymbolicSet {
    if (n <= 1 || uniform(rng, 0, 3) == 0) return leaf();
    const std::size_t left = 1 + static_cast<std::size_t>(uniform(rng, 0, n - 2));
    auto l = build(left);
    auto r = build(n - left);
    switch (uniform(rng, 0, 2)) {
      case 0: return l | r;
      case 1: return l & r;
      default: return l - r;
    }
  };
  return build(leaves);
}

/// Membership scan, the oracle for truncate.
inline std::vector<Natural> scan(const SymbolicSet& s, Natural N) {
  std::vector<Natural> out;
  for (Natural k = 0; k < N; ++k)
    if (symbolic_member(s, k)) out.push_back(k);
  return out;
}

}  // namespace idealis::testing
