#pragma once

// Column (or block) sections of presented sets, and their eventual behaviour.
//
// For a planar set S the section at column n is {m : (n, m) ∈ S}; for a subset of ω read
// through a partition P it is the trace {j : start(P_n) + j ∈ S}. On the presentation class
// every section is a finite union of intervals whose endpoints are affine in n once n passes a
// computable threshold, so on each residue class modulo the period of the ColumnSet leaves the
// section size is either always infinite or exactly affine. That is what the deciders use.

#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "idealis/sets.hpp"

namespace idealis {

/// Finite union of half-open intervals [lo, hi) of naturals, hi = kInfinity for unbounded.
class IntervalSet {
 public:
  using Interval = std::pair<Natural, Natural>;

  IntervalSet() = default;

  static IntervalSet all() { return range(0, kInfinity); }
  static IntervalSet range(Natural lo, Natural hi) {
    IntervalSet s;
    if (lo < hi) s.iv_.emplace_back(lo, hi);
    return s;
  }
  static IntervalSet point(Natural m) { return range(m, m == kInfinity ? m : m + 1); }
  static IntervalSet points(std::vector<Natural> ms) {
    std::sort(ms.begin(), ms.end());
    IntervalSet s;
    for (Natural m : ms) {
      if (!s.iv_.empty() && s.iv_.back().second >= m) {
        s.iv_.back().second = std::max(s.iv_.back().second, m + 1);
      } else {
        s.iv_.emplace_back(m, m + 1);
      }
    }
    return s;
  }

  const std::vector<Interval>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }
  bool infinite() const { return !iv_.empty() && iv_.back().second == kInfinity; }

  /// Cardinality, kInfinity when unbounded.
  Natural size() const {
    if (infinite()) return kInfinity;
    Natural s = 0;
    for (auto [lo, hi] : iv_) s += hi - lo;
    return s;
  }

  /// Largest element; nullopt when empty, kInfinity when unbounded.
  std::optional<Natural> max() const {
    if (iv_.empty()) return std::nullopt;
    if (infinite()) return kInfinity;
    return iv_.back().second - 1;
  }

  bool contains(Natural m) const {
    auto it = std::upper_bound(iv_.begin(), iv_.end(), m, [](Natural v, const Interval& i) { return v < i.first; });
    if (it == iv_.begin()) return false;
    --it;
    return m < it->second;
  }

  /// i-th least element (0-based); requires i < size().
  Natural nth(Natural i) const {
    for (auto [lo, hi] : iv_) {
      if (hi == kInfinity || i < hi - lo) return lo + i;
      i -= hi - lo;
    }
    fail(ErrorKind::Precondition, "IntervalSet::nth out of range");
  }

  static IntervalSet combine(const IntervalSet& a, const IntervalSet& b, BoolOp op) {
    std::vector<Natural> cuts{0};
    for (const auto* s : {&a, &b})
      for (auto [lo, hi] : s->iv_) {
        cuts.push_back(lo);
        cuts.push_back(hi);
      }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.back() != kInfinity) cuts.push_back(kInfinity);
    IntervalSet out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const bool x = a.contains(cuts[i]), y = b.contains(cuts[i]);
      bool in = false;
      switch (op) {
        case BoolOp::Union: in = x || y; break;
        case BoolOp::Intersection: in = x && y; break;
        case BoolOp::Difference: in = x && !y; break;
      }
      if (!in) continue;
      if (!out.iv_.empty() && out.iv_.back().second == cuts[i])
        out.iv_.back().second = cuts[i + 1];
      else
        out.iv_.emplace_back(cuts[i], cuts[i + 1]);
    }
    return out;
  }

  bool operator==(const IntervalSet&) const = default;

 private:
  std::vector<Interval> iv_;
};

/// Eventual behaviour of a section statistic on one residue class: n ≡ residue (mod modulus), n ≥ from.
struct ResidueTail {
  Natural residue = 0;
  Natural modulus = 1;
  Natural from = 0;
  bool infinite = false;
  bool empty = false;          // sections are empty on this class (max statistic only)
  Natural slope = 0;
  std::int64_t intercept = 0;  // value(n) = slope·n + intercept

  Natural at(Natural n) const {
    if (infinite) return kInfinity;
    return static_cast<Natural>(static_cast<std::int64_t>(slope * n) + intercept);
  }
};

/// Sections of a presented set, indexed by column (planar grounds) or by block of a partition (ω).
class SectionView {
 public:
  /// Planar view; Delta grounds clip column n to [0, n].
  static SectionView planar(const SymbolicSet& s) {
    if (!s.ground().planar()) fail(ErrorKind::Precondition, "planar section view needs an OmegaSquared or Delta set");
    SectionView v(s);
    v.mode_ = Mode::Planar;
    if (s.ground().kind == GroundKind::Delta) v.clip_ = FunctionSpec::affine(1, 1);
    v.scan_bounds(s);
    return v;
  }

  /// Block-trace view of a subset of ω along P; traces live in [0, |P_n|).
  static SectionView blocks(const SymbolicSet& s, const IntervalPartition& p) {
    if (s.ground().kind != GroundKind::Omega) fail(ErrorKind::Precondition, "block section view needs an Omega set");
    SectionView v(s);
    v.mode_ = Mode::Blocks;
    v.partition_ = p;
    v.clip_ = p.lengths();
    v.scan_bounds(s);
    return v;
  }

  IntervalSet section(Natural n) const {
    IntervalSet raw = mode_ == Mode::Planar ? planar_section(set_, n) : block_section(set_, n);
    if (clip_) raw = IntervalSet::combine(raw, IntervalSet::range(0, (*clip_)(n)), BoolOp::Intersection);
    return raw;
  }

  /// Ground code of point m of section n.
  Natural section_code(Natural n, Natural m) const {
    return mode_ == Mode::Planar ? pair_encode(n, m) : checked_add(partition_.start(n), m);
  }

  /// Sizes are affine on residue classes from here on.
  Natural threshold() const { return threshold_; }
  Natural modulus() const { return modulus_; }

  /// Eventual size on every residue class.
  std::vector<ResidueTail> size_tails() const {
    return tails([](const IntervalSet& s) -> std::optional<Natural> { return s.size(); });
  }

  /// Eventual maximum element on every residue class (classes with empty sections flagged).
  std::vector<ResidueTail> max_tails() const {
    return tails([](const IntervalSet& s) { return s.max(); });
  }

 private:
  enum class Mode { Planar, Blocks };

  explicit SectionView(const SymbolicSet& s) : set_(s) {}

  template <typename Stat>
  std::vector<ResidueTail> tails(Stat stat) const {
    std::vector<ResidueTail> out;
    const Natural L = modulus_, N1 = threshold_;
    for (Natural r = 0; r < L; ++r) {
      ResidueTail t;
      t.residue = r;
      t.modulus = L;
      t.from = N1 + ((r + L - N1 % L) % L);
      const Natural n0 = t.from;
      const auto v0 = stat(section(n0)), v1 = stat(section(n0 + L)), v2 = stat(section(n0 + 2 * L));
      if (!v0 || !v1 || !v2) {
        if (v0 || v1 || v2) fail(ErrorKind::UnsupportedPresentation, "section emptiness not stable past threshold");
        t.empty = true;
      } else if (*v0 == kInfinity || *v1 == kInfinity || *v2 == kInfinity) {
        if (*v0 != kInfinity || *v1 != kInfinity || *v2 != kInfinity)
          fail(ErrorKind::UnsupportedPresentation, "section finiteness not stable past threshold");
        t.infinite = true;
      } else {
        const auto d1 = static_cast<std::int64_t>(*v1) - static_cast<std::int64_t>(*v0);
        const auto d2 = static_cast<std::int64_t>(*v2) - static_cast<std::int64_t>(*v1);
        if (d1 != d2 || d1 < 0 || d1 % static_cast<std::int64_t>(L) != 0)
          fail(ErrorKind::UnsupportedPresentation, "section statistic not affine past threshold");
        t.slope = static_cast<Natural>(d1) / L;
        t.intercept = static_cast<std::int64_t>(*v0) - static_cast<std::int64_t>(t.slope * n0);
      }
      out.push_back(t);
    }
    return out;
  }

  IntervalSet planar_section(const SymbolicSet& s, Natural n) const {
    using namespace set_nodes;
    return std::visit(
        [&](const auto& x) -> IntervalSet {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Finite>) {
            return IntervalSet::points(column_points(x.codes, n));
          } else if constexpr (std::is_same_v<T, Cofinite>) {
            return IntervalSet::combine(IntervalSet::all(), IntervalSet::points(column_points(x.excluded, n)),
                                        BoolOp::Difference);
          } else if constexpr (std::is_same_v<T, Column>) {
            return n == x.n ? IntervalSet::all() : IntervalSet{};
          } else if constexpr (std::is_same_v<T, Graph>) {
            return IntervalSet::point(x.f(n));
          } else if constexpr (std::is_same_v<T, BelowGraph>) {
            return IntervalSet::range(0, checked_add(x.f(n), 1));
          } else if constexpr (std::is_same_v<T, ColumnSet>) {
            return x.rows.contains(n) ? IntervalSet::all() : IntervalSet{};
          } else if constexpr (std::is_same_v<T, Binary>) {
            return IntervalSet::combine(planar_section(*x.left, n), planar_section(*x.right, n), x.op);
          } else {
            fail(ErrorKind::UnsupportedPresentation, "node has no column sections");
          }
        },
        s.node());
  }

  IntervalSet block_section(const SymbolicSet& s, Natural n) const {
    using namespace set_nodes;
    const Block<> b = partition_.block(n);
    return std::visit(
        [&](const auto& x) -> IntervalSet {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Finite>) {
            return IntervalSet::points(block_points(x.codes, b));
          } else if constexpr (std::is_same_v<T, Cofinite>) {
            return IntervalSet::combine(IntervalSet::all(), IntervalSet::points(block_points(x.excluded, b)),
                                        BoolOp::Difference);
          } else if constexpr (std::is_same_v<T, InBlocks>) {
            return planar_section(*x.inner, n);
          } else if constexpr (std::is_same_v<T, Periodic>) {
            return x.set.contains(b.start) ? IntervalSet::all() : IntervalSet{};
          } else if constexpr (std::is_same_v<T, Binary>) {
            return IntervalSet::combine(block_section(*x.left, n), block_section(*x.right, n), x.op);
          } else {
            fail(ErrorKind::UnsupportedPresentation, "node has no block traces");
          }
        },
        s.node());
  }

  static std::vector<Natural> column_points(const std::vector<Natural>& codes, Natural n) {
    std::vector<Natural> out;
    for (Natural k : codes) {
      auto [a, m] = pair_decode(k);
      if (a == n) out.push_back(m);
    }
    return out;
  }

  static std::vector<Natural> block_points(const std::vector<Natural>& codes, const Block<>& b) {
    std::vector<Natural> out;
    for (auto it = std::lower_bound(codes.begin(), codes.end(), b.start); it != codes.end() && *it < b.end(); ++it)
      out.push_back(*it - b.start);
    return out;
  }

  void note_function(const FunctionSpec& f) {
    bound_ = std::max(bound_, f.cutoff);
    intercept_ = std::max(intercept_, f.b);
    intercept_ = std::max(intercept_, f.table_max());
  }

  void note_period(Natural prefix, Natural period) {
    bound_ = std::max(bound_, prefix);
    modulus_ = std::lcm(modulus_, period);
    if (modulus_ > (Natural{1} << 16)) fail(ErrorKind::Budget, "section analysis: period lcm exceeds 2^16");
  }

  void scan_bounds(const SymbolicSet& s) {
    if (clip_) note_function(*clip_);
    walk(s, mode_ == Mode::Planar);
    // affine endpoints a·n + b and a'·n + b' + 1 cannot cross beyond the largest intercept + 1
    threshold_ = checked_add(checked_add(bound_, intercept_), 2);
  }

  void walk(const SymbolicSet& s, bool planar) {
    using namespace set_nodes;
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Finite> || std::is_same_v<T, Cofinite>) {
            const auto& codes = [&]() -> const std::vector<Natural>& {
              if constexpr (std::is_same_v<T, Finite>) return x.codes;
              else return x.excluded;
            }();
            for (Natural k : codes) {
              const Natural n = planar ? pair_decode(k).first : partition_.block_of(k);
              bound_ = std::max(bound_, n + 1);
            }
          } else if constexpr (std::is_same_v<T, Column>) {
            if (!planar) fail(ErrorKind::UnsupportedPresentation, "Column outside a planar set");
            bound_ = std::max(bound_, x.n + 1);
          } else if constexpr (std::is_same_v<T, Graph> || std::is_same_v<T, BelowGraph>) {
            if (!planar) fail(ErrorKind::UnsupportedPresentation, "graph outside a planar set");
            note_function(x.f);
          } else if constexpr (std::is_same_v<T, ColumnSet>) {
            if (!planar) fail(ErrorKind::UnsupportedPresentation, "ColumnSet outside a planar set");
            note_period(x.rows.prefix().size(), x.rows.period().size());
          } else if constexpr (std::is_same_v<T, InBlocks>) {
            if (planar || !(x.partition == partition_))
              fail(ErrorKind::UnsupportedPresentation, "InBlocks over a different partition than the ideal's");
            walk(*x.inner, true);
          } else if constexpr (std::is_same_v<T, Periodic>) {
            // a periodic set has block traces only when every block is a singleton
            const auto& L = partition_.lengths();
            if (planar || L.a != 0 || L.b != 1 || L.table_max() > 1)
              fail(ErrorKind::UnsupportedPresentation, "Periodic set mixed with a non-singleton partition");
            note_period(x.set.prefix().size(), x.set.period().size());
          } else if constexpr (std::is_same_v<T, Binary>) {
            walk(*x.left, planar);
            walk(*x.right, planar);
          } else {
            fail(ErrorKind::UnsupportedPresentation, "node outside the column/block presentation class");
          }
        },
        s.node());
  }

  SymbolicSet set_;
  Mode mode_ = Mode::Planar;
  IntervalPartition partition_;
  std::optional<FunctionSpec> clip_;
  Natural bound_ = 0;
  Natural intercept_ = 0;
  Natural modulus_ = 1;
  Natural threshold_ = 0;
};

}  // namespace idealis
