#pragma once

#include <algorithm>
#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "idealis/interval_partition.hpp"

namespace idealis {

/// A poset of finite conditions with indexed dense-set routines.
/// Conditions grow by deltas: extend(r, q) proposes the delta taking q into the r-th dense set,
/// valid_delta checks that applying it yields a valid condition, meets tests the target predicate.
template <typename P>
concept ConditionPoset = requires(const P& poset, const typename P::Condition& q, typename P::Condition& m,
                                  const typename P::Delta& d, Natural r) {
  { poset.bottom() } -> std::same_as<typename P::Condition>;
  { poset.extend(r, q) } -> std::same_as<typename P::Delta>;
  { poset.valid_delta(q, d) } -> std::convertible_to<bool>;
  { poset.apply(m, d) };
  { poset.meets(r, q) } -> std::convertible_to<bool>;
  { poset.describe(r) } -> std::convertible_to<std::string>;
};

/// Routine index applied at each step.
using Schedule = std::function<Natural(Natural)>;

/// A descending chain q_0 ≥ q_1 ≥ ... built by applying the scheduled dense routines.
template <ConditionPoset P>
class GenericRun {
 public:
  using Condition = typename P::Condition;
  using Delta = typename P::Delta;

  GenericRun(P poset, Schedule schedule) : poset_(std::move(poset)), schedule_(std::move(schedule)), q_(poset_.bottom()) {}

  void step() {
    const Natural r = schedule_(steps_);
    Delta d = poset_.extend(r, q_);
    if (!poset_.valid_delta(q_, d))
      fail(ErrorKind::DensityContract, "routine " + poset_.describe(r) + " proposed an invalid extension at step " +
                                           std::to_string(steps_));
    poset_.apply(q_, d);
    if (!poset_.meets(r, q_))
      fail(ErrorKind::DensityContract, "routine " + poset_.describe(r) + " did not reach its dense set at step " +
                                           std::to_string(steps_));
    transcript_.emplace_back(r, std::move(d));
    ++steps_;
  }

  void run(Natural steps) {
    for (Natural i = 0; i < steps; ++i) step();
  }

  const P& poset() const { return poset_; }
  const Condition& condition() const { return q_; }
  Natural steps() const { return steps_; }
  const std::vector<std::pair<Natural, Delta>>& transcript() const { return transcript_; }

 private:
  P poset_;
  Schedule schedule_;
  Condition q_;
  Natural steps_ = 0;
  std::vector<std::pair<Natural, Delta>> transcript_;
};

template <ConditionPoset P>
GenericRun<P> rasiowa_sikorski(P poset, Schedule schedule, Natural steps) {
  GenericRun<P> run(std::move(poset), std::move(schedule));
  run.run(steps);
  return run;
}

/// Rebuild the condition from a transcript, checking every delta.
template <ConditionPoset P>
typename P::Condition replay_transcript(const P& poset, const std::vector<std::pair<Natural, typename P::Delta>>& transcript) {
  auto q = poset.bottom();
  for (std::size_t t = 0; t < transcript.size(); ++t) {
    const auto& [r, d] = transcript[t];
    if (!poset.valid_delta(q, d))
      fail(ErrorKind::DensityContract, "transcript step " + std::to_string(t) + " is not a valid extension");
    poset.apply(q, d);
  }
  return q;
}

/// g maps [src, src + len) onto [dst, dst + len) in order.
struct Segment {
  Natural src = 0;
  Natural dst = 0;
  Natural len = 0;
  bool operator==(const Segment&) const = default;
};

/// Block indices not yet touched, as a frontier plus the gaps left below it.
class FreshBlocks {
 public:
  void touch(Natural n) {
    if (n >= frontier_) {
      for (Natural k = frontier_; k < n; ++k) gaps_.insert(k);
      frontier_ = n + 1;
    } else {
      gaps_.erase(n);
    }
  }
  bool fresh(Natural n) const { return n >= frontier_ || gaps_.contains(n); }
  Natural least_at_least(Natural n) const {
    auto it = gaps_.lower_bound(n);
    return it != gaps_.end() ? *it : std::max(n, frontier_);
  }
  bool operator==(const FreshBlocks&) const = default;

 private:
  Natural frontier_ = 0;
  std::set<Natural> gaps_;
};

/// Finite injective map on ω stored as order-preserving segments, with block bookkeeping for
/// the domain partition P and the image partition R.
class PartialBijection {
 public:
  PartialBijection(IntervalPartition P, IntervalPartition R) : p_(std::move(P)), r_(std::move(R)) {}

  const IntervalPartition& P() const { return p_; }
  const IntervalPartition& R() const { return r_; }

  /// Segments in domain order.
  std::vector<Segment> segments() const {
    std::vector<Segment> out;
    for (const auto& [k, s] : by_src_) out.push_back(s);
    return out;
  }
  Natural size() const { return size_; }

  bool domain_meets(Natural lo, Natural hi) const { return overlaps(by_src_, lo, hi); }
  bool image_meets(Natural lo, Natural hi) const { return overlaps(by_dst_, lo, hi); }

  /// Maximal subintervals of [lo, hi) outside the domain (resp. image).
  std::vector<std::pair<Natural, Natural>> domain_gaps(Natural lo, Natural hi) const { return gaps(by_src_, lo, hi); }
  std::vector<std::pair<Natural, Natural>> image_gaps(Natural lo, Natural hi) const { return gaps(by_dst_, lo, hi); }

  /// Segments meeting [lo, hi), clipped to it and oriented from the domain (resp. image) side.
  std::vector<Segment> domain_pieces(Natural lo, Natural hi) const { return pieces(by_src_, lo, hi); }
  std::vector<Segment> image_pieces(Natural lo, Natural hi) const { return pieces(by_dst_, lo, hi); }

  void add(const Segment& s) {
    if (s.len == 0) return;
    if (domain_meets(s.src, s.src + s.len)) fail(ErrorKind::Precondition, "segment overlaps the domain");
    if (image_meets(s.dst, s.dst + s.len)) fail(ErrorKind::Precondition, "segment overlaps the image (not injective)");
    by_src_.emplace(s.src, s);
    by_dst_.emplace(s.dst, Segment{s.dst, s.src, s.len});
    size_ += s.len;
    for (Natural n = p_.block_of(s.src); n <= p_.block_of(s.src + s.len - 1); ++n) dom_blocks_.touch(n);
    for (Natural m = r_.block_of(s.dst); m <= r_.block_of(s.dst + s.len - 1); ++m) img_blocks_.touch(m);
  }

  std::optional<Natural> operator()(Natural x) const { return lookup(by_src_, x); }
  std::optional<Natural> inverse(Natural y) const { return lookup(by_dst_, y); }

  /// Least P-block index ≥ n whose block the domain does not meet; likewise for R and the image.
  Natural fresh_domain_block(Natural n) const { return dom_blocks_.least_at_least(n); }
  Natural fresh_image_block(Natural m) const { return img_blocks_.least_at_least(m); }

  bool operator==(const PartialBijection& o) const { return by_src_ == o.by_src_ && p_ == o.p_ && r_ == o.r_; }

 private:
  // Segments keyed by their start on one side; the stored Segment is oriented from that side.
  using Side = std::map<Natural, Segment>;

  static bool overlaps(const Side& side, Natural lo, Natural hi) {
    if (lo >= hi) return false;
    auto it = side.lower_bound(hi);
    if (it == side.begin()) return false;
    --it;
    return it->second.src + it->second.len > lo;
  }

  static std::vector<std::pair<Natural, Natural>> gaps(const Side& side, Natural lo, Natural hi) {
    std::vector<std::pair<Natural, Natural>> out;
    auto it = side.upper_bound(lo);
    if (it != side.begin()) --it;
    Natural x = lo;
    for (; it != side.end() && it->first < hi; ++it) {
      const Natural a = it->second.src, b = a + it->second.len;
      if (b <= x) continue;
      if (a > x) out.emplace_back(x, a);
      x = std::max(x, b);
    }
    if (x < hi) out.emplace_back(x, hi);
    return out;
  }

  static std::vector<Segment> pieces(const Side& side, Natural lo, Natural hi) {
    std::vector<Segment> out;
    auto it = side.upper_bound(lo);
    if (it != side.begin()) --it;
    for (; it != side.end() && it->first < hi; ++it) {
      const Segment& s = it->second;
      const Natural a = std::max(lo, s.src), b = std::min(hi, s.src + s.len);
      if (a < b) out.push_back({a, s.dst + (a - s.src), b - a});
    }
    return out;
  }

  static std::optional<Natural> lookup(const Side& side, Natural x) {
    auto it = side.upper_bound(x);
    if (it == side.begin()) return std::nullopt;
    --it;
    const Segment& s = it->second;
    if (x >= s.src + s.len) return std::nullopt;
    return s.dst + (x - s.src);
  }

  IntervalPartition p_, r_;
  Side by_src_, by_dst_;
  Natural size_ = 0;
  FreshBlocks dom_blocks_, img_blocks_;
};

/// Least m with |R_m| ≥ len for an increasing partition.
inline Natural least_block_of_length(const IntervalPartition& R, Natural len) {
  Natural lo = 0, hi = len;  // strictly increasing lengths give |R_m| ≥ m + 1
  while (lo < hi) {
    const Natural mid = lo + (hi - lo) / 2;
    if (R.length(mid) >= len)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

struct IsoViolation {
  enum class Kind { NotAFunction, NotInjective, ImageSpread, PreimageSpread };
  Kind kind;
  Natural index = 0;   // block index (or first offending point for the first two kinds)
  Natural blocks = 0;  // number of blocks met
  bool complete = false;
};

inline std::string to_string(IsoViolation::Kind k) {
  switch (k) {
    case IsoViolation::Kind::NotAFunction: return "not-a-function";
    case IsoViolation::Kind::NotInjective: return "not-injective";
    case IsoViolation::Kind::ImageSpread: return "image-spread";
    case IsoViolation::Kind::PreimageSpread: return "preimage-spread";
  }
  return "?";
}

struct IsoReport {
  std::vector<IsoViolation> violations;
  Natural p_complete = 0;  // P_0..P_{p_complete-1} lie inside the domain
  Natural r_complete = 0;  // R_0..R_{r_complete-1} lie inside the image
  bool clean() const { return violations.empty(); }
};

namespace generic_detail {

struct BlockTally {
  Natural covered = 0;
  std::set<Natural> other;
};

/// Per-block coverage on the side given by `from`, with the blocks of `to` each piece lands in.
inline std::map<Natural, BlockTally> tally(const std::vector<Segment>& segs, const IntervalPartition& from,
                                           const IntervalPartition& to) {
  std::map<Natural, BlockTally> out;
  for (const Segment& s : segs) {
    Natural x = s.src;
    const Natural end = s.src + s.len;
    while (x < end) {
      const Natural n = from.block_of(x);
      const Natural piece_end = std::min(end, from.block(n).end());
      BlockTally& t = out[n];
      t.covered += piece_end - x;
      const Natural y0 = s.dst + (x - s.src), y1 = y0 + (piece_end - x);
      for (Natural m = to.block_of(y0); m <= to.block_of(y1 - 1); ++m) t.other.insert(m);
      x = piece_end;
    }
  }
  return out;
}

inline std::optional<Natural> first_overlap(std::vector<Segment> segs) {
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.src < b.src; });
  for (std::size_t i = 1; i < segs.size(); ++i)
    if (segs[i - 1].src + segs[i - 1].len > segs[i].src) return segs[i].src;
  return std::nullopt;
}

inline void check_side(const std::vector<Segment>& segs, const IntervalPartition& from, const IntervalPartition& to,
                       IsoViolation::Kind kind, std::vector<IsoViolation>& out, Natural& complete_prefix) {
  const auto t = tally(segs, from, to);
  for (const auto& [n, bt] : t) {
    const bool complete = bt.covered >= from.length(n);
    const Natural bound = complete ? 2 : 1;
    if (bt.other.size() > bound) out.push_back({kind, n, static_cast<Natural>(bt.other.size()), complete});
  }
  complete_prefix = 0;
  for (auto it = t.begin(); it != t.end() && it->first == complete_prefix && it->second.covered >= from.length(it->first);
       ++it)
    ++complete_prefix;
}

}  // namespace generic_detail

/// Check a finite map given as segments against the isomorphism clauses: injectivity,
/// cov_R(g[P_n]) ≤ 2 and cov_P(g⁻¹[R_m]) ≤ 2 on completed blocks, ≤ 1 on incomplete ones.
inline IsoReport iso_verify(const std::vector<Segment>& segs, const IntervalPartition& P, const IntervalPartition& R) {
  using namespace generic_detail;
  IsoReport rep;
  std::vector<Segment> nonempty, inverse;
  for (const Segment& s : segs)
    if (s.len > 0) {
      nonempty.push_back(s);
      inverse.push_back({s.dst, s.src, s.len});
    }
  if (auto x = first_overlap(nonempty)) rep.violations.push_back({IsoViolation::Kind::NotAFunction, *x, 0, false});
  if (auto y = first_overlap(inverse)) rep.violations.push_back({IsoViolation::Kind::NotInjective, *y, 0, false});
  check_side(nonempty, P, R, IsoViolation::Kind::ImageSpread, rep.violations, rep.p_complete);
  check_side(inverse, R, P, IsoViolation::Kind::PreimageSpread, rep.violations, rep.r_complete);
  return rep;
}

inline IsoReport iso_verify(const PartialBijection& g) { return iso_verify(g.segments(), g.P(), g.R()); }

/// The poset of the ED_P ≅ ED_R argument. Routine 2n is D_n (P_n enters the domain),
/// routine 2n + 1 is E_n (R_n enters the image). Free choices are least-index.
class IsoPoset {
 public:
  using Condition = PartialBijection;
  using Delta = std::vector<Segment>;

  IsoPoset(IntervalPartition P, IntervalPartition R) : p_(std::move(P)), r_(std::move(R)) {
    if (!p_.increasing() || !r_.increasing()) fail(ErrorKind::Precondition, "edp isomorphism needs increasing partitions");
  }

  Condition bottom() const { return PartialBijection(p_, r_); }

  Delta extend(Natural routine, const Condition& q) const {
    const Natural n = routine / 2;
    const bool forward = routine % 2 == 0;
    const IntervalPartition& from = forward ? p_ : r_;
    const IntervalPartition& to = forward ? r_ : p_;
    const Block<> b = from.block(n);
    const auto holes = forward ? q.domain_gaps(b.start, b.end()) : q.image_gaps(b.start, b.end());
    Delta d;
    if (holes.empty()) return d;
    const Natural least = least_block_of_length(to, b.length);
    const Natural m = forward ? q.fresh_image_block(least) : q.fresh_domain_block(least);
    Natural y = to.start(m);
    for (const auto& [lo, hi] : holes) {
      d.push_back(forward ? Segment{lo, y, hi - lo} : Segment{y, lo, hi - lo});
      y += hi - lo;
    }
    return d;
  }

  bool valid_delta(const Condition& q, const Delta& d) const {
    // new pieces must be disjoint from g and from each other
    std::vector<Segment> fresh;
    for (const Segment& s : d) {
      if (s.len == 0) continue;
      if (q.domain_meets(s.src, s.src + s.len) || q.image_meets(s.dst, s.dst + s.len)) return false;
      fresh.push_back(s);
    }
    std::vector<Segment> inv;
    for (const Segment& s : fresh) inv.push_back({s.dst, s.src, s.len});
    if (generic_detail::first_overlap(fresh) || generic_detail::first_overlap(inv)) return false;
    // recheck the clauses on every block the delta touches, using the segments meeting those blocks
    std::set<Natural> p_blocks, r_blocks;
    for (const Segment& s : fresh) {
      for (Natural n = p_.block_of(s.src); n <= p_.block_of(s.src + s.len - 1); ++n) p_blocks.insert(n);
      for (Natural m = r_.block_of(s.dst); m <= r_.block_of(s.dst + s.len - 1); ++m) r_blocks.insert(m);
    }
    return local_ok(q, fresh, p_blocks, true) && local_ok(q, fresh, r_blocks, false);
  }

  void apply(Condition& q, const Delta& d) const {
    for (const Segment& s : d) q.add(s);
  }

  bool meets(Natural routine, const Condition& q) const {
    const Block<> b = (routine % 2 == 0 ? p_ : r_).block(routine / 2);
    return routine % 2 == 0 ? q.domain_gaps(b.start, b.end()).empty() : q.image_gaps(b.start, b.end()).empty();
  }

  std::string describe(Natural routine) const {
    return std::string(routine % 2 == 0 ? "D_" : "E_") + std::to_string(routine / 2);
  }

  const IntervalPartition& P() const { return p_; }
  const IntervalPartition& R() const { return r_; }

 private:
  bool local_ok(const Condition& q, const std::vector<Segment>& fresh, const std::set<Natural>& blocks, bool p_side) const {
    const IntervalPartition& from = p_side ? p_ : r_;
    const IntervalPartition& to = p_side ? r_ : p_;
    for (Natural n : blocks) {
      const Block<> b = from.block(n);
      std::vector<Segment> segs = p_side ? q.domain_pieces(b.start, b.end()) : q.image_pieces(b.start, b.end());
      for (const Segment& s : fresh) {
        const Segment o = p_side ? s : Segment{s.dst, s.src, s.len};
        const Natural lo = std::max(o.src, b.start), hi = std::min(o.src + o.len, b.end());
        if (lo < hi) segs.push_back({lo, o.dst + (lo - o.src), hi - lo});
      }
      const auto t = generic_detail::tally(segs, from, to);
      const auto& bt = t.at(n);
      if (bt.other.size() > (bt.covered >= b.length ? 2u : 1u)) return false;
    }
    return true;
  }

  IntervalPartition p_, r_;
};

static_assert(ConditionPoset<IsoPoset>);

/// The schedule D_0, E_0, D_1, E_1, ...
inline Natural interleaved(Natural t) { return t; }

/// Lazily grown isomorphism prefix between ED_P and ED_R.
class EdpIsomorphism {
 public:
  EdpIsomorphism(IntervalPartition P, IntervalPartition R) : run_(IsoPoset(std::move(P), std::move(R)), interleaved) {}

  const PartialBijection& advance(Natural steps = 1) {
    run_.run(steps);
    return run_.condition();
  }
  const PartialBijection& map() const { return run_.condition(); }
  const GenericRun<IsoPoset>& run() const { return run_; }

 private:
  GenericRun<IsoPoset> run_;
};

inline PartialBijection edp_isomorphism(IntervalPartition P, IntervalPartition R, Natural steps) {
  EdpIsomorphism iso(std::move(P), std::move(R));
  return iso.advance(steps);
}

}  // namespace idealis
