#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "idealis/partitions.hpp"
#include "idealis/sets.hpp"

namespace idealis {

/// Walks the FK points in code order: Φ counts up in binary over 𝒫(F), then F moves to the next mask.
class FKEnumerator {
 public:
  FKEnumerator() { reset_phi(); }

  const FKPoint& point() const { return point_; }
  Natural code() const { return code_; }

  void advance() {
    ++code_;
    std::size_t r = 0;
    while (r < bits_.size() && bits_[r]) bits_[r++] = false;
    if (r == bits_.size()) {
      ++point_.F;
      if (std::popcount(point_.F) > fk_detail::kMaxCodeFSize)
        fail(ErrorKind::Budget, "FK enumeration beyond representable range");
      reset_phi();
      return;
    }
    bits_[r] = true;
    point_.Phi.clear();
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) point_.Phi.push_back(fk_detail::absolute_subset(point_.F, i));
  }

 private:
  void reset_phi() {
    bits_.assign(std::size_t{1} << std::popcount(point_.F), false);
    point_.Phi.clear();
  }

  FKPoint point_;
  std::vector<bool> bits_;  // relative subsets currently in Φ
  Natural code_ = 0;
};

/// Build a condition from a list of assignments, rejecting two entries that name the same set.
inline EnvCondition make_condition(const std::vector<std::pair<GeneratorName, int>>& assign) {
  EnvCondition p;
  for (const auto& [name, bit] : assign) {
    if (bit != 0 && bit != 1) fail(ErrorKind::Input, "condition value must be 0 or 1");
    if (!p.emplace(name, bit).second)
      fail(ErrorKind::DuplicateName, "condition names " + name.str() + " twice (as the same set)");
  }
  return p;
}

/// Mask of [0, L).
inline std::uint64_t initial_segment(std::size_t L) { return L >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << L) - 1; }

/// `count` distinct points of B^p: F = [0, L) with L large enough that the named sets have
/// pairwise distinct traces, Φ = the traces of the names assigned 0. Later points grow F.
inline std::vector<FKPoint> condition_witness(const EnvCondition& p, Natural count) {
  std::size_t L = 0;
  for (const auto& [name, bit] : p) L = std::max(L, name.word_length());
  auto distinct = [&](std::uint64_t F) {
    std::set<std::uint64_t> seen;
    for (const auto& [name, bit] : p)
      if (!seen.insert(trace(name, F)).second) return false;
    return true;
  };
  while (L <= 64 && !distinct(initial_segment(L))) ++L;
  if (L + count > 65) fail(ErrorKind::Budget, "condition_witness: traces need more than 64 points of ω");
  std::vector<FKPoint> out;
  for (Natural j = 0; j < count; ++j) {
    FKPoint x;
    x.F = initial_segment(L + j);
    for (const auto& [name, bit] : p)
      if (bit == 0) x.Phi.push_back(trace(name, x.F));
    std::sort(x.Phi.begin(), x.Phi.end());
    x.Phi.erase(std::unique(x.Phi.begin(), x.Phi.end()), x.Phi.end());
    out.push_back(std::move(x));
  }
  return out;
}

/// Least-code point of B^p. The least F is the numerically least mask on which every name assigned 0
/// and every name assigned 1 have different traces; Φ is then exactly the 0-traces.
inline FKPoint least_point(const EnvCondition& p) {
  std::vector<std::uint64_t> must_split;
  for (const auto& [x, bx] : p)
    for (const auto& [y, by] : p)
      if (bx == 0 && by == 1) must_split.push_back(x.low_mask() ^ y.low_mask());
  // from the top bit down, keep bit t only if some unsplit pair has no difference below t
  std::uint64_t F = 0;
  for (int t = 63; t >= 0; --t) {
    const std::uint64_t below = (std::uint64_t{1} << t) - 1;
    for (std::uint64_t d : must_split)
      if ((d & F) == 0 && (d & below) == 0) {
        if (((d >> t) & 1) == 0) fail(ErrorKind::Budget, "least_point: names agree on [0, 64)");
        F |= std::uint64_t{1} << t;
        break;
      }
  }
  FKPoint pt;
  pt.F = F;
  for (const auto& [x, bx] : p)
    if (bx == 0) pt.Phi.push_back(trace(x, F));
  std::sort(pt.Phi.begin(), pt.Phi.end());
  pt.Phi.erase(std::unique(pt.Phi.begin(), pt.Phi.end()), pt.Phi.end());
  return pt;
}

inline bool env_empty(const EnvSet& s) { return s.conditions.empty() && s.additions.empty(); }

/// Least-code point of an envelope set.
inline FKPoint least_point(const EnvSet& s, Natural budget = default_budget()) {
  std::optional<FKPoint> best;
  auto offer = [&](const FKPoint& x) {
    if (!best || code_order(x, *best) < 0) best = x;
  };
  for (const auto& c : s.conditions) offer(least_point(c));
  for (const auto& a : s.additions) offer(a);
  if (!best) fail(ErrorKind::Precondition, "least_point: empty envelope set");
  if (s.contains(*best)) return *best;
  // the candidate was deleted: scan on in code order
  FKEnumerator e;
  for (Natural spent = 0; spent < budget; ++spent, e.advance())
    if (code_order(e.point(), *best) > 0 && s.contains(e.point())) return e.point();
  fail(ErrorKind::Budget, "least_point: budget exhausted past deleted points");
}

namespace indep_detail {

/// c ∖ B^q as a disjoint union of conditions (c ∪ q|_{<i} ∪ {q_i flipped}).
inline std::vector<EnvCondition> sharp(const EnvCondition& c, const EnvCondition& q) {
  if (!compatible(c, q)) return {c};
  std::vector<EnvCondition> out;
  EnvCondition prefix = c;
  for (const auto& [name, bit] : q) {
    if (c.contains(name)) continue;
    EnvCondition piece = prefix;
    piece[name] = 1 - bit;
    out.push_back(std::move(piece));
    prefix[name] = bit;
  }
  return out;
}

/// Recompute additions/deletions so that membership follows `keep` on every listed exceptional point.
inline void fix_exceptions(EnvSet& r, const EnvSet& a, const EnvSet& b, const std::function<bool(const FKPoint&)>& keep) {
  std::vector<FKPoint> cand;
  for (const auto* s : {&a, &b}) {
    cand.insert(cand.end(), s->additions.begin(), s->additions.end());
    cand.insert(cand.end(), s->deletions.begin(), s->deletions.end());
  }
  r.additions.clear();
  r.deletions.clear();
  for (const auto& x : cand) {
    bool in_conds = std::any_of(r.conditions.begin(), r.conditions.end(), [&](const auto& c) { return in_condition(c, x); });
    const bool want = keep(x);
    if (want && !in_conds) r.additions.push_back(x);
    if (!want && in_conds) r.deletions.push_back(x);
  }
  normalize(r);
}

}  // namespace indep_detail

inline EnvSet env_intersect(const EnvSet& a, const EnvSet& b) {
  EnvSet r;
  for (const auto& c : a.conditions)
    for (const auto& d : b.conditions)
      if (compatible(c, d)) r.conditions.push_back(merge(c, d));
  indep_detail::fix_exceptions(r, a, b, [&](const FKPoint& x) { return a.contains(x) && b.contains(x); });
  return r;
}

inline EnvSet env_subtract(const EnvSet& a, const EnvSet& b) {
  EnvSet r;
  std::vector<EnvCondition> cur = a.conditions;
  for (const auto& q : b.conditions) {
    std::vector<EnvCondition> next;
    for (const auto& c : cur) {
      auto pieces = indep_detail::sharp(c, q);
      next.insert(next.end(), pieces.begin(), pieces.end());
    }
    cur = std::move(next);
  }
  r.conditions = std::move(cur);
  indep_detail::fix_exceptions(r, a, b, [&](const FKPoint& x) { return a.contains(x) && !b.contains(x); });
  return r;
}

/// Whether D is dense in B^p: every full sign pattern extending p over the names in play is
/// compatible with a disjunct of D. Decided by splitting on one name at a time.
inline bool envelope_dense(const EnvSet& D, const EnvCondition& p) {
  std::vector<EnvCondition> live;
  for (const auto& d : D.conditions)
    if (compatible(d, p)) live.push_back(d);
  if (live.empty()) return false;
  for (const auto& d : live)
    if (extends(p, d)) return true;
  for (const auto& [name, bit] : live.front())
    if (!p.contains(name)) {
      EnvSet sub{std::move(live), {}, {}};
      EnvCondition p0 = p, p1 = p;
      p0[name] = 0;
      p1[name] = 1;
      return envelope_dense(sub, p0) && envelope_dense(sub, p1);
    }
  return false;  // unreachable: live.front() is compatible with p and not below it
}

/// Fresh generator names in canonical order (by word length, then prefix, then period),
/// skipping reserved names. Hands out at most `capacity` names.
class FreshNamePool {
 public:
  explicit FreshNamePool(Natural capacity, std::set<GeneratorName> reserved = {})
      : capacity_(capacity), reserved_(std::move(reserved)) {}

  void reserve(const GeneratorName& x) { reserved_.insert(x); }

  GeneratorName fresh() {
    if (issued_.size() >= capacity_)
      fail(ErrorKind::Pool, "fresh-name pool exhausted after " + std::to_string(capacity_) + " names");
    for (;;) {
      auto x = candidate();
      advance();
      if (x && !reserved_.contains(*x)) {
        reserved_.insert(*x);
        issued_.push_back(*x);
        return *x;
      }
    }
  }

  const std::vector<GeneratorName>& issued() const { return issued_; }

 private:
  static std::string word(std::uint64_t bits, std::size_t len) {
    std::string w(len, '0');
    for (std::size_t i = 0; i < len; ++i)
      if ((bits >> (len - 1 - i)) & 1) w[i] = '1';
    return w;
  }

  std::optional<GeneratorName> candidate() const {
    const std::size_t period_len = total_ - prefix_len_;
    const std::string pre = word(prefix_bits_, prefix_len_), per = word(period_bits_, period_len);
    GeneratorName x(pre, per);
    if (x.prefix() != pre || x.period() != per) return std::nullopt;  // not canonical: seen at a shorter length
    return x;
  }

  void advance() {
    const std::size_t period_len = total_ - prefix_len_;
    if (++period_bits_ < (std::uint64_t{1} << period_len)) return;
    period_bits_ = 0;
    if (++prefix_bits_ < (std::uint64_t{1} << prefix_len_)) return;
    prefix_bits_ = 0;
    if (++prefix_len_ < total_) return;
    prefix_len_ = 0;
    ++total_;
    if (total_ > 32) fail(ErrorKind::Pool, "fresh-name pool: name length limit reached");
  }

  Natural capacity_;
  std::set<GeneratorName> reserved_;
  std::vector<GeneratorName> issued_;
  std::size_t total_ = 1, prefix_len_ = 0;
  std::uint64_t prefix_bits_ = 0, period_bits_ = 0;
};

struct Refinement {
  std::vector<EnvSet> pieces;        // C_n
  std::vector<FKPoint> anchors;      // a_n ∈ C_n
  std::vector<GeneratorName> fresh;  // the generator that split off C_n
  std::vector<int> sides;            // C_n lies on side sides[n] of fresh[n]
};

/// Pairwise disjoint nonempty C_n ⊆ B^{u_n}: a_n is the least point of what is left of B^{u_n},
/// a fresh generator A is chosen, C_n is the residue on the side of A containing a_n, and C_n is
/// removed from every later residue.
inline Refinement disjoint_refinement(const std::vector<EnvCondition>& us, FreshNamePool& pool) {
  for (const auto& u : us)
    for (const auto& [name, bit] : u) pool.reserve(name);
  std::vector<EnvSet> residue;
  for (const auto& u : us) residue.push_back(EnvSet::of(u));
  Refinement out;
  for (std::size_t n = 0; n < us.size(); ++n) {
    if (env_empty(residue[n])) fail(ErrorKind::Precondition, "disjoint_refinement: U_" + std::to_string(n) + " is empty");
    const FKPoint a = least_point(residue[n]);
    const GeneratorName A = pool.fresh();
    const int side = generator_member(A, a) ? 0 : 1;
    EnvSet C = env_intersect(residue[n], EnvSet::of({{A, side}}));
    for (std::size_t m = n + 1; m < us.size(); ++m) residue[m] = env_subtract(residue[m], C);
    out.pieces.push_back(std::move(C));
    out.anchors.push_back(a);
    out.fresh.push_back(A);
    out.sides.push_back(side);
  }
  return out;
}

/// Whether two envelope sets are disjoint as conditions (exceptional points checked directly).
inline bool env_disjoint(const EnvSet& a, const EnvSet& b) {
  for (const auto& c : a.conditions)
    for (const auto& d : b.conditions)
      if (compatible(c, d)) return false;
  for (const auto& x : a.additions)
    if (b.contains(x)) return false;
  for (const auto& x : b.additions)
    if (a.contains(x)) return false;
  return true;
}

struct TightWitness {
  std::vector<FKPoint> points;  // y_n
  Refinement refinement;
};

/// A discrete set meeting every Y_n: refine the p_n into disjoint C_n and pick the least y_n ∈ Y_n ∩ C_n.
inline TightWitness tight_witness(const std::vector<std::pair<EnvSet, EnvCondition>>& dense, FreshNamePool& pool) {
  std::vector<EnvCondition> ps;
  for (std::size_t n = 0; n < dense.size(); ++n) {
    if (!envelope_dense(dense[n].first, dense[n].second))
      fail(ErrorKind::Precondition, "tight_witness: Y_" + std::to_string(n) + " is not dense in its B^p");
    ps.push_back(dense[n].second);
    for (const auto& c : dense[n].first.conditions)
      for (const auto& [name, bit] : c) pool.reserve(name);
  }
  TightWitness out;
  out.refinement = disjoint_refinement(ps, pool);
  for (std::size_t n = 0; n < dense.size(); ++n)
    out.points.push_back(least_point(env_intersect(dense[n].first, out.refinement.pieces[n])));
  return out;
}

// Fused family on ω²

struct FusedMember {
  GeneratorName rows;  // A_α ⊆ ω
  FunctionSpec f;      // f_α
  SymbolicSet set;     // B_α = {(n, m) : n ∈ A_α, f_α(n) < m}
};

inline std::vector<FusedMember> fused_family(const std::vector<GeneratorName>& A, const std::vector<FunctionSpec>& fs) {
  if (A.size() != fs.size()) fail(ErrorKind::Precondition, "fused_family: sets and functions differ in number");
  const GroundSet plane{GroundKind::OmegaSquared};
  std::vector<FusedMember> out;
  for (std::size_t i = 0; i < A.size(); ++i) {
    fs[i].validate();
    out.push_back({A[i], fs[i], SymbolicSet::column_set(plane, A[i]) - SymbolicSet::below_graph(plane, fs[i])});
  }
  return out;
}

/// Sign pattern over members of a fused family: index ↦ 0 (B_α) or 1 (ω² ∖ B_α).
using FusedCondition = std::map<std::size_t, int>;

inline SymbolicSet fused_pattern(const std::vector<FusedMember>& fam, const FusedCondition& q) {
  const GroundSet plane{GroundKind::OmegaSquared};
  SymbolicSet s = SymbolicSet::whole(plane);
  for (const auto& [i, bit] : q) s = s & (bit == 0 ? fam.at(i).set : SymbolicSet::whole(plane) - fam.at(i).set);
  return s;
}

/// The two kinds of nowhere dense targets: a column C_n or a below-graph region D(f).
struct NwdTarget {
  bool column = true;
  Natural n = 0;
  FunctionSpec f;

  static NwdTarget of_column(Natural n) { return {true, n, {}}; }
  static NwdTarget below(FunctionSpec f) { return {false, 0, std::move(f)}; }

  SymbolicSet set() const {
    const GroundSet plane{GroundKind::OmegaSquared};
    return column ? SymbolicSet::column(plane, n) : SymbolicSet::below_graph(plane, f);
  }
};

struct FusedCertificate {
  FusedCondition q;
  std::size_t index = 0;  // the member that kills the target
  Natural bound = 0;      // |B^q ∩ target| ≤ bound
};

namespace indep_detail {

inline Natural column_bound(const FusedMember& m, Natural n) { return m.f(n) + 1; }

// Points of B_β ∩ D(f): n ∈ A_β with f_β(n) < m ≤ f(n); none from the cutoff on.
inline Natural below_bound(const FusedMember& m, const FunctionSpec& f, Natural cutoff) {
  Natural total = 0;
  for (Natural n = 0; n < cutoff; ++n)
    if (m.rows.contains(n) && f(n) > m.f(n)) total = checked_add(total, f(n) - m.f(n));
  return total;
}

}  // namespace indep_detail

/// Strengthen p to q with B^q ∩ target finite, plus an explicit bound.
/// Column C_n: a member with n ∈ A_α, taken on its complement side, leaves the points m ≤ f_α(n).
/// D(f): a member B_β with f ≤ f_β from a cutoff on meets D(f) only below the cutoff.
inline FusedCertificate fused_nwd_certificate(const std::vector<FusedMember>& fam, const NwdTarget& target,
                                              const FusedCondition& p) {
  using namespace indep_detail;
  for (const auto& [i, bit] : p)
    if (i >= fam.size()) fail(ErrorKind::Precondition, "condition names member " + std::to_string(i) + " outside the family");
  if (target.column) {
    for (const auto& [i, bit] : p)
      if (bit == 1 && fam[i].rows.contains(target.n)) return {p, i, column_bound(fam[i], target.n)};
    for (std::size_t i = 0; i < fam.size(); ++i)
      if (!p.contains(i) && fam[i].rows.contains(target.n)) {
        FusedCondition q = p;
        q[i] = 1;
        return {q, i, column_bound(fam[i], target.n)};
      }
    fail(ErrorKind::CertificateUnavailable,
         "no unused member α with " + std::to_string(target.n) + " ∈ A_α for column " + std::to_string(target.n));
  }
  target.f.validate();
  for (const auto& [i, bit] : p)
    if (bit == 0)
      if (auto c = domination_cutoff(target.f, fam[i].f)) return {p, i, below_bound(fam[i], target.f, *c)};
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (!p.contains(i))
      if (auto c = domination_cutoff(target.f, fam[i].f)) {
        FusedCondition q = p;
        q[i] = 0;
        return {q, i, below_bound(fam[i], target.f, *c)};
      }
  fail(ErrorKind::CertificateUnavailable, "no unused member whose function eventually dominates the target");
}

/// Replay: the truncation of B^q ∩ target stays within the bound.
inline bool certificate_holds(const std::vector<FusedMember>& fam, const NwdTarget& target, const FusedCertificate& c,
                              Natural N) {
  return truncate(fused_pattern(fam, c.q) & target.set(), N).size() <= c.bound;
}

/// Calls fn on every sign pattern {i ↦ bit} over at most k of the indices 0..members-1.
inline void for_each_pattern(std::size_t members, std::size_t k, const std::function<void(const std::map<std::size_t, int>&)>& fn) {
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << pick.size()); ++signs) {
      std::map<std::size_t, int> q;
      for (std::size_t j = 0; j < pick.size(); ++j) q[pick[j]] = static_cast<int>((signs >> j) & 1);
      fn(q);
    }
    if (pick.size() == k) return;
    for (std::size_t i = from; i < members; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

/// Patterns of size ≤ k with fewer than `count` points below N.
template <typename PatternSet>
std::vector<std::map<std::size_t, int>> pattern_audit(std::size_t members, std::size_t k, Natural count, Natural N,
                                                      PatternSet pattern_set) {
  std::vector<std::map<std::size_t, int>> failures;
  for_each_pattern(members, k, [&](const std::map<std::size_t, int>& q) {
    if (truncate(pattern_set(q), N).size() < count) failures.push_back(q);
  });
  return failures;
}

/// Independence of ultimately periodic sets, by counting pattern points in [0, N).
inline std::vector<std::map<std::size_t, int>> periodic_independence_audit(const std::vector<GeneratorName>& A, std::size_t k,
                                                                           Natural count, Natural N) {
  return pattern_audit(A.size(), k, count, N, [&](const std::map<std::size_t, int>& q) {
    const GroundSet omega{GroundKind::Omega};
    SymbolicSet s = SymbolicSet::whole(omega);
    for (const auto& [i, bit] : q) {
      auto a = SymbolicSet::periodic(A[i]);
      s = s & (bit == 0 ? a : SymbolicSet::whole(omega) - a);
    }
    return s;
  });
}

inline std::vector<FusedCondition> fused_independence_audit(const std::vector<FusedMember>& fam, std::size_t k,
                                                            Natural count, Natural N) {
  return pattern_audit(fam.size(), k, count, N, [&](const FusedCondition& q) { return fused_pattern(fam, q); });
}

/// Y (an envelope set) listed in code order, grown on demand.
class EnumeratedEnvSet {
 public:
  EnumeratedEnvSet(EnvSet y, Natural budget) : y_(std::move(y)), budget_(budget) {}

  const FKPoint& at(Natural k) {
    while (elements_.size() <= k) {
      Natural spent = 0;
      while (!y_.contains(e_.point())) {
        if (++spent > budget_) fail(ErrorKind::Budget, "enumerating Y: budget exhausted before element " + std::to_string(k));
        e_.advance();
      }
      elements_.push_back(e_.point());
      e_.advance();
    }
    return elements_[static_cast<std::size_t>(k)];
  }

 private:
  EnvSet y_;
  Natural budget_;
  FKEnumerator e_;
  std::vector<FKPoint> elements_;
};

/// Selector of an interval partition of Y (by enumeration index) whose image meets every B^u.
/// Each u yields the partial selector "least element of P_n in B^u"; a serving selector interleaves them.
class DenseSelector {
 public:
  struct Pick {
    Natural block = 0;
    Natural index = 0;  // position in the enumeration of Y
    FKPoint point;
    std::optional<std::size_t> served;
  };

  DenseSelector(EnvSet Y, EnvCondition p, IntervalPartition P, std::vector<EnvCondition> us, Natural spot_check = 64,
                Natural budget = default_budget())
      : y_(std::make_shared<EnumeratedEnvSet>(Y, budget)), p_(std::move(P)), us_(std::move(us)) {
    if (!envelope_dense(Y, p)) fail(ErrorKind::Precondition, "dense_selector: Y is not dense in B^p");
    std::vector<BlockChoice> fs;
    for (std::size_t i = 0; i < us_.size(); ++i) {
      if (!extends(us_[i], p)) fail(ErrorKind::Precondition, "dense_selector: u_" + std::to_string(i) + " does not extend p");
      fs.push_back([y = y_, P = p_, u = us_[i]](Natural n) -> std::optional<Natural> {
        const Block<> b = P.block(n);
        for (Natural k = b.start; k < b.end(); ++k)
          if (in_condition(u, y->at(k))) return k;
        return std::nullopt;
      });
      bool seen = false;
      for (Natural n = 0; n < spot_check && !seen; ++n) seen = fs.back()(n).has_value();
      if (!seen)
        fail(ErrorKind::Budget, "dense_selector: B^u_" + std::to_string(i) + " ∩ Y meets none of the first " +
                                    std::to_string(spot_check) + " blocks");
    }
    serving_.emplace(p_, std::move(fs), 0);
  }

  Pick next() {
    const auto h = serving_->next();
    return {h.block, h.point, y_->at(h.point), h.served};
  }

  const std::vector<Natural>& hits() const { return serving_->hits(); }

 private:
  std::shared_ptr<EnumeratedEnvSet> y_;
  IntervalPartition p_;
  std::vector<EnvCondition> us_;
  std::optional<ServingSelector> serving_;
};

struct IndependenceReport {
  std::vector<std::pair<std::size_t, std::size_t>> duplicates;
  Natural conditions = 0;
  std::vector<EnvCondition> witness_failures;
  std::vector<std::pair<Natural, Natural>> unseparated;  // before patching
  std::vector<std::pair<std::size_t, Natural>> patches;  // (generator index, point code) with membership flipped
  std::vector<std::pair<Natural, Natural>> unseparated_after;
  bool clean() const { return duplicates.empty() && witness_failures.empty() && unseparated_after.empty(); }
};

/// Independence evidence for an FK family: every condition of size ≤ k gets `count` distinct witnesses,
/// and every pair of point codes below `separation_bound` is separated by some generator. Where the raw
/// family fails to separate, a point's membership is flipped in as few generators as possible so that
/// its membership signature differs from every earlier point's.
inline IndependenceReport independence_audit(const std::vector<GeneratorName>& family, std::size_t k, Natural count,
                                             Natural separation_bound, bool patch = true) {
  IndependenceReport rep;
  std::vector<GeneratorName> names;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (family[j] == family[i]) rep.duplicates.emplace_back(j, i);
    if (std::find(names.begin(), names.end(), family[i]) == names.end()) names.push_back(family[i]);
  }
  if (names.size() > 64) fail(ErrorKind::Precondition, "independence_audit handles at most 64 names");
  for_each_pattern(names.size(), k, [&](const std::map<std::size_t, int>& idx) {
    EnvCondition q;
    for (const auto& [i, bit] : idx) q[names[i]] = bit;
    ++rep.conditions;
    std::set<std::uint64_t> Fs;
    bool ok = true;
    for (const auto& x : condition_witness(q, count)) ok = ok && in_condition(q, x) && Fs.insert(x.F).second;
    if (!ok) rep.witness_failures.push_back(q);
  });

  const std::size_t g = names.size();
  std::vector<std::uint64_t> raw, sig;
  for (Natural c = 0; c < separation_bound; ++c) {
    const FKPoint x = fk_decode(c);
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < g; ++i)
      if (generator_member(names[i], x)) s |= std::uint64_t{1} << i;
    raw.push_back(s);
  }
  for (Natural a = 0; a < separation_bound; ++a)
    for (Natural b = a + 1; b < separation_bound; ++b)
      if (raw[a] == raw[b]) rep.unseparated.emplace_back(a, b);
  std::set<std::uint64_t> used;
  for (Natural c = 0; c < separation_bound; ++c) {
    std::uint64_t s = raw[c];
    if (patch && used.contains(s)) {
      // fewest flips first, then the numerically least flip mask
      std::optional<std::uint64_t> best;
      for (int flips = 1; flips <= std::min<int>(3, static_cast<int>(g)) && !best; ++flips)
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << std::min<std::size_t>(g, 20)); ++m)
          if (std::popcount(m) == flips && !used.contains(s ^ m)) {
            best = m;
            break;
          }
      if (best) {
        for (std::size_t i = 0; i < g; ++i)
          if ((*best >> i) & 1) rep.patches.emplace_back(i, c);
        s ^= *best;
      }
    }
    used.insert(s);
    sig.push_back(s);
  }
  for (Natural a = 0; a < separation_bound; ++a)
    for (Natural b = a + 1; b < separation_bound; ++b)
      if (sig[a] == sig[b]) rep.unseparated_after.emplace_back(a, b);
  return rep;
}

}  // namespace idealis
