#pragma once

// Membership deciders for Fin, ED, ED_fin, Fin×Fin, ED_P and nwd, with a brute-force cover oracle.
//
// Characterizations used by decide (each cross-checked against brute_cover_oracle in the tests):
//   ED, ED_fin  S is a member iff all but finitely many column sections have size ≤ some m.
//   Fin×Fin     S is a member iff only finitely many column sections are infinite.
//   ED_P        S is a member iff the block traces |S ∩ P_n| are bounded.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "idealis/qtop.hpp"
#include "idealis/sections.hpp"

namespace idealis {

enum class IdealKind { Fin, ED, EDfin, FinXFin, EDP, NwdQ };

struct IdealId {
  IdealKind kind = IdealKind::Fin;
  std::optional<IntervalPartition> partition;  // EDP only

  static IdealId fin() { return {IdealKind::Fin, std::nullopt}; }
  static IdealId ed() { return {IdealKind::ED, std::nullopt}; }
  static IdealId edfin() { return {IdealKind::EDfin, std::nullopt}; }
  static IdealId finxfin() { return {IdealKind::FinXFin, std::nullopt}; }
  static IdealId nwd() { return {IdealKind::NwdQ, std::nullopt}; }
  static IdealId edp(IntervalPartition p) {
    if (!p.increasing()) fail(ErrorKind::Precondition, "ED_P needs an increasing partition");
    return {IdealKind::EDP, std::move(p)};
  }

  /// Ground set of the ideal; Fin lives on any ground set and reports Omega here.
  GroundSet ground() const {
    switch (kind) {
      case IdealKind::ED:
      case IdealKind::FinXFin: return {GroundKind::OmegaSquared};
      case IdealKind::EDfin: return {GroundKind::Delta};
      case IdealKind::NwdQ: return {GroundKind::QStrings};
      default: return {GroundKind::Omega};
    }
  }

  std::string name() const {
    switch (kind) {
      case IdealKind::Fin: return "Fin";
      case IdealKind::ED: return "ED";
      case IdealKind::EDfin: return "EDfin";
      case IdealKind::FinXFin: return "FinXFin";
      case IdealKind::EDP: return "EDP";
      case IdealKind::NwdQ: return "NwdQ";
    }
    return "?";
  }

  void check_ground(const SymbolicSet& s) const {
    if (kind == IdealKind::Fin) return;
    if (!(s.ground() == ground()))
      fail(ErrorKind::Precondition, name() + " lives on " + to_string(ground().kind) + ", set is on " +
                                        to_string(s.ground().kind));
  }

  bool operator==(const IdealId&) const = default;
};

/// Finite generator cover. Which fields are used depends on the ideal:
/// ED/ED_fin: columns + `graphs` graphs (graph i picks the i-th least point of a residual section);
/// Fin×Fin: columns + D(below); ED_P: `selectors` selectors; Fin: the listed codes.
struct CoverEvidence {
  std::vector<Natural> columns;
  Natural graphs = 0;
  std::optional<FunctionSpec> below;
  Natural selectors = 0;
  std::vector<Natural> finite;

  Natural size(IdealKind k) const {
    switch (k) {
      case IdealKind::ED:
      case IdealKind::EDfin: return columns.size() + graphs;
      case IdealKind::FinXFin: return columns.size() + (below ? 1 : 0);
      case IdealKind::EDP: return selectors;
      case IdealKind::Fin: return finite.size();
      case IdealKind::NwdQ: return 0;
    }
    return 0;
  }
};

/// Symbolic proof of positivity: on n ≡ residue (mod modulus), n ≥ from, the statistic is infinite
/// or grows like slope·n + intercept with slope ≥ 1. For Fin, a single infinite column may be named.
struct UnboundedWitness {
  ResidueTail tail;
  std::optional<Natural> column;
  std::optional<std::string> dense_cone;  // NwdQ
};

enum class VerdictStatus { Member, Positive, Unknown };

inline std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Member: return "Member";
    case VerdictStatus::Positive: return "Positive";
    case VerdictStatus::Unknown: return "Unknown";
  }
  return "?";
}

struct Profile {
  std::string unit;              // "column", "block", "cone", "total"
  std::vector<Natural> values;   // kInfinity marks an infinite section
};

struct MembershipVerdict {
  VerdictStatus status = VerdictStatus::Unknown;
  std::optional<CoverEvidence> cover;
  std::optional<UnboundedWitness> witness;
  Profile profile;
  Natural depth = 0;  // Unknown only

  bool member() const { return status == VerdictStatus::Member; }
  bool positive() const { return status == VerdictStatus::Positive; }
};

namespace ideal_detail {

inline constexpr Natural kProfileLength = 32;

inline Profile section_profile(const SectionView& v, Natural count, const char* unit) {
  Profile p{unit, {}};
  for (Natural n = 0; n < count; ++n) p.values.push_back(v.section(n).size());
  return p;
}

inline std::optional<ResidueTail> first_unbounded(const std::vector<ResidueTail>& tails, bool infinite_only) {
  for (const auto& t : tails)
    if (t.infinite || (!infinite_only && t.slope > 0)) return t;
  return std::nullopt;
}

inline MembershipVerdict positive(UnboundedWitness w, Profile p) {
  MembershipVerdict v;
  v.status = VerdictStatus::Positive;
  v.witness = std::move(w);
  v.profile = std::move(p);
  return v;
}

inline MembershipVerdict member(CoverEvidence c, Profile p) {
  MembershipVerdict v;
  v.status = VerdictStatus::Member;
  v.cover = std::move(c);
  v.profile = std::move(p);
  return v;
}

inline MembershipVerdict decide_ed(const SectionView& v, const char* unit) {
  const Natural N1 = v.threshold();
  Profile prof = section_profile(v, std::max(N1, kProfileLength), unit);
  const auto tails = v.size_tails();
  if (auto t = first_unbounded(tails, false)) return positive({*t, std::nullopt, std::nullopt}, prof);
  Natural tail_max = 0;
  for (const auto& t : tails) tail_max = std::max<Natural>(tail_max, t.at(t.from));
  std::vector<Natural> early(prof.values.begin(), prof.values.begin() + static_cast<std::ptrdiff_t>(N1));
  Natural top = tail_max;
  for (Natural s : early)
    if (s != kInfinity) top = std::max(top, s);
  // least g ≥ tail_max minimizing (#early sections above g) + g; ties go to the least g
  Natural best_g = tail_max, best = kInfinity;
  for (Natural g = tail_max; g <= top; ++g) {
    Natural c = 0;
    for (Natural s : early) c += s > g ? 1 : 0;
    if (c + g < best) {
      best = c + g;
      best_g = g;
    }
  }
  CoverEvidence cov;
  for (Natural n = 0; n < N1; ++n)
    if (early[static_cast<std::size_t>(n)] > best_g) cov.columns.push_back(n);
  cov.graphs = best_g;
  return member(std::move(cov), std::move(prof));
}

inline MembershipVerdict decide_finxfin(const SectionView& v) {
  const Natural N1 = v.threshold();
  Profile prof = section_profile(v, std::max(N1, kProfileLength), "column");
  const auto tails = v.size_tails();
  if (auto t = first_unbounded(tails, true)) return positive({*t, std::nullopt, std::nullopt}, prof);
  CoverEvidence cov;
  FunctionSpec f;
  f.cutoff = N1;
  bool any = false;
  for (Natural n = 0; n < N1; ++n) {
    const IntervalSet s = v.section(n);
    if (s.infinite()) {
      cov.columns.push_back(n);
      f.table.push_back(0);
    } else {
      const auto m = s.max();
      f.table.push_back(m.value_or(0));
      any = any || m.has_value();
    }
  }
  std::int64_t b = 0;
  for (const auto& t : v.max_tails()) {
    if (t.empty) continue;
    any = true;
    f.a = std::max(f.a, t.slope);
    b = std::max(b, t.intercept);
  }
  f.b = static_cast<Natural>(b);
  if (any) cov.below = f;
  return member(std::move(cov), std::move(prof));
}

inline MembershipVerdict decide_edp(const SectionView& v) {
  const Natural N1 = v.threshold();
  Profile prof = section_profile(v, std::max(N1, kProfileLength), "block");
  const auto tails = v.size_tails();
  if (auto t = first_unbounded(tails, false)) return positive({*t, std::nullopt, std::nullopt}, prof);
  Natural k = 0;
  for (Natural n = 0; n < N1; ++n) k = std::max(k, prof.values[static_cast<std::size_t>(n)]);
  for (const auto& t : tails) k = std::max<Natural>(k, t.at(t.from));
  CoverEvidence cov;
  cov.selectors = k;
  return member(std::move(cov), std::move(prof));
}

inline bool has_in_blocks(const SymbolicSet& s, std::optional<IntervalPartition>& p) {
  using namespace set_nodes;
  if (auto* ib = s.as<InBlocks>()) {
    if (p && !(*p == ib->partition))
      fail(ErrorKind::UnsupportedPresentation, "Fin: InBlocks leaves over different partitions");
    p = ib->partition;
    return true;
  }
  if (auto* b = s.as<Binary>()) {
    const bool l = has_in_blocks(*b->left, p);
    const bool r = has_in_blocks(*b->right, p);
    return l || r;
  }
  return false;
}

inline MembershipVerdict decide_fin(const SymbolicSet& s) {
  using namespace set_nodes;
  const GroundKind g = s.ground().kind;
  if (g == GroundKind::QStrings) {
    const DFA d = regular_of(s);
    Profile prof{"total", {}};
    if (!d.language_finite()) return positive({{}, std::nullopt, std::nullopt}, prof);
    CoverEvidence cov;
    // a finite regular language has no word longer than its state count
    cov.finite = truncate(s, (Natural{1} << (d.states + 1)) - 1);
    prof.values.push_back(cov.finite.size());
    return member(std::move(cov), std::move(prof));
  }
  if (g == GroundKind::FKPairs) {
    const Env* e = s.as<Env>();
    const Finite* f = s.as<Finite>();
    if (!e && !f) fail(ErrorKind::UnsupportedPresentation, "Fin on FKPairs handles single envelope or finite sets");
    if (e && !e->set.conditions.empty()) return positive({{}, std::nullopt, std::nullopt}, {"total", {}});
    CoverEvidence cov;
    if (f) cov.finite = f->codes;
    else
      for (const auto& p : e->set.additions) cov.finite.push_back(static_cast<Natural>(fk_encode(p)));
    std::sort(cov.finite.begin(), cov.finite.end());
    return member(std::move(cov), {"total", {static_cast<Natural>(cov.finite.size())}});
  }
  SectionView v = [&] {
    if (s.ground().planar()) return SectionView::planar(s);
    std::optional<IntervalPartition> p;
    has_in_blocks(s, p);
    return SectionView::blocks(s, p ? *p : IntervalPartition(FunctionSpec::constant(1), false));
  }();
  const Natural N1 = v.threshold();
  Profile prof = section_profile(v, std::max(N1, kProfileLength), s.ground().planar() ? "column" : "block");
  for (const auto& t : v.size_tails())
    if (t.infinite || t.at(t.from) > 0) return positive({t, std::nullopt, std::nullopt}, prof);
  CoverEvidence cov;
  for (Natural n = 0; n < N1; ++n) {
    const IntervalSet sec = v.section(n);
    if (sec.infinite()) {
      UnboundedWitness w;
      w.tail.infinite = true;
      w.column = n;
      return positive(w, prof);
    }
    for (auto [lo, hi] : sec.intervals())
      for (Natural m = lo; m < hi; ++m) {
        if (s.ground().planar()) cov.finite.push_back(pair_encode(n, m));
        else cov.finite.push_back(v.section_code(n, m));
      }
  }
  std::sort(cov.finite.begin(), cov.finite.end());
  return member(std::move(cov), std::move(prof));
}

}  // namespace ideal_detail

/// Exact membership decision on the presentation class. Out-of-class presentations raise
/// ErrorKind::UnsupportedPresentation rather than returning a verdict.
inline MembershipVerdict decide(const IdealId& I, const SymbolicSet& s) {
  I.check_ground(s);
  switch (I.kind) {
    case IdealKind::Fin: return ideal_detail::decide_fin(s);
    case IdealKind::ED: return ideal_detail::decide_ed(SectionView::planar(s), "column");
    case IdealKind::EDfin: return ideal_detail::decide_ed(SectionView::planar(s), "column");
    case IdealKind::FinXFin: return ideal_detail::decide_finxfin(SectionView::planar(s));
    case IdealKind::EDP: return ideal_detail::decide_edp(SectionView::blocks(s, *I.partition));
    case IdealKind::NwdQ: {
      NwdAnalysis an(regular_of(s));
      MembershipVerdict v;
      v.profile.unit = "cone";
      if (an.nowhere_dense()) {
        v.status = VerdictStatus::Member;
        v.cover = CoverEvidence{};
      } else {
        v.status = VerdictStatus::Positive;
        v.witness = UnboundedWitness{{}, std::nullopt, an.least_dense_cone()};
      }
      return v;
    }
  }
  fail(ErrorKind::Precondition, "unknown ideal");
}

/// Height allowance for D(f) generators in the Fin×Fin oracle: f(n) ≤ n + ⌊√N⌋/8.
/// On a truncation every set is below some D(f), so the oracle has to cap f to say anything.
inline Natural finxfin_oracle_height(Natural N) {
  return static_cast<Natural>(std::sqrt(static_cast<double>(N))) / 8;
}

/// Can truncate(S, N) be covered by at most k generators of the ideal, restricted to the truncation?
inline bool brute_cover_oracle(const IdealId& I, const SymbolicSet& s, Natural N, Natural k) {
  I.check_ground(s);
  if (I.kind == IdealKind::NwdQ) fail(ErrorKind::Precondition, "the nwd ideal uses cone_search_oracle");
  if (N > default_budget()) fail(ErrorKind::Budget, "cover oracle: N exceeds the enumeration budget");
  const auto pts = truncate(s, N);
  switch (I.kind) {
    case IdealKind::Fin: return pts.size() <= k;
    case IdealKind::ED:
    case IdealKind::EDfin: {
      // graphs are arbitrary on a truncation, so g graphs absorb g points of every column;
      // the rest must be whole columns
      std::map<Natural, Natural> per_column;
      for (Natural code : pts) ++per_column[pair_decode(code).first];
      for (Natural g = 0; g <= k; ++g) {
        Natural c = 0;
        for (auto [n, cnt] : per_column) c += cnt > g ? 1 : 0;
        if (c + g <= k) return true;
      }
      return false;
    }
    case IdealKind::FinXFin: {
      const Natural h = finxfin_oracle_height(N);
      std::set<Natural> nonempty, tall;
      for (Natural code : pts) {
        auto [n, m] = pair_decode(code);
        nonempty.insert(n);
        if (m > n + h) tall.insert(n);
      }
      // a union of D(f)'s is one D(max f); either use one or none
      return nonempty.size() <= k || (k >= 1 && tall.size() + 1 <= k);
    }
    case IdealKind::EDP: {
      std::map<Natural, Natural> per_block;
      for (Natural code : pts) ++per_block[I.partition->block_of(code)];
      Natural top = 0;
      for (auto [b, cnt] : per_block) top = std::max(top, cnt);
      return top <= k;
    }
    case IdealKind::NwdQ: break;
  }
  return false;
}

/// Replays cover evidence against truncate(S, N): every point must be covered.
inline bool replay_cover(const IdealId& I, const SymbolicSet& s, const CoverEvidence& c, Natural N) {
  const auto pts = truncate(s, N);
  switch (I.kind) {
    case IdealKind::Fin:
      return std::includes(c.finite.begin(), c.finite.end(), pts.begin(), pts.end());
    case IdealKind::ED:
    case IdealKind::EDfin: {
      std::map<Natural, Natural> residual;
      for (Natural code : pts) {
        const Natural n = pair_decode(code).first;
        if (!std::binary_search(c.columns.begin(), c.columns.end(), n)) ++residual[n];
      }
      for (auto [n, cnt] : residual)
        if (cnt > c.graphs) return false;
      return true;
    }
    case IdealKind::FinXFin:
      for (Natural code : pts) {
        auto [n, m] = pair_decode(code);
        if (std::binary_search(c.columns.begin(), c.columns.end(), n)) continue;
        if (!c.below || m > (*c.below)(n)) return false;
      }
      return true;
    case IdealKind::EDP: {
      std::map<Natural, Natural> per_block;
      for (Natural code : pts)
        if (++per_block[I.partition->block_of(code)] > c.selectors) return false;
      return true;
    }
    case IdealKind::NwdQ: return true;
  }
  return false;
}

/// The i-th graph of an ED cover on a truncation: column n ↦ i-th least residual point, when present.
inline std::vector<std::pair<Natural, Natural>> cover_graph(const CoverEvidence& c, const SymbolicSet& s, Natural i,
                                                            Natural N) {
  std::map<Natural, std::vector<Natural>> residual;
  for (Natural code : truncate(s, N)) {
    auto [n, m] = pair_decode(code);
    if (!std::binary_search(c.columns.begin(), c.columns.end(), n)) residual[n].push_back(m);
  }
  std::vector<std::pair<Natural, Natural>> out;
  for (auto& [n, ms] : residual)
    if (i < ms.size()) out.emplace_back(n, ms[static_cast<std::size_t>(i)]);
  return out;
}

/// Per-column (ED, ED_fin, Fin×Fin), per-block (ED_P) or per-cone (nwd) counts for the first N indices.
/// Infinite sections read kInfinity.
inline Profile positivity_profile(const IdealId& I, const SymbolicSet& s, Natural N) {
  I.check_ground(s);
  switch (I.kind) {
    case IdealKind::ED:
    case IdealKind::EDfin:
    case IdealKind::FinXFin: return ideal_detail::section_profile(SectionView::planar(s), N, "column");
    case IdealKind::EDP: return ideal_detail::section_profile(SectionView::blocks(s, *I.partition), N, "block");
    case IdealKind::Fin: return {"total", {static_cast<Natural>(truncate(s, N).size())}};
    case IdealKind::NwdQ: {
      // points of code < N inside each cone C_u, u of code < N
      const DFA d = regular_of(s);
      std::vector<std::string> pts;
      for (Natural k = 0; k < N; ++k) {
        std::string w = qstring_decode(k);
        if (d.accepts(w)) pts.push_back(std::move(w));
      }
      Profile p{"cone", {}};
      for (Natural u = 0; u < N; ++u) {
        const std::string cone = qstring_decode(u);
        Natural c = 0;
        for (const auto& w : pts) c += in_cone(cone, w) ? 1 : 0;
        p.values.push_back(c);
      }
      return p;
    }
  }
  return {};
}

/// S ∩ △ presented on ω² (for comparing ED_fin with ED verdicts).
inline SymbolicSet delta_as_planar(const SymbolicSet& s) {
  const GroundSet plane{GroundKind::OmegaSquared};
  return s.on(plane) & SymbolicSet::below_graph(plane, FunctionSpec::identity());
}

}  // namespace idealis
