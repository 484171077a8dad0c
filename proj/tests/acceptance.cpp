// Acceptance run: one PASS/FAIL line per criterion. Limits and sizes are pinned below.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "idealis/cli.hpp"
#include "support.hpp"

namespace idealis {
namespace {

namespace fs = std::filesystem;

// criterion 1
constexpr Natural kIsoSteps = 10000;
constexpr Natural kIsoCompleteBlocks = 51;  // P_0..P_50 and R_0..R_50
constexpr double kIsoSecondsPerPair = 5;
// criterion 2
constexpr Natural kConeDepth = 12;
constexpr double kNwdSeconds = 60;
// criterion 3
constexpr int kRandomPerIdeal = 200;
constexpr Natural kOracleN = 1 << 10;
constexpr Natural kOracleK = 8;
constexpr double kOracleSeconds = 120;
// criterion 4
constexpr Natural kTalagrandLast = 200;
constexpr Natural kTalagrandMaxDepth = 5;
constexpr double kTalagrandSeconds = 10;
// criterion 5
constexpr std::size_t kRefineConditions = 20;
constexpr Natural kRefinePool = 64;
constexpr Natural kRefineTruncation = 1 << 12;
constexpr double kRefineSeconds = 10;
// criterion 6
constexpr std::size_t kFusedMembers = 6;
constexpr std::size_t kFusedConditionSize = 3;
constexpr Natural kFusedWitnesses = 5;
constexpr Natural kFusedN = 1 << 14;
constexpr double kFusedSeconds = 30;
// criterion 7
constexpr Natural kSelectorLengths = 200;
constexpr Natural kSelectorConeLength = 4;
constexpr Natural kSelectorPicks = 600;
constexpr double kSelectorSeconds = 10;
// criterion 8
constexpr double kKatetovSeconds = 10;
// criterion 9
constexpr double kDeterminismSeconds = 60;

struct Verdict {
  bool ok = true;
  std::string detail;
};

class Clock {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int failures = 0;

void report(int id, const std::string& name, double limit, const std::function<Verdict()>& body) {
  Clock clock;
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double t = clock.seconds();
  const bool ok = v.ok && t < limit;
  if (!ok) ++failures;
  std::ostringstream line;
  line << (ok ? "PASS" : "FAIL") << " " << id << " " << name << " (" << std::fixed << std::setprecision(2) << t << " s, limit "
       << limit << " s): " << v.detail;
  std::cout << line.str() << std::endl;
}

// -- 1 ------------------------------------------------------------------------------------

IntervalPartition affine_partition(Natural a, Natural b) { return {FunctionSpec::affine(a, b), true}; }

Verdict isomorphisms() {
  const std::vector<std::pair<IntervalPartition, IntervalPartition>> pairs{
      {IntervalPartition::triangular(), affine_partition(2, 2)},
      {IntervalPartition::triangular(), IntervalPartition::triangular()},
      {affine_partition(2, 1), affine_partition(3, 2)},
      {IntervalPartition(FunctionSpec{{1, 3}, 2, 2, 2}, true), affine_partition(1, 2)},
      {affine_partition(5, 1), IntervalPartition::triangular()},
  };
  Verdict v;
  std::ostringstream d;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Clock c;
    const auto g = edp_isomorphism(pairs[i].first, pairs[i].second, kIsoSteps);
    const IsoReport r = iso_verify(g);
    const double t = c.seconds();
    const bool ok = r.clean() && r.p_complete >= kIsoCompleteBlocks && r.r_complete >= kIsoCompleteBlocks && t < kIsoSecondsPerPair;
    v.ok = v.ok && ok;
    d << (i ? "; " : "") << "pair " << i << ": " << r.violations.size() << " violations, P_0..P_" << r.p_complete - 1 << " R_0..R_"
      << r.r_complete - 1 << ", " << std::setprecision(2) << std::fixed << t << " s";
  }
  v.detail = d.str();
  return v;
}

// -- 2 ------------------------------------------------------------------------------------

/// One DFA per isomorphism class of accessible automata with `states` states: those whose
/// breadth-first numbering from the start state (0-edge first) is the identity.
void for_each_accessible_dfa(DFA::State states, const std::function<void(const DFA&)>& fn) {
  const std::size_t edges = 2 * states;
  std::vector<DFA::State> t(edges, 0);
  for (;;) {
    std::vector<int> order(states, -1);
    order[0] = 0;
    int next = 1;
    std::vector<DFA::State> queue{0};
    bool canonical = true;
    for (std::size_t h = 0; h < queue.size() && canonical; ++h)
      for (int c = 0; c < 2; ++c) {
        const DFA::State to = t[2 * queue[h] + c];
        if (order[to] < 0) {
          if (to != static_cast<DFA::State>(next)) canonical = false;
          order[to] = next++;
          queue.push_back(to);
        }
      }
    if (canonical && next == static_cast<int>(states))
      for (std::uint32_t acc = 0; acc < (1u << states); ++acc) {
        DFA d;
        d.states = states;
        d.start = 0;
        d.accepting.resize(states);
        for (DFA::State q = 0; q < states; ++q) {
          d.accepting[q] = (acc >> q) & 1;
          d.delta.push_back({t[2 * q], t[2 * q + 1]});
        }
        fn(d);
      }
    std::size_t i = 0;
    while (i < edges && ++t[i] == states) t[i++] = 0;
    if (i == edges) break;
  }
}

DFA prefix_language(const std::string& u) {
  // states 0..|u| read u, |u| accepts everything, |u|+1 rejects
  const auto n = static_cast<DFA::State>(u.size());
  DFA d{n + 2, 0, std::vector<bool>(n + 2, false), std::vector<std::array<DFA::State, 2>>(n + 2, {n + 1, n + 1})};
  for (DFA::State i = 0; i < n; ++i) d.delta[i][u[i] == '1'] = i + 1;
  d.delta[n] = {n, n};
  d.accepting[n] = true;
  return d;
}

DFA avoiding(const std::string& w) {
  // strings without the factor w (KMP automaton, dead state |w|)
  const auto n = static_cast<DFA::State>(w.size());
  DFA d{n + 1, 0, std::vector<bool>(n + 1, true), std::vector<std::array<DFA::State, 2>>(n + 1, {n, n})};
  d.accepting[n] = false;
  for (DFA::State q = 0; q < n; ++q)
    for (char c : {'0', '1'}) {
      std::string s = w.substr(0, q) + c;
      while (!s.empty() && w.compare(0, s.size(), s) != 0) s.erase(0, 1);
      d.delta[q][c == '1'] = static_cast<DFA::State>(s.size());
    }
  return d;
}

DFA length_mod(DFA::State m, DFA::State r) {
  DFA d{m, 0, std::vector<bool>(m, false), std::vector<std::array<DFA::State, 2>>(m)};
  for (DFA::State q = 0; q < m; ++q) d.delta[q] = {(q + 1) % m, (q + 1) % m};
  d.accepting[r] = true;
  return d;
}

std::vector<DFA> handcrafted_corpus() {
  std::vector<DFA> c{DFA::empty(), DFA::all()};
  for (const std::string u : {"", "0", "1", "00", "01", "10", "11"}) c.push_back(prefix_language(u));
  for (const std::string w : {"1", "0", "11", "10", "01", "00", "101", "111", "110", "0110"}) {
    c.push_back(avoiding(w));
    c.push_back(avoiding(w).complement());
  }
  for (DFA::State m = 2; m <= 4; ++m)
    for (DFA::State r = 0; r < m; r += 1 + (m > 2)) c.push_back(length_mod(m, r));
  for (const std::string v : {"", "1", "01", "110"}) c.push_back(word_then_zeros(v));
  c.push_back(finite_language({"0", "101", "11"}));
  c.push_back(finite_language({"", "1", "0110", "111"}));
  c.push_back(finite_language({"01", "0111"}).complement());
  c.push_back(product(prefix_language("1"), avoiding("00"), BoolOp::Intersection));
  c.push_back(product(prefix_language("0"), length_mod(2, 0), BoolOp::Intersection));
  c.push_back(product(word_then_zeros("1"), prefix_language("01"), BoolOp::Union));
  c.push_back(product(avoiding("11"), avoiding("00"), BoolOp::Union));
  c.push_back(product(avoiding("11"), prefix_language("10"), BoolOp::Difference));
  c.push_back(product(DFA::all(), word_then_zeros("0"), BoolOp::Difference));
  c.push_back(product(prefix_language("11"), avoiding("0"), BoolOp::Intersection));
  c.push_back(product(length_mod(3, 1), avoiding("10"), BoolOp::Intersection));
  return c;
}

Verdict nwd_soundness() {
  Natural total = 0, conclusive = 0, disagreements = 0;
  auto check = [&](const DFA& d) {
    ++total;
    const bool nwd = nwd_regular_decide(d);
    if (auto cone = cone_search_oracle(d, kConeDepth)) {
      ++conclusive;
      if (nwd) ++disagreements;
    }
  };
  for (DFA::State s = 1; s <= 3; ++s) for_each_accessible_dfa(s, check);
  const Natural exhaustive = total;
  const auto corpus = handcrafted_corpus();
  Natural unfound = 0;
  for (const auto& d : corpus) {
    check(d);
    if (nwd_regular_decide(d)) continue;
    // somewhere dense: the oracle must find a cone at some depth up to 12
    bool found = false;
    for (Natural depth = 0; depth <= kConeDepth && !found; ++depth) found = cone_search_oracle(d, depth).has_value();
    if (!found) ++unfound;
  }
  std::ostringstream s;
  s << exhaustive << " DFAs with <= 3 states + " << corpus.size() << " handcrafted; " << conclusive << " conclusive, "
    << disagreements << " disagreements; " << unfound << " somewhere-dense corpus DFAs without an oracle cone";
  return {disagreements == 0 && unfound == 0 && corpus.size() == 50, s.str()};
}

// -- 3 ------------------------------------------------------------------------------------

Verdict oracle_equivalence() {
  const GroundSet plane{GroundKind::OmegaSquared}, delta{GroundKind::Delta};
  const IntervalPartition P = IntervalPartition::triangular();
  struct Job {
    IdealId ideal;
    std::function<SymbolicSet(testing::Rng&)> make;
  };
  const std::vector<Job> jobs{
      {IdealId::ed(), [&](testing::Rng& r) { return testing::random_planar_set(r, plane); }},
      {IdealId::edfin(), [&](testing::Rng& r) { return testing::random_planar_set(r, delta); }},
      {IdealId::finxfin(), [&](testing::Rng& r) { return testing::random_planar_set(r, plane); }},
      {IdealId::edp(P), [&](testing::Rng& r) { return testing::random_block_set(r, P, 3); }},
  };
  Verdict v;
  std::ostringstream d;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    testing::Rng rng(1000 + j);
    Natural members = 0, positives = 0, bad = 0;
    for (int trial = 0; trial < kRandomPerIdeal; ++trial) {
      const SymbolicSet s = jobs[j].make(rng);
      const auto verdict = decide(jobs[j].ideal, s);
      if (verdict.member()) {
        ++members;
        const Natural k = verdict.cover->size(jobs[j].ideal.kind);
        if (!replay_cover(jobs[j].ideal, s, *verdict.cover, kOracleN)) ++bad;
        else if (k <= kOracleK && !brute_cover_oracle(jobs[j].ideal, s, kOracleN, k)) ++bad;
      } else if (verdict.positive()) {
        ++positives;
        for (Natural k = 0; k <= kOracleK; ++k)
          if (brute_cover_oracle(jobs[j].ideal, s, kOracleN, k)) {
            ++bad;
            break;
          }
      } else {
        ++bad;  // the deciders are exact on this class
      }
    }
    v.ok = v.ok && bad == 0;
    d << (j ? "; " : "") << jobs[j].ideal.name() << " " << members << " member / " << positives << " positive / " << bad
      << " disagreements";
  }
  v.detail = d.str();
  return v;
}

// -- 4 ------------------------------------------------------------------------------------

Verdict talagrand() {
  auto stream = [](Natural i) { return converging_stream(qstring_decode(i), DFA::all(), {}); };
  TalagrandBuilder<BigNat> b(stream);
  for (Natural n = 0; n <= kTalagrandLast; ++n) b.next();
  Natural unmet = 0;
  for (Natural i = 0; i <= kTalagrandLast; ++i) {
    const auto met = blocks_met(b.blocks(), stream(i));
    for (Natural n = i; n <= kTalagrandLast; ++n) unmet += !met[n];
  }
  Natural windows = 0, sparse = 0;
  for (Natural depth = 1; depth <= kTalagrandMaxDepth; ++depth) {
    const Natural w = Natural{2} << depth;
    for (Natural s = 0; s + w <= kTalagrandLast + 1; ++s) {
      std::vector<Natural> idx;
      for (Natural n = s; n < s + w; ++n) idx.push_back(n);
      ++windows;
      sparse += !nwd_dense_to_depth(b.blocks(), idx, depth);
    }
  }
  std::ostringstream d;
  d << (kTalagrandLast + 1) << " blocks; " << unmet << " pairs i <= n with P_n missing A_i; " << sparse << " of " << windows
    << " windows not dense to their depth";
  return {unmet == 0 && sparse == 0, d.str()};
}

// -- 5 ------------------------------------------------------------------------------------

std::vector<GeneratorName> eight_names() {
  // pairwise distinct traces on {0,1,2}, so FK codes below 2^12 realize every sign pattern
  return {GeneratorName("", "0"),   GeneratorName("", "1"),   GeneratorName("", "10"),  GeneratorName("", "01"),
          GeneratorName("", "100"), GeneratorName("", "001"), GeneratorName("", "110"), GeneratorName("", "011")};
}

std::vector<EnvCondition> refinement_inputs() {
  testing::Rng rng(55);
  const auto names = eight_names();
  std::vector<EnvCondition> us;
  for (std::size_t i = 0; i < kRefineConditions; ++i) {
    EnvCondition p;
    for (Natural j = testing::uniform(rng, 0, 3); j > 0; --j)
      p[names[testing::uniform(rng, 0, names.size() - 1)]] = static_cast<int>(testing::uniform(rng, 0, 1));
    us.push_back(p);
  }
  return us;
}

bool nonempty_by_witness(const EnvSet& c) {
  for (const auto& d : c.conditions)
    for (const auto& x : condition_witness(d, 1))
      if (c.contains(x)) return true;
  return false;
}

Verdict refinement_and_tightness() {
  const auto us = refinement_inputs();
  std::vector<FKPoint> pts;
  FKEnumerator e;
  for (Natural c = 0; c < kRefineTruncation; ++c, e.advance()) pts.push_back(e.point());

  FreshNamePool pool(kRefinePool);
  const Refinement r = disjoint_refinement(us, pool);
  Natural overlaps = 0, empty = 0, escapes = 0;
  for (std::size_t n = 0; n < us.size(); ++n) {
    empty += !nonempty_by_witness(r.pieces[n]);
    for (const auto& c : r.pieces[n].conditions) escapes += !extends(c, us[n]);
    for (const auto& x : r.pieces[n].additions) escapes += !in_condition(us[n], x);
    for (std::size_t m = 0; m < n; ++m) {
      bool clash = !env_disjoint(r.pieces[n], r.pieces[m]);
      for (const auto& x : pts) clash = clash || (r.pieces[n].contains(x) && r.pieces[m].contains(x));
      overlaps += clash;
    }
  }

  // dense inputs: Y_n splits B^{u_n} along a name outside u_n, both sides kept
  std::vector<std::pair<EnvSet, EnvCondition>> dense;
  const auto names = eight_names();
  for (std::size_t n = 0; n < us.size(); ++n) {
    EnvSet y;
    for (const auto& x : names)
      if (!us[n].contains(x)) {
        EnvCondition a = us[n], b = us[n];
        a[x] = 0;
        b[x] = 1;
        y.conditions = {a, b};
        break;
      }
    if (y.conditions.empty()) y.conditions = {us[n]};
    normalize(y);
    dense.emplace_back(y, us[n]);
  }
  FreshNamePool pool2(kRefinePool);
  const TightWitness t = tight_witness(dense, pool2);
  Natural misses = 0;
  for (std::size_t n = 0; n < dense.size(); ++n) {
    Natural in_piece = 0;
    for (const auto& y : t.points) in_piece += t.refinement.pieces[n].contains(y);
    misses += !(dense[n].first.contains(t.points[n]) && t.refinement.pieces[n].contains(t.points[n]) && in_piece == 1);
  }
  std::ostringstream d;
  d << us.size() << " conditions, " << pool.issued().size() << " fresh names; " << overlaps << " overlapping pairs, " << empty
    << " empty pieces, " << escapes << " escapes; tight witness: " << misses << " of " << dense.size() << " inputs not met exactly once";
  return {overlaps == 0 && empty == 0 && escapes == 0 && misses == 0, d.str()};
}

// -- 6 ------------------------------------------------------------------------------------

std::vector<FusedMember> six_fused() {
  std::vector<GeneratorName> A;
  std::vector<FunctionSpec> fs;
  for (std::size_t a = 0; a < kFusedMembers; ++a) {
    // A_α = {n : bit α of n is 1}; f_α(n) = n + α is pointwise increasing in α
    A.emplace_back("", std::string(std::size_t{1} << a, '0') + std::string(std::size_t{1} << a, '1'));
    fs.push_back(FunctionSpec::affine(1, a));
  }
  return fused_family(A, fs);
}

Verdict fused() {
  const auto fam = six_fused();
  const auto failures = fused_independence_audit(fam, kFusedConditionSize, kFusedWitnesses, kFusedN);
  std::vector<NwdTarget> targets;
  for (Natural n = 1; n < 64; ++n) targets.push_back(NwdTarget::of_column(n));
  for (Natural c = 0; c < kFusedMembers; ++c) targets.push_back(NwdTarget::below(FunctionSpec::affine(1, c)));
  targets.push_back(NwdTarget::below(FunctionSpec{{0, 0, 0, 20}, 1, 0, 4}));
  targets.push_back(NwdTarget::below(FunctionSpec::constant(7)));
  Natural broken = 0, replays = 0;
  for (const auto& t : targets) {
    // besides the empty condition, pin a member that a column target does not need
    std::vector<FusedCondition> ps{{}};
    for (Natural a = kFusedMembers; a-- > 0;)
      if (!t.column || !((t.n >> a) & 1)) {
        ps.push_back({{a, 0}});
        break;
      }
    for (const auto& p : ps) {
      const auto c = fused_nwd_certificate(fam, t, p);
      for (Natural N : {Natural{1} << 10, Natural{1} << 12}) {
        ++replays;
        broken += !certificate_holds(fam, t, c, N);
      }
    }
  }
  std::ostringstream d;
  d << fam.size() << " fused sets; " << failures.size() << " size-" << kFusedConditionSize << " patterns with fewer than "
    << kFusedWitnesses << " witnesses below " << kFusedN << "; " << broken << " of " << replays
    << " certificate replays over their bound";
  return {failures.empty() && broken == 0, d.str()};
}

// -- 7 ------------------------------------------------------------------------------------

Verdict weakly_selective() {
  WsSelector sel(DFA::all(), QBlocks::length());
  for (Natural i = 0; i < kSelectorPicks; ++i) sel.next();
  std::map<Natural, Natural> per_length;
  for (const auto& s : sel.points())
    if (s.size() < kSelectorLengths) ++per_length[s.size()];
  Natural crowded = 0;
  for (const auto& [len, c] : per_length) crowded += c > 1;
  Natural missed = 0;
  for (Natural code = 0; code < (Natural{2} << kSelectorConeLength) - 1; ++code) {
    const std::string u = qstring_decode(code);
    missed += std::none_of(sel.points().begin(), sel.points().end(), [&](const QPoint& s) { return in_cone(u, s); });
  }
  std::ostringstream d;
  d << kSelectorPicks << " picks; " << crowded << " lengths below " << kSelectorLengths << " with two points; " << missed
    << " cones of length <= " << kSelectorConeLength << " missed";
  return {crowded == 0 && missed == 0, d.str()};
}

// -- 8 ------------------------------------------------------------------------------------

Verdict katetov() {
  const GroundSet plane{GroundKind::OmegaSquared}, delta{GroundKind::Delta};
  const auto a = katetov_check(KatetovMap::identity(delta, plane), IdealId::edfin(), IdealId::ed(), 32);
  const auto b = katetov_check(KatetovMap::identity(plane, plane), IdealId::finxfin(), IdealId::ed(), 32);
  const auto f = KatetovMap::constant(delta, plane, pair_encode(0, 0));
  const auto c = katetov_check(f, IdealId::edfin(), IdealId::ed(), 32);
  const bool confirmed = c.falsified && !brute_cover_oracle(IdealId::edfin(), pullback(f, c.witness->set), kOracleN, kOracleK);
  std::ostringstream d;
  d << "delta into plane " << (a.falsified ? "FALSIFIED" : "unfalsified") << " (" << a.checked << " generators); plane identity "
    << (b.falsified ? "FALSIFIED" : "unfalsified") << "; constant map "
    << (c.falsified ? "falsified by " + c.witness->str() : std::string("NOT falsified"))
    << (confirmed ? ", preimage positive by brute force" : "");
  return {!a.falsified && !b.falsified && confirmed, d.str()};
}

// -- 9 ------------------------------------------------------------------------------------

Verdict determinism() {
  using io::Json;
  const fs::path dir = fs::temp_directory_path() / "idealis-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const Json& j) {
    const std::string p = (dir / name).string();
    cli::write_file(p, cli::render(j));
    return p;
  };
  const std::string p = put("p.json", io::to_json(IntervalPartition::triangular()));
  const std::string r = put("r.json", io::to_json(affine_partition(2, 2)));
  const std::string delta = put("delta.json", io::to_json(SymbolicSet::below_graph({GroundKind::OmegaSquared}, FunctionSpec::identity())));
  const std::string dfa = put("dfa.json", io::to_json(avoiding("11")));
  const std::string qfam = put("q.json", Json{{"family", "q_converging"}});
  Json conds = Json::array();
  for (const auto& u : refinement_inputs()) conds.push_back(io::to_json(u));
  const std::string cj = put("conds.json", conds);
  Json names = Json::array(), funcs = Json::array();
  for (const auto& m : six_fused()) {
    names.push_back(io::to_json(m.rows));
    funcs.push_back(io::to_json(m.f));
  }
  const std::string nj = put("names.json", names), fj = put("funcs.json", funcs);
  const std::string kf = put("f.json", io::to_json(KatetovMap::identity({GroundKind::Delta}, {GroundKind::OmegaSquared})));

  const std::vector<std::vector<std::string>> runs{
      {"iso", "build", "--p", p, "--r", r, "--steps", std::to_string(kIsoSteps), "--emit", (dir / "map.json").string()},
      {"iso", "verify", "--map", (dir / "map.json").string()},
      {"q", "nwd", "--dfa", dfa},
      {"ideal", "decide", "--ideal", "ED", "--set", delta},
      {"partition", "build-talagrand", "--seqs", qfam, "--blocks", std::to_string(kTalagrandLast + 1), "--check-depth", "3"},
      {"indep", "refine", "--conds", cj, "--pool", std::to_string(kRefinePool)},
      {"indep", "fuse", "--sets", nj, "--funcs", fj, "--audit", "2", "--N", "4096", "--column", "5"},
      {"katetov", "check", "--f", kf, "--from", "EDfin", "--to", "ED", "--depth", "32"},
      {"q", "selector", "--take", "100"},
  };
  Natural differing = 0;
  std::ostringstream d;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    auto args = runs[i];
    const std::string manifest = (dir / ("manifest" + std::to_string(i) + ".json")).string();
    args.insert(args.end(), {"--out", (dir / ("out" + std::to_string(i) + ".json")).string(), "--manifest", manifest});
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    std::ostringstream rout, rerr;
    const int replayed = cli::run({"replay", "--manifest", manifest, "--json"}, rout, rerr);
    const bool same = code < cli::kInputError && replayed == cli::kSuccess;
    if (!same) {
      ++differing;
      d << "[" << runs[i][0] << " " << runs[i][1] << ": exit " << code << ", replay " << replayed << " " << err.str() << rerr.str() << "] ";
    }
  }
  d << runs.size() << " manifests replayed, " << differing << " not byte-identical";
  fs::remove_all(dir);
  return {differing == 0, d.str()};
}

}  // namespace
}  // namespace idealis

int main() {
  using namespace idealis;
  report(1, "ED_P ~ ED_R isomorphism", 5 * kIsoSecondsPerPair, isomorphisms);
  report(2, "nwd decision soundness", kNwdSeconds, nwd_soundness);
  report(3, "ideal deciders vs brute-force oracle", kOracleSeconds, oracle_equivalence);
  report(4, "Talagrand partition over converging sequences", kTalagrandSeconds, talagrand);
  report(5, "disjoint refinement and tight witness", kRefineSeconds, refinement_and_tightness);
  report(6, "fused family", kFusedSeconds, fused);
  report(7, "weakly selective selector on Q", kSelectorSeconds, weakly_selective);
  report(8, "Katetov checks", kKatetovSeconds, katetov);
  report(9, "determinism by manifest replay", kDeterminismSeconds, determinism);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
