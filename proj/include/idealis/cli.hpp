#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "idealis/json.hpp"
#include "idealis/partitions.hpp"
#include "idealis/qtop.hpp"

// The `idealis` command: subcommand dispatch, JSON results, run manifests and replay.

namespace idealis::cli {

using io::Json;

enum Exit : int { kSuccess = 0, kNegative = 1, kInconclusive = 2, kInputError = 3, kBudgetError = 4 };

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorKind::Input, "sha256: digest failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return hex.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Input, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Input, "cannot write " + path);
  out << bytes;
}

inline std::string render(const Json& j) { return j.dump(2) + "\n"; }

/// What a handler produced: exit code, JSON result, one human-readable line.
struct Outcome {
  int exit = kSuccess;
  Json result = Json::object();
  std::string summary;
};

struct Artifact {
  std::string role;
  std::string path;
  std::string bytes;
};

/// Per-invocation state: inputs read (with digests) and artifacts to write.
class Context {
 public:
  Json read_json(const std::string& path) {
    const std::string bytes = read_file(path);
    inputs_.emplace_back(path, sha256_hex(bytes));
    try {
      return Json::parse(bytes);
    } catch (const Json::parse_error& e) {
      fail(ErrorKind::Input, path + ": " + e.what());
    }
  }

  void emit(const std::string& role, const std::string& path, std::string bytes) {
    artifacts_.push_back({role, path, std::move(bytes)});
  }

  const std::vector<std::pair<std::string, std::string>>& inputs() const { return inputs_; }
  const std::vector<Artifact>& artifacts() const { return artifacts_; }

 private:
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<Artifact> artifacts_;
};

namespace cli_detail {

inline int exit_for(ErrorKind k) { return k == ErrorKind::Budget ? kBudgetError : kInputError; }

inline std::string to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Presentation: return "Presentation";
    case ErrorKind::UnsupportedPresentation: return "UnsupportedPresentation";
    case ErrorKind::Budget: return "Budget";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::DensityContract: return "DensityContract";
    case ErrorKind::Pool: return "Pool";
    case ErrorKind::CertificateUnavailable: return "CertificateUnavailable";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::Input: return "Input";
  }
  return "?";
}

inline std::optional<IntervalPartition> optional_partition(Context& ctx, const std::string& path) {
  if (path.empty()) return std::nullopt;
  return io::partition(ctx.read_json(path), path);
}

/// A file holding a set, either bare or under "set".
inline SymbolicSet read_set(Context& ctx, const std::string& path) {
  Json j = ctx.read_json(path);
  return io::symbolic_set(j.contains("set") && j["set"].is_object() ? j["set"] : j, path);
}

inline DFA read_dfa(Context& ctx, const std::string& path) {
  Json j = ctx.read_json(path);
  return io::dfa(j.contains("dfa") ? j["dfa"] : j, path);
}

inline Json point_list(const std::vector<QPoint>& pts) {
  Json out = Json::array();
  for (const auto& s : pts) out.push_back(s);
  return out;
}

// -- ideal ------------------------------------------------------------------------

inline Outcome ideal_decide(Context& ctx, const std::string& name, const std::string& set, const std::string& part) {
  const IdealId I = io::ideal(name, optional_partition(ctx, part), "--ideal");
  const MembershipVerdict v = decide(I, read_set(ctx, set));
  Outcome o;
  o.result = Json{{"ideal", I.name()}, {"verdict", io::to_json(v)}};
  o.exit = v.member() ? kSuccess : v.positive() ? kNegative : kInconclusive;
  o.summary = I.name() + ": " + to_string(v.status);
  return o;
}

inline Outcome ideal_oracle(Context& ctx, const std::string& name, const std::string& set, const std::string& part,
                            Natural N, Natural k) {
  const IdealId I = io::ideal(name, optional_partition(ctx, part), "--ideal");
  const bool covered = brute_cover_oracle(I, read_set(ctx, set), N, k);
  Outcome o;
  o.result = Json{{"ideal", I.name()}, {"N", N}, {"k", k}, {"coverable", covered}};
  o.exit = covered ? kSuccess : kNegative;
  o.summary = I.name() + ": " + (covered ? "covered by " : "not covered by ") + std::to_string(k) + " generators below " +
              std::to_string(N);
  return o;
}

// -- partition --------------------------------------------------------------------

inline Outcome partition_cov(Context& ctx, const std::string& part, const std::string& set) {
  const IntervalPartition P = io::partition(ctx.read_json(part), part);
  Json s;
  try {
    s = Json::parse(set);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Input, std::string("--set: ") + e.what());
  }
  const auto codes = io::naturals(s, "--set");
  Outcome o;
  o.result = Json{{"cov", cov(P, codes)}, {"blocks", Json::array()}};
  std::set<Natural> blocks;
  for (Natural k : codes) blocks.insert(P.block_of(k));
  for (Natural n : blocks) o.result["blocks"].push_back(n);
  o.summary = "cov = " + std::to_string(o.result["cov"].get<Natural>());
  return o;
}

/// Families for Talagrand partitions: a list of ω-sets (A_i = sets[i mod L]) or the cone-converging
/// sequences of the ℚ-copy (A_i converges to the i-th string).
struct Family {
  std::vector<SymbolicSet> sets;
  bool q = false;
  DFA dense = DFA::all();
  std::vector<DFA> avoid;

  CodeStream<Natural> natural_stream(Natural i) const { return symbolic_stream(sets[i % sets.size()]); }
  CodeStream<BigNat> q_stream(Natural i) const { return converging_stream(qstring_decode(i), dense, avoid); }
};

inline Family read_family(Context& ctx, const std::string& path) {
  const Json j = ctx.read_json(path);
  const std::string kind = io::text(io::field(j, "family", path), path + ".family");
  Family f;
  if (kind == "sets") {
    const Json& arr = io::array(io::field(j, "sets", path), path + ".sets");
    for (std::size_t i = 0; i < arr.size(); ++i)
      f.sets.push_back(io::symbolic_set(arr[i], path + ".sets[" + std::to_string(i) + "]", GroundSet{GroundKind::Omega}));
    if (f.sets.empty()) io::bad(path + ".sets", "empty family");
  } else if (kind == "q_converging") {
    f.q = true;
    if (j.contains("dense")) f.dense = io::dfa(j["dense"], path + ".dense");
    if (j.contains("avoid"))
      for (std::size_t i = 0; i < io::array(j["avoid"], path + ".avoid").size(); ++i)
        f.avoid.push_back(io::dfa(j["avoid"][i], path + ".avoid[" + std::to_string(i) + "]"));
  } else {
    io::bad(path + ".family", "expected \"sets\" or \"q_converging\"");
  }
  return f;
}

/// Pairs (n, i) with i ≤ n < blocks.size() and P_n ∩ A_i = ∅.
template <typename Code, typename StreamOf>
Json unmet(const std::vector<Block<Code>>& blocks, StreamOf stream_of) {
  Json out = Json::array();
  for (Natural i = 0; i < blocks.size(); ++i) {
    const auto met = blocks_met(blocks, stream_of(i));
    for (Natural n = i; n < blocks.size(); ++n)
      if (!met[n]) out.push_back({n, i});
  }
  return out;
}

inline Outcome partition_build_talagrand(Context& ctx, const std::string& seqs, Natural count, std::optional<Natural> depth) {
  const Family fam = read_family(ctx, seqs);
  Outcome o;
  Json blocks = Json::array(), missing;
  Json windows = Json::array();
  if (fam.q) {
    TalagrandBuilder<BigNat> b([&](Natural i) { return fam.q_stream(i); });
    for (Natural n = 0; n < count; ++n) b.next();
    for (const auto& blk : b.blocks()) blocks.push_back({{"start", io::big(blk.start)}, {"length", io::big(blk.length)}});
    missing = unmet(b.blocks(), [&](Natural i) { return fam.q_stream(i); });
    if (depth) {
      const Natural w = Natural{2} << *depth;
      for (Natural s = 0; s + w <= count; ++s) {
        std::vector<Natural> idx;
        for (Natural n = s; n < s + w; ++n) idx.push_back(n);
        if (!nwd_dense_to_depth(b.blocks(), idx, *depth)) windows.push_back(s);
      }
    }
  } else {
    if (depth) io::bad("--check-depth", "window density applies to the q_converging family only");
    TalagrandBuilder<Natural> b([&](Natural i) { return fam.natural_stream(i); });
    for (Natural n = 0; n < count; ++n) b.next();
    for (const auto& blk : b.blocks()) blocks.push_back({{"start", std::to_string(blk.start)}, {"length", std::to_string(blk.length)}});
    missing = unmet(b.blocks(), [&](Natural i) { return fam.natural_stream(i); });
  }
  o.result = Json{{"family", fam.q ? "q_converging" : "sets"}, {"blocks", blocks}, {"unmet", missing}};
  if (depth) o.result["check"] = Json{{"depth", *depth}, {"window", Natural{2} << *depth}, {"failing_windows", windows}};
  const bool ok = missing.empty() && windows.empty();
  o.exit = ok ? kSuccess : kNegative;
  o.summary = std::to_string(count) + " blocks; " + (ok ? "every check passed" : "some checks failed");
  return o;
}

inline Outcome partition_check(Context& ctx, const std::string& part, const std::string& seqs, Natural count) {
  const IntervalPartition P = io::partition(ctx.read_json(part), part);
  const Family fam = read_family(ctx, seqs);
  if (fam.q) io::bad(seqs, "partition check takes a \"sets\" family");
  const Json missing = unmet(partition_prefix(P, count), [&](Natural i) { return fam.natural_stream(i); });
  Outcome o;
  o.result = Json{{"blocks", count}, {"unmet", missing}};
  o.exit = missing.empty() ? kSuccess : kNegative;
  o.summary = missing.empty() ? "P_n meets A_i for all i <= n < " + std::to_string(count)
                              : std::to_string(missing.size()) + " pairs (n, i) unmet";
  return o;
}

// -- iso ----------------------------------------------------------------------------

inline Outcome iso_build(Context& ctx, const std::string& p, const std::string& r, Natural steps, const std::string& emit) {
  const IntervalPartition P = io::partition(ctx.read_json(p), p), R = io::partition(ctx.read_json(r), r);
  const PartialBijection g = edp_isomorphism(P, R, steps);
  const auto segs = g.segments();
  const IsoReport rep = iso_verify(segs, P, R);
  if (!emit.empty())
    ctx.emit("map", emit,
             render(Json{{"p", io::to_json(P)}, {"r", io::to_json(R)}, {"steps", steps}, {"segments", io::to_json(segs)}}));
  Outcome o;
  o.result = Json{{"steps", steps}, {"segments", segs.size()}, {"report", io::to_json(rep)}};
  o.exit = rep.clean() ? kSuccess : kNegative;
  o.summary = std::to_string(segs.size()) + " segments; P_0..P_" + std::to_string(rep.p_complete) + " and R_0..R_" +
              std::to_string(rep.r_complete) + " covered; " + std::to_string(rep.violations.size()) + " violations";
  return o;
}

inline Outcome iso_verify_cmd(Context& ctx, const std::string& map) {
  const Json j = ctx.read_json(map);
  const IntervalPartition P = io::partition(io::field(j, "p", map), map + ".p");
  const IntervalPartition R = io::partition(io::field(j, "r", map), map + ".r");
  const IsoReport rep = iso_verify(io::segments(io::field(j, "segments", map), map + ".segments"), P, R);
  Outcome o;
  o.result = Json{{"report", io::to_json(rep)}};
  o.exit = rep.clean() ? kSuccess : kNegative;
  o.summary = rep.clean() ? "no violations" : std::to_string(rep.violations.size()) + " violations";
  return o;
}

// -- katetov -------------------------------------------------------------------------

inline Outcome katetov(Context& ctx, const std::string& f, const std::string& from, const std::string& to, Natural depth,
                       const std::string& from_part, const std::string& to_part) {
  const KatetovMap map = io::katetov_map(ctx.read_json(f), f);
  const IdealId I = io::ideal(from, optional_partition(ctx, from_part), "--from");
  const IdealId J = io::ideal(to, optional_partition(ctx, to_part), "--to");
  const KatetovResult r = katetov_check(map, I, J, depth);
  Outcome o;
  o.result = Json{{"map", io::to_json(map)}, {"from", I.name()}, {"to", J.name()}, {"result", io::to_json(r)}};
  o.exit = r.falsified ? kNegative : kInconclusive;
  o.summary = r.falsified ? "falsified by " + r.witness->str()
                          : "unfalsified to depth " + std::to_string(depth) + " (" + std::to_string(r.checked) + " generators)";
  return o;
}

// -- indep ----------------------------------------------------------------------------

inline Outcome indep_refine(Context& ctx, const std::string& conds, Natural pool_size) {
  const auto us = io::env_conditions(ctx.read_json(conds), conds);
  FreshNamePool pool(pool_size);
  const Refinement r = disjoint_refinement(us, pool);
  bool disjoint = true;
  for (std::size_t i = 0; i < r.pieces.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) disjoint = disjoint && env_disjoint(r.pieces[i], r.pieces[j]);
  Outcome o;
  o.result = io::to_json(r);
  o.result["pairwise_disjoint"] = disjoint;
  o.exit = disjoint ? kSuccess : kNegative;
  o.summary = std::to_string(r.pieces.size()) + " pieces, " + (disjoint ? "pairwise disjoint" : "NOT disjoint");
  return o;
}

inline std::vector<FunctionSpec> function_list(const Json& j, const std::string& path) {
  std::vector<FunctionSpec> out;
  for (std::size_t i = 0; i < io::array(j, path).size(); ++i)
    out.push_back(io::function_spec(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline Outcome indep_fuse(Context& ctx, const std::string& sets, const std::string& funcs, Natural k, Natural witnesses,
                          Natural N, const std::vector<Natural>& columns, const std::vector<std::string>& belows) {
  const auto A = io::generator_names(ctx.read_json(sets), sets);
  const auto fs = function_list(ctx.read_json(funcs), funcs);
  const auto fam = fused_family(A, fs);
  Json members = Json::array();
  for (const auto& m : fam) members.push_back({{"rows", io::to_json(m.rows)}, {"f", io::to_json(m.f)}, {"set", io::to_json(m.set)}});
  Outcome o;
  const auto failures = fused_independence_audit(fam, k, witnesses, N);
  Json fail_json = Json::array();
  for (const auto& q : failures) fail_json.push_back(io::to_json(q));
  bool ok = failures.empty();
  Json certs = Json::array();
  auto certify = [&](const NwdTarget& t, Json target) {
    const FusedCertificate c = fused_nwd_certificate(fam, t, {});
    Json holds = Json::object();
    for (Natural n : {Natural{1} << 10, Natural{1} << 12}) {
      const bool h = certificate_holds(fam, t, c, n);
      holds[std::to_string(n)] = h;
      ok = ok && h;
    }
    certs.push_back({{"target", std::move(target)}, {"certificate", io::to_json(c)}, {"holds", holds}});
  };
  for (Natural n : columns) certify(NwdTarget::of_column(n), Json{{"column", n}});
  for (const auto& path : belows) {
    const FunctionSpec f = io::function_spec(ctx.read_json(path), path);
    certify(NwdTarget::below(f), Json{{"below", io::to_json(f)}});
  }
  o.result = Json{{"members", members},
                  {"audit", {{"k", k}, {"witnesses", witnesses}, {"N", N}, {"failures", fail_json}}},
                  {"certificates", certs}};
  o.exit = ok ? kSuccess : kNegative;
  o.summary = std::to_string(fam.size()) + " fused sets; audit " + (failures.empty() ? "clean" : "FAILED") + "; " +
              std::to_string(certs.size()) + " certificates";
  return o;
}

inline Outcome indep_tight(Context& ctx, const std::string& dense, Natural pool_size) {
  const Json j = ctx.read_json(dense);
  const Json& arr = io::array(j.is_object() ? io::field(j, "dense", dense) : j, dense);
  std::vector<std::pair<EnvSet, EnvCondition>> ys;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = dense + "[" + std::to_string(i) + "]";
    ys.emplace_back(io::env_set(io::field(arr[i], "set", path), path + ".set"),
                    arr[i].contains("p") ? io::env_condition(arr[i]["p"], path + ".p") : EnvCondition{});
  }
  FreshNamePool pool(pool_size);
  const TightWitness t = tight_witness(ys, pool);
  Json pts = Json::array();
  for (const auto& x : t.points) pts.push_back(io::to_json(x));
  Outcome o;
  o.result = Json{{"points", pts}, {"refinement", io::to_json(t.refinement)}};
  o.summary = std::to_string(t.points.size()) + " witness points";
  return o;
}

inline Outcome indep_audit(Context& ctx, const std::string& names, Natural k, Natural count, Natural separation, bool patch) {
  const auto fam = io::generator_names(ctx.read_json(names), names);
  const IndependenceReport rep = independence_audit(fam, k, count, separation, patch);
  Outcome o;
  o.result = io::to_json(rep);
  o.exit = rep.clean() ? kSuccess : kNegative;
  o.summary = std::to_string(rep.conditions) + " conditions; " + (rep.clean() ? "clean" : "NOT clean") + "; " +
              std::to_string(rep.patches.size()) + " patches";
  return o;
}

inline Outcome indep_selector(Context& ctx, const std::string& y, const std::string& p, const std::string& part,
                              const std::string& us, Natural take) {
  const Json yj = ctx.read_json(y);
  const EnvSet Y = io::env_set(yj.contains("set") ? yj["set"] : yj, y);
  const EnvCondition pc = p.empty() ? EnvCondition{} : io::env_condition(ctx.read_json(p), p);
  const IntervalPartition P = part.empty() ? IntervalPartition::triangular() : io::partition(ctx.read_json(part), part);
  DenseSelector sel(Y, pc, P, us.empty() ? std::vector<EnvCondition>{} : io::env_conditions(ctx.read_json(us), us));
  Json picks = Json::array();
  for (Natural i = 0; i < take; ++i) {
    const auto pick = sel.next();
    picks.push_back({{"block", pick.block},
                     {"index", pick.index},
                     {"point", io::to_json(pick.point)},
                     {"served", pick.served ? Json(*pick.served) : Json(nullptr)}});
  }
  Outcome o;
  o.result = Json{{"picks", picks}, {"hits", sel.hits()}};
  o.summary = std::to_string(take) + " picks";
  return o;
}

// -- q ----------------------------------------------------------------------------------

inline Outcome q_nwd(Context& ctx, const std::string& dfa) {
  const NwdAnalysis an(read_dfa(ctx, dfa));
  const auto cone = an.least_dense_cone();
  Outcome o;
  o.result = Json{{"nowhere_dense", an.nowhere_dense()}, {"dense_cone", cone ? Json(*cone) : Json(nullptr)}};
  o.exit = an.nowhere_dense() ? kSuccess : kNegative;
  o.summary = an.nowhere_dense() ? "nowhere dense" : "dense in the cone \"" + *cone + "\"";
  return o;
}

inline Outcome q_converge(Context& ctx, const std::string& point, const std::string& dense,
                          const std::vector<std::string>& avoid, Natural take) {
  std::vector<DFA> ns;
  for (const auto& a : avoid) ns.push_back(read_dfa(ctx, a));
  ConvergingSequence seq(point, dense.empty() ? DFA::all() : read_dfa(ctx, dense), ns);
  for (Natural i = 0; i < take; ++i) seq.next();
  Outcome o;
  o.result = Json{{"point", point}, {"sequence", point_list(seq.points())}};
  o.summary = std::to_string(take) + " points converging to \"" + point + "\"";
  return o;
}

inline Outcome q_selector(Context& ctx, const std::string& y, const std::string& blocks, Natural take) {
  QBlocks b = QBlocks::length();
  if (blocks.rfind("constant:", 0) == 0) {
    try {
      b = QBlocks::constant(std::stoull(blocks.substr(9)));
    } catch (const std::exception&) {
      io::bad("--blocks", "expected length or constant:<n>");
    }
  } else if (blocks != "length") {
    io::bad("--blocks", "expected length or constant:<n>");
  }
  WsSelector sel(y.empty() ? DFA::all() : read_dfa(ctx, y), b);
  for (Natural i = 0; i < take; ++i) sel.next();
  Outcome o;
  o.result = Json{{"cone", sel.cone()}, {"blocks", b.name}, {"points", point_list(sel.points())}, {"sources", sel.sources()}};
  o.summary = std::to_string(take) + " points in the cone \"" + sel.cone() + "\"";
  return o;
}

}  // namespace cli_detail

struct RunResult {
  int exit = kSuccess;
  Json envelope;
};

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

namespace cli_detail {

inline Outcome replay(const std::string& manifest_path, std::ostream& err) {
  const Json m = Json::parse(read_file(manifest_path));
  Json inputs = Json::array();
  for (const auto& in : io::array(io::field(m, "inputs", manifest_path), manifest_path + ".inputs")) {
    const std::string path = io::text(io::field(in, "path", "input"), "input.path");
    const std::string want = io::text(io::field(in, "sha256", "input"), "input.sha256");
    const std::string got = sha256_hex(read_file(path));
    if (got != want) fail(ErrorKind::Input, "replay: input " + path + " changed since the manifest was written");
  }
  const Json& config = io::field(m, "config", manifest_path);
  std::vector<std::string> argv;
  for (const auto& a : io::array(io::field(m, "argv", manifest_path), manifest_path + ".argv")) argv.push_back(a.get<std::string>());

  // rerun into scratch paths, never over the recorded artifacts
  const auto scratch = std::filesystem::temp_directory_path() / ("idealis-replay-" + sha256_hex(m.dump()).substr(0, 16));
  std::filesystem::create_directories(scratch);
  std::map<std::string, std::string> redirected;
  std::vector<std::string> rerun;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == "--manifest" && i + 1 < argv.size()) {
      ++i;
      continue;
    }
    rerun.push_back(argv[i]);
    if ((argv[i] == "--out" || argv[i] == "--emit") && i + 1 < argv.size()) {
      const std::string fresh = (scratch / (argv[i].substr(2) + ".json")).string();
      redirected[fresh] = argv[++i];
      rerun.push_back(fresh);
    }
  }
  const char* old_budget = std::getenv("IDEALIS_BUDGET");
  const std::optional<std::string> saved = old_budget ? std::optional<std::string>(old_budget) : std::nullopt;
  setenv("IDEALIS_BUDGET", std::to_string(io::natural(io::field(config, "budget", "config"), "config.budget")).c_str(), 1);
  std::ostringstream sink;
  const int code = run(rerun, sink, err);
  if (saved)
    setenv("IDEALIS_BUDGET", saved->c_str(), 1);
  else
    unsetenv("IDEALIS_BUDGET");

  Outcome o;
  bool same = static_cast<Natural>(code) == io::natural(io::field(m, "exit", manifest_path), manifest_path + ".exit");
  Json outs = Json::array();
  for (const auto& rec : io::array(io::field(m, "outputs", manifest_path), manifest_path + ".outputs")) {
    const std::string path = rec["path"].get<std::string>();
    std::string fresh;
    for (const auto& [f, orig] : redirected)
      if (orig == path) fresh = f;
    const std::string got = fresh.empty() ? "" : sha256_hex(read_file(fresh));
    const bool eq = got == rec["sha256"].get<std::string>();
    same = same && eq;
    outs.push_back({{"path", path}, {"sha256", rec["sha256"]}, {"replayed", got}, {"identical", eq}});
  }
  std::filesystem::remove_all(scratch);
  o.result = Json{{"subcommand", m["subcommand"]}, {"exit", code}, {"outputs", outs}, {"identical", same}};
  o.exit = same ? kSuccess : kNegative;
  o.summary = same ? "replay identical" : "replay DIFFERS";
  return o;
}

}  // namespace cli_detail

/// Runs one invocation. `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"idealis: deciders and constructions for ideals on countable sets", "idealis"};
  app.require_subcommand(1);
  bool json = false;
  std::string out_path, manifest_path;
  app.add_flag("--json", json, "Print the JSON result on stdout");
  app.add_option("--out", out_path, "Write the JSON result to a file");
  app.add_option("--manifest", manifest_path, "Write a run manifest (inputs and outputs with SHA-256 digests)");

  Context ctx;
  std::function<Outcome()> handler;
  std::string command;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    sub->parse_complete_callback([&, sub, parent] {
      command = (parent == &app ? "" : parent->get_name() + " ") + sub->get_name();
    });
    return sub;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };

  // all option storage lives here so the callbacks can read it after parsing
  std::string ideal_name, set_path, part_path, seqs_path, p_path, r_path, map_path, emit_path, f_path, from, to,
      from_part, to_part, conds_path, sets_path, funcs_path, dense_path, names_path, y_path, us_path, dfa_path, point,
      blocks = "length", set_literal, cond_path;
  Natural N = 1024, k = 8, count = 40, steps = 1000, depth = 32, pool = 64, audit = 3, witnesses = 5, fuseN = Natural{1} << 14,
          separation = 16, take = 20;
  std::optional<Natural> check_depth;
  std::vector<Natural> columns;
  std::vector<std::string> belows, avoid;
  bool no_patch = false;

  auto* ideal = group("ideal", "Membership in the canonical ideals");
  auto* decide_cmd = leaf(ideal, "decide", "Exact membership verdict");
  decide_cmd->add_option("--ideal", ideal_name, "Fin|ED|EDfin|FinXFin|EDP|nwd")->required();
  decide_cmd->add_option("--set", set_path, "Set presentation (JSON)")->required();
  decide_cmd->add_option("--partition", part_path, "Partition for EDP");
  decide_cmd->callback([&] { handler = [&] { return ideal_decide(ctx, ideal_name, set_path, part_path); }; });
  auto* oracle_cmd = leaf(ideal, "oracle", "Brute-force cover search on a truncation");
  oracle_cmd->add_option("--ideal", ideal_name)->required();
  oracle_cmd->add_option("--set", set_path)->required();
  oracle_cmd->add_option("--partition", part_path);
  oracle_cmd->add_option("--N", N, "Truncation bound");
  oracle_cmd->add_option("--k", k, "Cover size bound");
  oracle_cmd->callback([&] { handler = [&] { return ideal_oracle(ctx, ideal_name, set_path, part_path, N, k); }; });

  auto* partition = group("partition", "Interval partitions");
  auto* talagrand = leaf(partition, "build-talagrand", "Greedy partition meeting A_0..A_n in P_n");
  talagrand->add_option("--seqs", seqs_path, "Family JSON")->required();
  talagrand->add_option("--blocks", count, "Number of blocks");
  talagrand->add_option("--check-depth", check_depth, "Check window density to this depth (q_converging)");
  talagrand->callback([&] { handler = [&] { return partition_build_talagrand(ctx, seqs_path, count, check_depth); }; });
  auto* cov_cmd = leaf(partition, "cov", "Number of blocks a finite set meets");
  cov_cmd->add_option("--partition", part_path)->required();
  cov_cmd->add_option("--set", set_literal, "JSON array of naturals")->required();
  cov_cmd->callback([&] { handler = [&] { return partition_cov(ctx, part_path, set_literal); }; });
  auto* check_cmd = leaf(partition, "check", "Verify P_n meets A_i for i <= n");
  check_cmd->add_option("--partition", part_path)->required();
  check_cmd->add_option("--seqs", seqs_path)->required();
  check_cmd->add_option("--blocks", count);
  check_cmd->callback([&] { handler = [&] { return partition_check(ctx, part_path, seqs_path, count); }; });

  auto* iso = group("iso", "The ED_P / ED_R isomorphism");
  auto* build = leaf(iso, "build", "Run the generic construction");
  build->add_option("--p", p_path)->required();
  build->add_option("--r", r_path)->required();
  build->add_option("--steps", steps);
  build->add_option("--emit", emit_path, "Write the map JSON");
  build->callback([&] { handler = [&] { return iso_build(ctx, p_path, r_path, steps, emit_path); }; });
  auto* verify = leaf(iso, "verify", "Check a map JSON");
  verify->add_option("--map", map_path)->required();
  verify->callback([&] { handler = [&] { return iso_verify_cmd(ctx, map_path); }; });

  auto* kat = group("katetov", "Katětov maps");
  auto* kcheck = leaf(kat, "check", "Search for a generator with positive preimage");
  kcheck->add_option("--f", f_path)->required();
  kcheck->add_option("--from", from)->required();
  kcheck->add_option("--to", to)->required();
  kcheck->add_option("--depth", depth);
  kcheck->add_option("--from-partition", from_part);
  kcheck->add_option("--to-partition", to_part);
  kcheck->callback([&] { handler = [&] { return katetov(ctx, f_path, from, to, depth, from_part, to_part); }; });

  auto* indep = group("indep", "Independent families and the envelope topology");
  auto* refine = leaf(indep, "refine", "Disjoint refinement of conditions");
  refine->add_option("--conds", conds_path)->required();
  refine->add_option("--pool", pool);
  refine->callback([&] { handler = [&] { return indep_refine(ctx, conds_path, pool); }; });
  auto* fuse = leaf(indep, "fuse", "Fused family, audit and certificates");
  fuse->add_option("--sets", sets_path)->required();
  fuse->add_option("--funcs", funcs_path)->required();
  fuse->add_option("--audit", audit, "Condition size");
  fuse->add_option("--witnesses", witnesses);
  fuse->add_option("--N", fuseN);
  fuse->add_option("--column", columns, "Certify the column C_n");
  fuse->add_option("--below", belows, "Certify D(f) for a FunctionSpec file");
  fuse->callback([&] { handler = [&] { return indep_fuse(ctx, sets_path, funcs_path, audit, witnesses, fuseN, columns, belows); }; });
  auto* tight = leaf(indep, "tight", "One point in each dense set, pairwise separated");
  tight->add_option("--dense", dense_path)->required();
  tight->add_option("--pool", pool);
  tight->callback([&] { handler = [&] { return indep_tight(ctx, dense_path, pool); }; });
  auto* iaudit = leaf(indep, "audit", "Independence and separation audit");
  iaudit->add_option("--names", names_path)->required();
  iaudit->add_option("--k", audit);
  iaudit->add_option("--count", witnesses);
  iaudit->add_option("--separation", separation);
  iaudit->add_flag("--no-patch", no_patch);
  iaudit->callback([&] { handler = [&] { return indep_audit(ctx, names_path, audit, witnesses, separation, !no_patch); }; });
  auto* isel = leaf(indep, "selector", "Selector of Y meeting every B^u");
  isel->add_option("--y", y_path)->required();
  isel->add_option("--p", cond_path);
  isel->add_option("--partition", part_path);
  isel->add_option("--us", us_path);
  isel->add_option("--take", take);
  isel->callback([&] { handler = [&] { return indep_selector(ctx, y_path, cond_path, part_path, us_path, take); }; });

  auto* q = group("q", "The binary-string copy of the rationals");
  auto* qn = leaf(q, "nwd", "Is a regular language nowhere dense");
  qn->add_option("--dfa", dfa_path)->required();
  qn->callback([&] { handler = [&] { return q_nwd(ctx, dfa_path); }; });
  auto* qc = leaf(q, "converge", "Sequence in D converging to a point");
  qc->add_option("--point", point)->required();
  qc->add_option("--dense", dense_path);
  qc->add_option("--avoid", avoid);
  qc->add_option("--take", take);
  qc->callback([&] { handler = [&] { return q_converge(ctx, point, dense_path, avoid, take); }; });
  auto* qs = leaf(q, "selector", "Weakly selective selector");
  qs->add_option("--y", y_path);
  qs->add_option("--blocks", blocks, "length or constant:<n>");
  qs->add_option("--take", take);
  qs->callback([&] { handler = [&] { return q_selector(ctx, y_path, blocks, take); }; });

  auto* rep = app.add_subcommand("replay", "Re-run a manifest and compare artifact digests");
  std::string replay_manifest;
  rep->fallthrough();
  rep->add_option("--manifest", replay_manifest)->required();
  rep->callback([&] { handler = [&] { return replay(replay_manifest, err); }; });
  rep->parse_complete_callback([&] { command = "replay"; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kInputError;
  }

  Json envelope{{"command", command}};
  int code = kSuccess;
  std::string summary;
  try {
    Outcome o = handler();
    code = o.exit;
    summary = std::move(o.summary);
    envelope["exit"] = code;
    envelope["result"] = std::move(o.result);
  } catch (const Error& e) {
    code = exit_for(e.kind());
    summary = std::string("error (") + to_string(e.kind()) + "): " + e.what();
    envelope["exit"] = code;
    envelope["error"] = Json{{"kind", to_string(e.kind())}, {"message", e.what()}};
  } catch (const std::exception& e) {
    code = kInputError;
    summary = std::string("error: ") + e.what();
    envelope["exit"] = code;
    envelope["error"] = Json{{"kind", "Input"}, {"message", e.what()}};
  }

  if (json)
    out << render(envelope);
  else
    out << command << ": " << summary << "\n";
  try {
    if (!out_path.empty()) ctx.emit("out", out_path, render(envelope));
    for (const auto& a : ctx.artifacts()) write_file(a.path, a.bytes);
    if (!manifest_path.empty()) {
      Json inputs = Json::array(), outputs = Json::array();
      for (const auto& [path, digest] : ctx.inputs()) inputs.push_back({{"path", path}, {"sha256", digest}});
      for (const auto& a : ctx.artifacts()) outputs.push_back({{"role", a.role}, {"path", a.path}, {"sha256", sha256_hex(a.bytes)}});
      std::vector<std::string> recorded;
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--manifest") {
          ++i;
          continue;
        }
        recorded.push_back(args[i]);
      }
      write_file(manifest_path, render(Json{{"format", "idealis-manifest/1"},
                                            {"subcommand", command},
                                            {"argv", recorded},
                                            {"inputs", inputs},
                                            {"config", {{"budget", default_budget()}}},
                                            {"exit", code},
                                            {"outputs", outputs}}));
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kInputError;
  }
  return code;
}

}  // namespace idealis::cli
