#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "idealis/generic.hpp"
#include "idealis/ideals.hpp"
#include "idealis/indep.hpp"
#include "idealis/katetov.hpp"

// JSON forms of the library types. Readers throw Error(Input) naming the offending path.

namespace idealis::io {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void bad(const std::string& path, const std::string& what) {
  fail(ErrorKind::Input, path + ": " + what);
}

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path, "missing field \"" + key + "\"");
  return *it;
}

inline Natural natural(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    bad(path, "expected a natural number");
  return j.get<Natural>();
}

inline Natural natural_or(const Json& j, const std::string& key, Natural dflt, const std::string& path) {
  return j.contains(key) ? natural(j[key], path + "." + key) : dflt;
}

inline std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

inline const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

inline std::vector<Natural> naturals(const Json& j, const std::string& path) {
  std::vector<Natural> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(natural(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

/// Naturals are emitted as numbers, kInfinity as null.
inline Json natural_or_null(Natural v) { return v == kInfinity ? Json(nullptr) : Json(v); }

inline Json big(const BigNat& v) { return v.str(); }

// -- FunctionSpec, partitions, DFAs, names ----------------------------------

inline Json to_json(const FunctionSpec& f) {
  return Json{{"table", f.table}, {"a", f.a}, {"b", f.b}, {"cutoff", f.cutoff}};
}

inline FunctionSpec function_spec(const Json& j, const std::string& path = "function") {
  FunctionSpec f;
  if (j.contains("table")) f.table = naturals(j["table"], path + ".table");
  f.a = natural_or(j, "a", 0, path);
  f.b = natural_or(j, "b", 0, path);
  f.cutoff = natural_or(j, "cutoff", f.table.size(), path);
  f.validate();
  return f;
}

inline Json to_json(const IntervalPartition& P) {
  Json j = to_json(P.lengths());
  j["increasing"] = P.increasing();
  return j;
}

inline IntervalPartition partition(const Json& j, const std::string& path = "partition") {
  if (j.is_string()) {
    if (j.get<std::string>() == "triangular") return IntervalPartition::triangular();
    bad(path, "unknown partition preset \"" + j.get<std::string>() + "\"");
  }
  const bool inc = j.contains("increasing") ? j["increasing"].get<bool>() : false;
  return IntervalPartition(function_spec(j, path), inc);
}

inline Json to_json(const DFA& d) {
  Json acc = Json::array(), delta = Json::array();
  for (DFA::State q = 0; q < d.states; ++q) {
    if (d.accepting[q]) acc.push_back(q);
    delta.push_back({d.delta[q][0], d.delta[q][1]});
  }
  return Json{{"states", d.states}, {"start", d.start}, {"accept", acc}, {"delta", delta}};
}

inline DFA dfa(const Json& j, const std::string& path = "dfa") {
  DFA d;
  d.states = static_cast<DFA::State>(natural(field(j, "states", path), path + ".states"));
  d.start = static_cast<DFA::State>(natural_or(j, "start", 0, path));
  d.accepting.assign(d.states, false);
  for (Natural q : naturals(field(j, "accept", path), path + ".accept")) {
    if (q >= d.states) bad(path + ".accept", "state out of range");
    d.accepting[q] = true;
  }
  const Json& delta = array(field(j, "delta", path), path + ".delta");
  for (std::size_t q = 0; q < delta.size(); ++q) {
    auto row = naturals(delta[q], path + ".delta[" + std::to_string(q) + "]");
    if (row.size() != 2) bad(path + ".delta[" + std::to_string(q) + "]", "expected [t0, t1]");
    d.delta.push_back({static_cast<DFA::State>(row[0]), static_cast<DFA::State>(row[1])});
  }
  d.validate();
  return d;
}

/// Names are written "prefix(period)"; the object form {"prefix","period"} is also read.
inline Json to_json(const GeneratorName& x) { return x.str(); }

inline GeneratorName generator_name(const Json& j, const std::string& path = "name") {
  if (j.is_object()) return GeneratorName(j.value("prefix", ""), text(field(j, "period", path), path + ".period"));
  const std::string s = text(j, path);
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') bad(path, "expected \"prefix(period)\"");
  return GeneratorName(s.substr(0, open), s.substr(open + 1, s.size() - open - 2));
}

inline std::vector<GeneratorName> generator_names(const Json& j, const std::string& path = "names") {
  std::vector<GeneratorName> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(generator_name(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

// -- FK points, conditions, envelope sets -------------------------------------

inline Json mask_elements(std::uint64_t m) {
  Json out = Json::array();
  for (int i = 0; i < 64; ++i)
    if ((m >> i) & 1) out.push_back(i);
  return out;
}

inline std::uint64_t elements_mask(const Json& j, const std::string& path) {
  std::uint64_t m = 0;
  for (Natural i : naturals(j, path)) {
    if (i >= 64) bad(path, "FK elements must lie below 64");
    m |= std::uint64_t{1} << i;
  }
  return m;
}

inline Json to_json(const FKPoint& x) {
  Json phi = Json::array();
  for (auto s : x.Phi) phi.push_back(mask_elements(s));
  return Json{{"F", mask_elements(x.F)}, {"Phi", phi}, {"code", big(fk_encode(x))}};
}

inline FKPoint fk_point(const Json& j, const std::string& path = "point") {
  if (j.is_number_integer()) return fk_decode(natural(j, path));
  FKPoint x;
  x.F = elements_mask(field(j, "F", path), path + ".F");
  const Json& phi = array(field(j, "Phi", path), path + ".Phi");
  for (std::size_t i = 0; i < phi.size(); ++i) x.Phi.push_back(elements_mask(phi[i], path + ".Phi[" + std::to_string(i) + "]"));
  std::sort(x.Phi.begin(), x.Phi.end());
  x.validate();
  return x;
}

inline Json to_json(const EnvCondition& p) {
  Json assign = Json::object();
  for (const auto& [x, bit] : p) assign[x.str()] = bit;
  return Json{{"assign", assign}};
}

inline EnvCondition env_condition(const Json& j, const std::string& path = "condition") {
  const Json& a = field(j, "assign", path);
  if (!a.is_object()) bad(path + ".assign", "expected an object");
  std::vector<std::pair<GeneratorName, int>> assign;
  for (const auto& [key, bit] : a.items()) {
    const Natural b = natural(bit, path + ".assign." + key);
    if (b > 1) bad(path + ".assign." + key, "expected 0 or 1");
    assign.emplace_back(generator_name(Json(key), path + ".assign." + key), static_cast<int>(b));
  }
  return make_condition(assign);
}

inline std::vector<EnvCondition> env_conditions(const Json& j, const std::string& path = "conditions") {
  const Json& arr = j.is_object() ? field(j, "conditions", path) : j;
  std::vector<EnvCondition> out;
  for (std::size_t i = 0; i < array(arr, path).size(); ++i) out.push_back(env_condition(arr[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline Json to_json(const EnvSet& s) {
  Json c = Json::array(), add = Json::array(), del = Json::array();
  for (const auto& p : s.conditions) c.push_back(to_json(p));
  for (const auto& x : s.additions) add.push_back(to_json(x));
  for (const auto& x : s.deletions) del.push_back(to_json(x));
  return Json{{"conditions", c}, {"additions", add}, {"deletions", del}};
}

inline EnvSet env_set(const Json& j, const std::string& path = "envset") {
  EnvSet s;
  s.conditions = env_conditions(field(j, "conditions", path), path + ".conditions");
  auto points = [&](const char* key, std::vector<FKPoint>& out) {
    if (!j.contains(key)) return;
    for (std::size_t i = 0; i < array(j[key], path + "." + key).size(); ++i)
      out.push_back(fk_point(j[key][i], path + "." + key + "[" + std::to_string(i) + "]"));
  };
  points("additions", s.additions);
  points("deletions", s.deletions);
  normalize(s);
  return s;
}

// -- symbolic sets -------------------------------------------------------------

inline std::string ground_name(GroundKind g) { return to_string(g); }

inline GroundSet ground(const std::string& s, const std::string& path) {
  for (GroundKind g : {GroundKind::Omega, GroundKind::OmegaSquared, GroundKind::Delta, GroundKind::QStrings, GroundKind::FKPairs})
    if (to_string(g) == s) return {g};
  bad(path, "unknown ground set \"" + s + "\"");
}

inline Json to_json(const SymbolicSet& s) {
  using namespace set_nodes;
  Json j{{"ground", ground_name(s.ground().kind)}};
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Finite>) {
          j["kind"] = "finite";
          j["codes"] = n.codes;
        } else if constexpr (std::is_same_v<T, Cofinite>) {
          j["kind"] = "cofinite";
          j["excluded"] = n.excluded;
        } else if constexpr (std::is_same_v<T, Column>) {
          j["kind"] = "column";
          j["n"] = n.n;
        } else if constexpr (std::is_same_v<T, Graph>) {
          j["kind"] = "graph";
          j["f"] = to_json(n.f);
        } else if constexpr (std::is_same_v<T, BelowGraph>) {
          j["kind"] = "below_graph";
          j["f"] = to_json(n.f);
        } else if constexpr (std::is_same_v<T, ColumnSet>) {
          j["kind"] = "column_set";
          j["rows"] = to_json(n.rows);
        } else if constexpr (std::is_same_v<T, Periodic>) {
          j["kind"] = "periodic";
          j["set"] = to_json(n.set);
        } else if constexpr (std::is_same_v<T, InBlocks>) {
          j["kind"] = "in_blocks";
          j["partition"] = to_json(n.partition);
          j["inner"] = to_json(*n.inner);
        } else if constexpr (std::is_same_v<T, Regular>) {
          j["kind"] = "regular";
          j["dfa"] = to_json(n.dfa);
        } else if constexpr (std::is_same_v<T, Env>) {
          j["kind"] = "env";
          j["set"] = to_json(n.set);
        } else if constexpr (std::is_same_v<T, Binary>) {
          j["kind"] = n.op == BoolOp::Union ? "union" : n.op == BoolOp::Intersection ? "intersection" : "difference";
          j["left"] = to_json(*n.left);
          j["right"] = to_json(*n.right);
        }
      },
      s.node());
  return j;
}

/// Reads the tagged tree. "ground" is inherited from the parent and defaults per kind.
inline SymbolicSet symbolic_set(const Json& j, const std::string& path = "set", std::optional<GroundSet> inherited = {}) {
  const std::string kind = text(field(j, "kind", path), path + ".kind");
  GroundSet g = inherited.value_or(GroundSet{});
  if (kind == "regular") g = {GroundKind::QStrings};
  if (kind == "env") g = {GroundKind::FKPairs};
  if (kind == "periodic" || kind == "in_blocks") g = {GroundKind::Omega};
  if (!inherited && (kind == "column" || kind == "graph" || kind == "below_graph" || kind == "column_set"))
    g = {GroundKind::OmegaSquared};
  if (j.contains("ground")) g = ground(text(j["ground"], path + ".ground"), path + ".ground");

  if (kind == "finite") {
    std::vector<Natural> codes;
    if (j.contains("codes")) codes = naturals(j["codes"], path + ".codes");
    if (j.contains("points")) {
      const Json& pts = array(j["points"], path + ".points");
      for (std::size_t i = 0; i < pts.size(); ++i) {
        auto nm = naturals(pts[i], path + ".points[" + std::to_string(i) + "]");
        if (nm.size() != 2) bad(path + ".points[" + std::to_string(i) + "]", "expected [n, m]");
        codes.push_back(pair_encode(nm[0], nm[1]));
      }
    }
    if (j.contains("words"))
      for (std::size_t i = 0; i < array(j["words"], path + ".words").size(); ++i)
        codes.push_back(qstring_code(text(j["words"][i], path + ".words[" + std::to_string(i) + "]")));
    return SymbolicSet::finite(g, codes);
  }
  if (kind == "cofinite") return SymbolicSet::cofinite(g, j.contains("excluded") ? naturals(j["excluded"], path + ".excluded") : std::vector<Natural>{});
  if (kind == "whole") return SymbolicSet::whole(g);
  if (kind == "empty") return SymbolicSet::empty(g);
  if (kind == "column") return SymbolicSet::column(g, natural(field(j, "n", path), path + ".n"));
  if (kind == "graph") return SymbolicSet::graph(g, function_spec(field(j, "f", path), path + ".f"));
  if (kind == "below_graph") return SymbolicSet::below_graph(g, function_spec(field(j, "f", path), path + ".f"));
  if (kind == "column_set") return SymbolicSet::column_set(g, generator_name(field(j, "rows", path), path + ".rows"));
  if (kind == "periodic") return SymbolicSet::periodic(generator_name(field(j, "set", path), path + ".set"));
  if (kind == "in_blocks")
    return SymbolicSet::in_blocks(partition(field(j, "partition", path), path + ".partition"),
                                  symbolic_set(field(j, "inner", path), path + ".inner", GroundSet{GroundKind::OmegaSquared}));
  if (kind == "regular") return SymbolicSet::regular(dfa(field(j, "dfa", path), path + ".dfa"));
  if (kind == "env") return SymbolicSet::env(env_set(field(j, "set", path), path + ".set"));
  for (auto [name, op] : {std::pair{"union", BoolOp::Union}, std::pair{"intersection", BoolOp::Intersection},
                          std::pair{"difference", BoolOp::Difference}})
    if (kind == name)
      return SymbolicSet::combine(op, symbolic_set(field(j, "left", path), path + ".left", g),
                                  symbolic_set(field(j, "right", path), path + ".right", g));
  bad(path + ".kind", "unknown set kind \"" + kind + "\"");
}

// -- ideals and verdicts --------------------------------------------------------

inline IdealId ideal(const std::string& name, const std::optional<IntervalPartition>& P, const std::string& path = "ideal") {
  if (name == "Fin") return IdealId::fin();
  if (name == "ED") return IdealId::ed();
  if (name == "EDfin") return IdealId::edfin();
  if (name == "FinXFin") return IdealId::finxfin();
  if (name == "nwd" || name == "NwdQ") return IdealId::nwd();
  if (name == "EDP") {
    if (!P) bad(path, "EDP needs a partition");
    return IdealId::edp(*P);
  }
  bad(path, "unknown ideal \"" + name + "\"");
}

inline Json to_json(const ResidueTail& t) {
  return Json{{"residue", t.residue}, {"modulus", t.modulus}, {"from", t.from},     {"infinite", t.infinite},
              {"empty", t.empty},     {"slope", t.slope},     {"intercept", t.intercept}};
}

inline Json to_json(const MembershipVerdict& v) {
  Json j{{"status", to_string(v.status)}};
  if (v.cover) {
    Json c{{"columns", v.cover->columns}, {"graphs", v.cover->graphs}, {"selectors", v.cover->selectors},
           {"finite", v.cover->finite}};
    c["below"] = v.cover->below ? to_json(*v.cover->below) : Json(nullptr);
    j["cover"] = c;
  }
  if (v.witness) {
    Json w{{"tail", to_json(v.witness->tail)}};
    w["column"] = v.witness->column ? Json(*v.witness->column) : Json(nullptr);
    w["dense_cone"] = v.witness->dense_cone ? Json(*v.witness->dense_cone) : Json(nullptr);
    j["witness"] = w;
  }
  Json values = Json::array();
  for (Natural x : v.profile.values) values.push_back(natural_or_null(x));
  j["profile"] = Json{{"unit", v.profile.unit}, {"values", values}};
  if (v.status == VerdictStatus::Unknown) j["depth"] = v.depth;
  return j;
}

// -- isomorphisms ----------------------------------------------------------------

inline Json to_json(const std::vector<Segment>& segs) {
  Json out = Json::array();
  for (const auto& s : segs) out.push_back({s.src, s.dst, s.len});
  return out;
}

inline std::vector<Segment> segments(const Json& j, const std::string& path = "segments") {
  std::vector<Segment> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) {
    auto v = naturals(j[i], path + "[" + std::to_string(i) + "]");
    if (v.size() != 3) bad(path + "[" + std::to_string(i) + "]", "expected [src, dst, len]");
    out.push_back({v[0], v[1], v[2]});
  }
  return out;
}

inline Json to_json(const IsoReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"kind", to_string(x.kind)}, {"index", x.index}, {"blocks", x.blocks}, {"complete", x.complete}});
  return Json{{"clean", r.clean()}, {"violations", v}, {"p_complete", r.p_complete}, {"r_complete", r.r_complete}};
}

// -- Katětov maps ----------------------------------------------------------------

inline KatetovMap katetov_map(const Json& j, const std::string& path = "map") {
  const std::string kind = text(field(j, "kind", path), path + ".kind");
  const GroundSet from = ground(text(field(j, "from", path), path + ".from"), path + ".from");
  if (kind == "projection") return KatetovMap::projection(from);
  const GroundSet to = ground(text(field(j, "to", path), path + ".to"), path + ".to");
  KatetovMap f;
  if (kind == "identity") {
    f = KatetovMap::identity(from, to);
  } else if (kind == "constant") {
    Natural code = 0;
    if (j.contains("point")) {
      auto nm = naturals(j["point"], path + ".point");
      if (nm.size() != 2) bad(path + ".point", "expected [n, m]");
      code = pair_encode(nm[0], nm[1]);
    } else {
      code = natural(field(j, "value", path), path + ".value");
    }
    f = KatetovMap::constant(from, to, code);
  } else {
    bad(path + ".kind", "unknown map kind \"" + kind + "\"");
  }
  f.validate();
  return f;
}

inline Json to_json(const KatetovMap& f) {
  Json j{{"kind", to_string(f.kind)}, {"from", ground_name(f.from.kind)}, {"to", ground_name(f.to.kind)}};
  if (f.kind == KatetovMap::Kind::Constant) j["value"] = f.value;
  return j;
}

inline Json to_json(const KatetovResult& r) {
  Json j{{"falsified", r.falsified}, {"depth", r.depth}, {"checked", r.checked}, {"unknown", r.unknown}};
  if (r.witness) {
    j["witness"] = Json{{"generator", r.witness->str()}, {"set", to_json(r.witness->set)}};
    j["verdict"] = to_json(*r.verdict);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

// -- independent families ------------------------------------------------------------

inline Json to_json(const Refinement& r) {
  Json pieces = Json::array();
  for (std::size_t n = 0; n < r.pieces.size(); ++n)
    pieces.push_back(Json{{"set", to_json(r.pieces[n])}, {"anchor", to_json(r.anchors[n])},
                          {"fresh", to_json(r.fresh[n])}, {"side", r.sides[n]}});
  return Json{{"pieces", pieces}};
}

inline Json to_json(const FusedCondition& q) {
  Json j = Json::object();
  for (const auto& [i, bit] : q) j[std::to_string(i)] = bit;
  return j;
}

inline FusedCondition fused_condition(const Json& j, const std::string& path = "condition") {
  if (!j.is_object()) bad(path, "expected an object {index: bit}");
  FusedCondition q;
  for (const auto& [key, bit] : j.items()) {
    std::size_t i = 0;
    try {
      i = std::stoul(key);
    } catch (const std::exception&) {
      bad(path + "." + key, "member index must be a natural number");
    }
    const Natural b = natural(bit, path + "." + key);
    if (b > 1) bad(path + "." + key, "expected 0 or 1");
    q[i] = static_cast<int>(b);
  }
  return q;
}

inline Json to_json(const FusedCertificate& c) { return Json{{"q", to_json(c.q)}, {"index", c.index}, {"bound", c.bound}}; }

inline Json to_json(const IndependenceReport& r) {
  Json dup = Json::array(), wf = Json::array(), un = Json::array(), patches = Json::array(), after = Json::array();
  for (auto [a, b] : r.duplicates) dup.push_back({a, b});
  for (const auto& p : r.witness_failures) wf.push_back(to_json(p));
  for (auto [a, b] : r.unseparated) un.push_back({a, b});
  for (auto [g, c] : r.patches) patches.push_back({{"generator", g}, {"code", c}});
  for (auto [a, b] : r.unseparated_after) after.push_back({a, b});
  return Json{{"clean", r.clean()},        {"conditions", r.conditions}, {"duplicates", dup}, {"witness_failures", wf},
              {"unseparated", un},         {"patches", patches},         {"unseparated_after", after}};
}

}  // namespace idealis::io
