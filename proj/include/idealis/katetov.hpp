#pragma once

#include <string>
#include <vector>

#include "idealis/ideals.hpp"

namespace idealis {

/// A map between ground sets presented by kind. Projection sends (n, m) to n.
struct KatetovMap {
  enum class Kind { Identity, Constant, Projection };
  Kind kind = Kind::Identity;
  GroundSet from;
  GroundSet to;
  Natural value = 0;  // Constant: the code of the image point in `to`

  static KatetovMap identity(GroundSet from, GroundSet to) { return {Kind::Identity, from, to, 0}; }
  static KatetovMap constant(GroundSet from, GroundSet to, Natural code) { return {Kind::Constant, from, to, code}; }
  static KatetovMap projection(GroundSet from) { return {Kind::Projection, from, {GroundKind::Omega}, 0}; }

  void validate() const {
    switch (kind) {
      case Kind::Identity:
        if (!(from == to) && !(from.kind == GroundKind::Delta && to.kind == GroundKind::OmegaSquared))
          fail(ErrorKind::Precondition, "identity map needs equal ground sets or △ ↪ ω²");
        break;
      case Kind::Constant:
        if (!to.contains_code(value)) fail(ErrorKind::Precondition, "constant map value is not a point of the target");
        break;
      case Kind::Projection:
        if (!from.planar() || to.kind != GroundKind::Omega) fail(ErrorKind::Precondition, "projection maps ω² or △ to ω");
        break;
    }
  }
};

inline std::string to_string(KatetovMap::Kind k) {
  switch (k) {
    case KatetovMap::Kind::Identity: return "identity";
    case KatetovMap::Kind::Constant: return "constant";
    case KatetovMap::Kind::Projection: return "projection";
  }
  return "?";
}

/// Strings v·0^k for k ≥ 0. Closed and nowhere dense in the ℚ-copy.
inline DFA word_then_zeros(const std::string& v) {
  // states 0..|v| read v, state |v| loops on 0, state |v|+1 is the sink
  using S = DFA::State;
  const S n = static_cast<S>(v.size()), sink = n + 1;
  DFA d{n + 2, 0, std::vector<bool>(n + 2, false), std::vector<std::array<S, 2>>(n + 2, {sink, sink})};
  for (S i = 0; i < n; ++i) d.delta[i][v[i] == '1' ? 1 : 0] = i + 1;
  d.delta[n] = {n, sink};
  d.accepting[n] = true;
  return d;
}

/// f⁻¹(A) as a symbolic set on f.from.
inline SymbolicSet pullback(const KatetovMap& f, const SymbolicSet& A) {
  using namespace set_nodes;
  f.validate();
  if (!(A.ground() == f.to)) fail(ErrorKind::Precondition, "pullback: set is not on the target ground set");
  switch (f.kind) {
    case KatetovMap::Kind::Identity: return A.on(f.from);
    case KatetovMap::Kind::Constant:
      return symbolic_member(A, f.value) ? SymbolicSet::whole(f.from) : SymbolicSet::empty(f.from);
    case KatetovMap::Kind::Projection: {
      if (auto* p = A.as<Periodic>()) return SymbolicSet::column_set(f.from, p->set);
      auto columns = [&](const std::vector<Natural>& rows) {
        SymbolicSet out = SymbolicSet::empty(f.from);
        for (Natural n : rows) out = out | SymbolicSet::column(f.from, n);
        return out;
      };
      if (auto* x = A.as<Finite>()) return columns(x->codes);
      if (auto* x = A.as<Cofinite>()) return SymbolicSet::whole(f.from) - columns(x->excluded);
      if (auto* b = A.as<Binary>()) return SymbolicSet::combine(b->op, pullback(f, *b->left), pullback(f, *b->right));
      fail(ErrorKind::UnsupportedPresentation, "projection pullback leaves the presentation class");
    }
  }
  fail(ErrorKind::Precondition, "unknown map kind");
}

/// One generator of an ideal, with the parameters that name it.
struct KatetovGenerator {
  std::string kind;  // Singleton, Column, Graph, BelowGraph, Selector, WordZeros
  Natural a = 0, b = 0;
  std::string word;
  SymbolicSet set;

  std::string str() const {
    if (kind == "Singleton" || kind == "Column") return kind + "(" + std::to_string(b) + ")";
    if (kind == "WordZeros") return "WordZeros(\"" + word + "\")";
    return kind + "(" + std::to_string(a) + "n+" + std::to_string(b) + ")";
  }
};

/// Generators of J at level t: functions a·n + b with a + b = t first, then the column or singleton t.
inline std::vector<KatetovGenerator> generators_at(const IdealId& J, GroundSet ground, Natural t) {
  std::vector<KatetovGenerator> out;
  auto affine_family = [&](const std::string& kind, auto make) {
    for (Natural a = 0; a <= t; ++a) out.push_back({kind, a, t - a, "", make(FunctionSpec::affine(a, t - a))});
  };
  switch (J.kind) {
    case IdealKind::Fin:
      if (ground.contains_code(t)) out.push_back({"Singleton", 0, t, "", SymbolicSet::finite(ground, {t})});
      break;
    case IdealKind::ED:
    case IdealKind::EDfin:
      affine_family("Graph", [&](FunctionSpec f) { return SymbolicSet::graph(ground, std::move(f)); });
      out.push_back({"Column", 0, t, "", SymbolicSet::column(ground, t)});
      break;
    case IdealKind::FinXFin:
      affine_family("BelowGraph", [&](FunctionSpec f) { return SymbolicSet::below_graph(ground, std::move(f)); });
      out.push_back({"Column", 0, t, "", SymbolicSet::column(ground, t)});
      break;
    case IdealKind::EDP:
      affine_family("Selector", [&](FunctionSpec f) {
        return SymbolicSet::in_blocks(*J.partition, SymbolicSet::graph({GroundKind::OmegaSquared}, std::move(f)));
      });
      break;
    case IdealKind::NwdQ: {
      const std::string v = qstring_decode(t);
      out.push_back({"WordZeros", 0, 0, v, SymbolicSet::regular(word_then_zeros(v))});
      break;
    }
  }
  return out;
}

struct KatetovResult {
  bool falsified = false;
  std::optional<KatetovGenerator> witness;  // the J-generator whose pullback is I-positive
  std::optional<MembershipVerdict> verdict;
  Natural depth = 0;
  Natural checked = 0;
  Natural unknown = 0;  // pullbacks the decider could not settle
};

/// Semi-decision for "f is a Katětov map from (from-ground, I) to (to-ground, J)": search
/// J-generators up to `depth` for one whose preimage is I-positive. Falsified is a proof;
/// Unfalsified is evidence only.
inline KatetovResult katetov_check(const KatetovMap& f, const IdealId& I, const IdealId& J, Natural depth) {
  f.validate();
  if (I.kind != IdealKind::Fin && !(I.ground() == f.from))
    fail(ErrorKind::Precondition, I.name() + " does not live on the domain of the map");
  if (J.kind != IdealKind::Fin && !(J.ground() == f.to))
    fail(ErrorKind::Precondition, J.name() + " does not live on the target of the map");
  KatetovResult r;
  r.depth = depth;
  for (Natural t = 0; t <= depth; ++t)
    for (auto& gen : generators_at(J, f.to, t)) {
      ++r.checked;
      MembershipVerdict v = decide(I, pullback(f, gen.set));
      if (v.status == VerdictStatus::Positive) {
        r.falsified = true;
        r.witness = std::move(gen);
        r.verdict = std::move(v);
        return r;
      }
      if (v.status == VerdictStatus::Unknown) ++r.unknown;
    }
  return r;
}

}  // namespace idealis
