#pragma once

#include <algorithm>
#include <iterator>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "idealis/codec.hpp"
#include "idealis/dfa.hpp"
#include "idealis/fk.hpp"
#include "idealis/function_spec.hpp"
#include "idealis/interval_partition.hpp"

namespace idealis {

enum class GroundKind { Omega, OmegaSquared, Delta, QStrings, FKPairs };

inline std::string to_string(GroundKind g) {
  switch (g) {
    case GroundKind::Omega: return "Omega";
    case GroundKind::OmegaSquared: return "OmegaSquared";
    case GroundKind::Delta: return "Delta";
    case GroundKind::QStrings: return "QStrings";
    case GroundKind::FKPairs: return "FKPairs";
  }
  return "?";
}

/// Ground sets ω², △ use Cantor codes (△ keeps the ω² code and filters m ≤ n);
/// QStrings uses length-lexicographic codes; FKPairs uses the FK point enumeration.
struct GroundSet {
  GroundKind kind = GroundKind::Omega;

  bool planar() const { return kind == GroundKind::OmegaSquared || kind == GroundKind::Delta; }

  /// Whether code k names a point of this ground set.
  bool contains_code(Natural k) const {
    if (kind != GroundKind::Delta) return true;
    auto [n, m] = pair_decode(k);
    return m <= n;
  }

  bool operator==(const GroundSet&) const = default;
};

inline constexpr std::size_t kMaxTreeDepth = 32;

class SymbolicSet;

namespace set_nodes {

struct Finite {
  std::vector<Natural> codes;  // sorted, distinct
};
struct Cofinite {
  std::vector<Natural> excluded;  // sorted, distinct
};
struct Column {
  Natural n;
};
struct Graph {
  FunctionSpec f;
};
struct BelowGraph {
  FunctionSpec f;
};
/// {(n, m) : n ∈ X}: the union of the columns indexed by an ultimately periodic set.
struct ColumnSet {
  GeneratorName rows;
};
/// An ultimately periodic subset of ω.
struct Periodic {
  GeneratorName set;
};
/// Subset of ω read through the block coordinates of a partition: k = start(P_n) + j ↦ (n, j).
struct InBlocks {
  IntervalPartition partition;
  std::shared_ptr<const SymbolicSet> inner;  // planar, OmegaSquared
};
struct Regular {
  DFA dfa;
};
struct Env {
  EnvSet set;
};
struct Binary {
  BoolOp op;
  std::shared_ptr<const SymbolicSet> left, right;
};

using Node = std::variant<Finite, Cofinite, Column, Graph, BelowGraph, ColumnSet, Periodic, InBlocks, Regular, Env, Binary>;

}  // namespace set_nodes

/// A finitely presented subset of a ground set. Immutable; copies share structure.
class SymbolicSet {
 public:
  using Node = set_nodes::Node;

  SymbolicSet() : SymbolicSet(GroundSet{}, set_nodes::Finite{}) {}

  SymbolicSet(GroundSet ground, Node node) : ground_(ground), node_(std::make_shared<const Node>(std::move(node))) {
    validate_node();
  }

  const GroundSet& ground() const { return ground_; }
  const Node& node() const { return *node_; }
  std::size_t depth() const { return depth_; }

  template <typename T>
  const T* as() const {
    return std::get_if<T>(node_.get());
  }

  // -- constructors ---------------------------------------------------------
  static SymbolicSet finite(GroundSet g, std::vector<Natural> codes) {
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return {g, set_nodes::Finite{std::move(codes)}};
  }
  static SymbolicSet cofinite(GroundSet g, std::vector<Natural> excluded = {}) {
    std::sort(excluded.begin(), excluded.end());
    excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
    return {g, set_nodes::Cofinite{std::move(excluded)}};
  }
  static SymbolicSet whole(GroundSet g) { return cofinite(g); }
  static SymbolicSet empty(GroundSet g) { return finite(g, {}); }
  static SymbolicSet column(GroundSet g, Natural n) { return {g, set_nodes::Column{n}}; }
  static SymbolicSet graph(GroundSet g, FunctionSpec f) { return {g, set_nodes::Graph{std::move(f)}}; }
  static SymbolicSet below_graph(GroundSet g, FunctionSpec f) { return {g, set_nodes::BelowGraph{std::move(f)}}; }
  static SymbolicSet column_set(GroundSet g, GeneratorName x) { return {g, set_nodes::ColumnSet{std::move(x)}}; }
  static SymbolicSet periodic(GeneratorName x) { return {GroundSet{GroundKind::Omega}, set_nodes::Periodic{std::move(x)}}; }
  static SymbolicSet in_blocks(IntervalPartition p, SymbolicSet inner) {
    return {GroundSet{GroundKind::Omega},
            set_nodes::InBlocks{std::move(p), std::make_shared<const SymbolicSet>(std::move(inner))}};
  }
  static SymbolicSet regular(DFA d) { return {GroundSet{GroundKind::QStrings}, set_nodes::Regular{std::move(d)}}; }
  static SymbolicSet env(EnvSet e) {
    normalize(e);
    return {GroundSet{GroundKind::FKPairs}, set_nodes::Env{std::move(e)}};
  }
  static SymbolicSet combine(BoolOp op, const SymbolicSet& l, const SymbolicSet& r) {
    if (!(l.ground() == r.ground())) fail(ErrorKind::Presentation, "boolean combination across ground sets");
    return {l.ground(), set_nodes::Binary{op, std::make_shared<const SymbolicSet>(l), std::make_shared<const SymbolicSet>(r)}};
  }

  friend SymbolicSet operator|(const SymbolicSet& l, const SymbolicSet& r) { return combine(BoolOp::Union, l, r); }
  friend SymbolicSet operator&(const SymbolicSet& l, const SymbolicSet& r) { return combine(BoolOp::Intersection, l, r); }
  friend SymbolicSet operator-(const SymbolicSet& l, const SymbolicSet& r) { return combine(BoolOp::Difference, l, r); }

  /// Same presentation, reinterpreted on another ground set (e.g. △ ↪ ω²).
  SymbolicSet on(GroundSet g) const {
    SymbolicSet s = *this;
    s.ground_ = g;
    s.rebind(g);
    return s;
  }

 private:
  void rebind(GroundSet g) {
    if (auto* b = std::get_if<set_nodes::Binary>(node_.get())) {
      set_nodes::Binary nb{b->op, std::make_shared<const SymbolicSet>(b->left->on(g)),
                           std::make_shared<const SymbolicSet>(b->right->on(g))};
      node_ = std::make_shared<const Node>(std::move(nb));
    }
    validate_node();
  }

  void validate_node() {
    using namespace set_nodes;
    const GroundKind k = ground_.kind;
    auto require = [&](bool ok, const char* what) {
      if (!ok) fail(ErrorKind::Presentation, std::string(what) + " is not available on ground " + to_string(k));
    };
    depth_ = 1;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Column>) require(ground_.planar(), "Column");
          if constexpr (std::is_same_v<T, Graph>) {
            require(ground_.planar(), "Graph");
            n.f.validate();
          }
          if constexpr (std::is_same_v<T, BelowGraph>) {
            require(ground_.planar(), "BelowGraph");
            n.f.validate();
          }
          if constexpr (std::is_same_v<T, ColumnSet>) require(ground_.planar(), "ColumnSet");
          if constexpr (std::is_same_v<T, Periodic>) require(k == GroundKind::Omega, "Periodic");
          if constexpr (std::is_same_v<T, InBlocks>) {
            require(k == GroundKind::Omega, "InBlocks");
            if (!n.inner || n.inner->ground().kind != GroundKind::OmegaSquared)
              fail(ErrorKind::Presentation, "InBlocks: inner set must live on OmegaSquared");
            depth_ = n.inner->depth() + 1;
          }
          if constexpr (std::is_same_v<T, Regular>) {
            require(k == GroundKind::QStrings, "Regular");
            n.dfa.validate();
          }
          if constexpr (std::is_same_v<T, Env>) require(k == GroundKind::FKPairs, "EnvSet");
          if constexpr (std::is_same_v<T, Binary>) {
            if (!(n.left->ground() == ground_) || !(n.right->ground() == ground_))
              fail(ErrorKind::Presentation, "boolean combination across ground sets");
            depth_ = std::max(n.left->depth(), n.right->depth()) + 1;
          }
        },
        *node_);
    if (depth_ > kMaxTreeDepth) fail(ErrorKind::Presentation, "set presentation deeper than 32");
  }

  GroundSet ground_;
  std::shared_ptr<const Node> node_;
  std::size_t depth_ = 1;
};

namespace set_detail {

inline bool member_node(const SymbolicSet& s, Natural k) {
  using namespace set_nodes;
  const GroundKind g = s.ground().kind;
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Finite>) {
          return std::binary_search(n.codes.begin(), n.codes.end(), k);
        } else if constexpr (std::is_same_v<T, Cofinite>) {
          return !std::binary_search(n.excluded.begin(), n.excluded.end(), k);
        } else if constexpr (std::is_same_v<T, Column>) {
          return pair_decode(k).first == n.n;
        } else if constexpr (std::is_same_v<T, Graph>) {
          auto [a, b] = pair_decode(k);
          return n.f(a) == b;
        } else if constexpr (std::is_same_v<T, BelowGraph>) {
          auto [a, b] = pair_decode(k);
          return b <= n.f(a);
        } else if constexpr (std::is_same_v<T, ColumnSet>) {
          return n.rows.contains(pair_decode(k).first);
        } else if constexpr (std::is_same_v<T, Periodic>) {
          return n.set.contains(k);
        } else if constexpr (std::is_same_v<T, InBlocks>) {
          const Natural b = n.partition.block_of(k);
          const Natural j = k - n.partition.start(b);
          return member_node(*n.inner, pair_encode(b, j));
        } else if constexpr (std::is_same_v<T, Regular>) {
          return n.dfa.accepts(qstring_decode(k));
        } else if constexpr (std::is_same_v<T, Env>) {
          return n.set.contains(fk_decode(k));
        } else {
          const bool l = member_node(*n.left, k);
          switch (n.op) {
            case BoolOp::Union: return l || member_node(*n.right, k);
            case BoolOp::Intersection: return l && member_node(*n.right, k);
            case BoolOp::Difference: return l && !member_node(*n.right, k);
          }
          return false;
        }
      },
      s.node());
  (void)g;
}

using Codes = std::vector<Natural>;

inline Codes merge_op(const Codes& a, const Codes& b, BoolOp op) {
  Codes out;
  switch (op) {
    case BoolOp::Union: std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out)); break;
    case BoolOp::Intersection:
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      break;
    case BoolOp::Difference: std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out)); break;
  }
  return out;
}

/// Enumerates a planar column family structurally: every code < N whose column lies in `rows`
/// and whose height passes `keep`.
template <typename RowPred, typename HeightPred>
Codes enumerate_planar(Natural N, RowPred rows, HeightPred keep) {
  Codes out;
  for (Natural n = 0;; ++n) {
    const Natural base = pair_encode(n, 0);
    if (base >= N) break;
    if (!rows(n)) continue;
    for (Natural m = 0;; ++m) {
      const Natural k = pair_encode(n, m);
      if (k >= N) break;
      if (keep(n, m)) out.push_back(k);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Codes enumerate_node(const SymbolicSet& s, Natural N) {
  using namespace set_nodes;
  return std::visit(
      [&](const auto& n) -> Codes {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Finite>) {
          Codes out;
          for (Natural k : n.codes)
            if (k < N) out.push_back(k);
          return out;
        } else if constexpr (std::is_same_v<T, Cofinite>) {
          Codes out;
          for (Natural k = 0; k < N; ++k)
            if (!std::binary_search(n.excluded.begin(), n.excluded.end(), k)) out.push_back(k);
          return out;
        } else if constexpr (std::is_same_v<T, Column>) {
          Codes out;
          for (Natural m = 0;; ++m) {
            const Natural k = pair_encode(n.n, m);
            if (k >= N) break;
            out.push_back(k);
          }
          return out;
        } else if constexpr (std::is_same_v<T, Graph>) {
          Codes out;
          for (Natural a = 0; pair_encode(a, 0) < N; ++a) {
            const Natural v = n.f(a);
            if (v < N && pair_encode(a, v) < N) out.push_back(pair_encode(a, v));
          }
          std::sort(out.begin(), out.end());
          return out;
        } else if constexpr (std::is_same_v<T, BelowGraph>) {
          return enumerate_planar(N, [](Natural) { return true; }, [&](Natural a, Natural m) { return m <= n.f(a); });
        } else if constexpr (std::is_same_v<T, ColumnSet>) {
          return enumerate_planar(N, [&](Natural a) { return n.rows.contains(a); }, [](Natural, Natural) { return true; });
        } else if constexpr (std::is_same_v<T, Periodic>) {
          Codes out;
          for (Natural k = 0; k < N; ++k)
            if (n.set.contains(k)) out.push_back(k);
          return out;
        } else if constexpr (std::is_same_v<T, InBlocks>) {
          Codes out;
          for (Natural b = 0; n.partition.start(b) < N; ++b) {
            const Block<> blk = n.partition.block(b);
            for (Natural j = 0; j < blk.length && blk.start + j < N; ++j)
              if (member_node(*n.inner, pair_encode(b, j))) out.push_back(blk.start + j);
          }
          return out;
        } else if constexpr (std::is_same_v<T, Regular>) {
          Codes out;
          for (Natural k = 0; k < N; ++k)
            if (n.dfa.accepts(qstring_decode(k))) out.push_back(k);
          return out;
        } else if constexpr (std::is_same_v<T, Env>) {
          Codes out;
          for (Natural k = 0; k < N; ++k)
            if (n.set.contains(fk_decode(k))) out.push_back(k);
          return out;
        } else {
          return merge_op(enumerate_node(*n.left, N), enumerate_node(*n.right, N), n.op);
        }
      },
      s.node());
}

}  // namespace set_detail

/// Decides whether code k lies in S. Codes outside the ground set (△ codes with m > n) are never members.
inline bool symbolic_member(const SymbolicSet& s, Natural k) {
  if (!s.ground().contains_code(k)) return false;
  return set_detail::member_node(s, k);
}

/// {k < N : k ∈ S}, computed by a structural enumerator independent of symbolic_member at the leaves.
inline std::vector<Natural> truncate(const SymbolicSet& s, Natural N) {
  auto out = set_detail::enumerate_node(s, N);
  if (s.ground().kind == GroundKind::Delta) std::erase_if(out, [&](Natural k) { return !s.ground().contains_code(k); });
  return out;
}

}  // namespace idealis
