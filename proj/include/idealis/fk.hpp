#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "idealis/codec.hpp"
#include "idealis/core.hpp"

// Ground-set types for the Fichtenholz–Kantorovich independent family:
// points (F, Φ) with F ⊆ ω finite and Φ ⊆ 𝒫(F); generator A_X = {(F, Φ) : X ∩ F ∈ Φ}.

namespace idealis {

/// An ultimately periodic subset of ω: bit i of prefix·period^ω. Stored in canonical form,
/// so two names denote the same set iff they compare equal.
class GeneratorName {
 public:
  GeneratorName() : GeneratorName("", "0") {}

  GeneratorName(std::string prefix, std::string period) : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (period_.empty()) fail(ErrorKind::Presentation, "generator name: empty period");
    if (!is_binary_word(prefix_) || !is_binary_word(period_))
      fail(ErrorKind::Presentation, "generator name: words must be over {0,1}");
    canonicalize();
    for (int i = 0; i < 64; ++i)
      if (contains(static_cast<Natural>(i))) low_mask_ |= std::uint64_t{1} << i;
  }

  const std::string& prefix() const { return prefix_; }
  const std::string& period() const { return period_; }

  bool contains(Natural i) const {
    if (i < prefix_.size()) return prefix_[static_cast<std::size_t>(i)] == '1';
    return period_[static_cast<std::size_t>((i - prefix_.size()) % period_.size())] == '1';
  }

  /// Membership bits for 0..63.
  std::uint64_t low_mask() const { return low_mask_; }

  /// Word length of the presentation; the horizon used for witness construction.
  std::size_t word_length() const { return prefix_.size() + period_.size(); }

  bool infinite() const { return period_.find('1') != std::string::npos; }
  bool cofinite() const { return period_.find('0') == std::string::npos; }

  std::string str() const { return prefix_ + "(" + period_ + ")"; }

  auto operator<=>(const GeneratorName& o) const {
    if (auto c = prefix_.size() + period_.size() <=> o.prefix_.size() + o.period_.size(); c != 0) return c;
    if (auto c = prefix_ <=> o.prefix_; c != 0) return c;
    return period_ <=> o.period_;
  }
  bool operator==(const GeneratorName& o) const { return prefix_ == o.prefix_ && period_ == o.period_; }

 private:
  void canonicalize() {
    // primitive root of the period
    const std::size_t n = period_.size();
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      bool ok = true;
      for (std::size_t i = d; i < n && ok; ++i) ok = period_[i] == period_[i - d];
      if (ok) {
        period_.resize(d);
        break;
      }
    }
    // absorb prefix tail into the period by rotation
    while (!prefix_.empty() && prefix_.back() == period_.back()) {
      prefix_.pop_back();
      period_ = period_.back() + period_.substr(0, period_.size() - 1);
    }
  }

  std::string prefix_;
  std::string period_;
  std::uint64_t low_mask_ = 0;
};

/// Point (F, Φ) of the FK ground set. F ⊆ [0, 64) as a bit mask; Φ as sorted absolute subset masks.
struct FKPoint {
  std::uint64_t F = 0;
  std::vector<std::uint64_t> Phi;  // sorted, distinct, each a subset of F

  void validate() const {
    for (std::size_t i = 0; i < Phi.size(); ++i) {
      if ((Phi[i] & ~F) != 0) fail(ErrorKind::Presentation, "FK point: member of Φ is not a subset of F");
      if (i > 0 && Phi[i - 1] >= Phi[i]) fail(ErrorKind::Presentation, "FK point: Φ not sorted/distinct");
    }
  }

  bool phi_contains(std::uint64_t subset) const { return std::binary_search(Phi.begin(), Phi.end(), subset); }

  int max_element() const { return F == 0 ? -1 : 63 - std::countl_zero(F); }

  std::vector<Natural> elements() const {
    std::vector<Natural> out;
    for (int i = 0; i < 64; ++i)
      if ((F >> i) & 1) out.push_back(static_cast<Natural>(i));
    return out;
  }

  bool operator==(const FKPoint&) const = default;
};

/// Code order: max(F), then the mask of F, then Φ read as a bit mask over 𝒫(F).
inline std::strong_ordering code_order(const FKPoint& x, const FKPoint& y) {
  if (auto c = x.max_element() <=> y.max_element(); c != 0) return c;
  if (auto c = x.F <=> y.F; c != 0) return c;
  // Φ values compare by the largest subset in the symmetric difference.
  auto i = x.Phi.rbegin(), j = y.Phi.rbegin();
  while (i != x.Phi.rend() && j != y.Phi.rend()) {
    if (*i != *j) return *i <=> *j;
    ++i;
    ++j;
  }
  if (i != x.Phi.rend()) return std::strong_ordering::greater;
  if (j != y.Phi.rend()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

struct FKCodeLess {
  bool operator()(const FKPoint& x, const FKPoint& y) const { return code_order(x, y) < 0; }
};

namespace fk_detail {

/// Position of `subset` among the subsets of F ordered by mask (bit-compression).
inline std::uint64_t relative_index(std::uint64_t F, std::uint64_t subset) {
  std::uint64_t rel = 0;
  int j = 0;
  for (int i = 0; i < 64; ++i) {
    if ((F >> i) & 1) {
      if ((subset >> i) & 1) rel |= std::uint64_t{1} << j;
      ++j;
    }
  }
  return rel;
}

inline std::uint64_t absolute_subset(std::uint64_t F, std::uint64_t rel) {
  std::uint64_t abs = 0;
  int j = 0;
  for (int i = 0; i < 64; ++i) {
    if ((F >> i) & 1) {
      if ((rel >> j) & 1) abs |= std::uint64_t{1} << i;
      ++j;
    }
  }
  return abs;
}

inline BigNat pow2_pow2(unsigned k) {
  BigNat x = 1;
  x <<= (std::size_t{1} << k);
  return x;
}

inline BigNat binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigNat r = 1;
  for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

inline constexpr int kMaxCodeFSize = 16;

/// Number of points whose F has maximum exactly M (M = -1 for F = ∅).
inline BigNat points_with_max(int M) {
  if (M < 0) return 2;
  BigNat total = 0;
  for (int j = 0; j <= M; ++j) {
    if (j + 1 > kMaxCodeFSize) fail(ErrorKind::Budget, "FK code beyond representable range");
    total += binomial(static_cast<unsigned>(M), static_cast<unsigned>(j)) * pow2_pow2(static_cast<unsigned>(j + 1));
  }
  return total;
}

}  // namespace fk_detail

/// The code of a point under the fixed enumeration (max(F), F mask, Φ value).
inline BigNat fk_encode(const FKPoint& p) {
  using namespace fk_detail;
  const int M = p.max_element();
  if (std::popcount(p.F) > kMaxCodeFSize) fail(ErrorKind::Budget, "FK code beyond representable range");
  BigNat code = 0;
  for (int m = -1; m < M; ++m) code += points_with_max(m);
  if (M >= 0) {
    // masks F'' over [0, M) smaller than F' = F without M
    const std::uint64_t rest = p.F & ~(std::uint64_t{1} << M);
    int ones = 0;
    for (int i = M - 1; i >= 0; --i) {
      if ((rest >> i) & 1) {
        for (int j = 0; j <= i; ++j)
          code += binomial(static_cast<unsigned>(i), static_cast<unsigned>(j)) *
                  pow2_pow2(static_cast<unsigned>(ones + j + 1));
        ++ones;
      }
    }
  }
  for (std::uint64_t s : p.Phi) {
    BigNat bit = 1;
    bit <<= relative_index(p.F, s);
    code += bit;
  }
  return code;
}

inline FKPoint fk_decode(Natural code) {
  using namespace fk_detail;
  BigNat k = code;
  int M = -1;
  while (true) {
    BigNat c = points_with_max(M);
    if (k < c) break;
    k -= c;
    ++M;
  }
  FKPoint p;
  if (M >= 0) {
    const std::uint64_t top = std::uint64_t{1} << M;
    for (std::uint64_t rest = 0; rest < top; ++rest) {
      BigNat c = pow2_pow2(static_cast<unsigned>(std::popcount(rest) + 1));
      if (k < c) {
        p.F = rest | top;
        break;
      }
      k -= c;
    }
  }
  const int size = std::popcount(p.F);
  for (std::uint64_t rel = 0; rel < (std::uint64_t{1} << size); ++rel)
    if (boost::multiprecision::bit_test(k, static_cast<unsigned>(rel))) p.Phi.push_back(absolute_subset(p.F, rel));
  std::sort(p.Phi.begin(), p.Phi.end());
  return p;
}

/// X ∩ F as an absolute mask.
inline std::uint64_t trace(const GeneratorName& x, std::uint64_t F) { return x.low_mask() & F; }

/// A finite partial map from generator names to {0,1}; 0 selects A, 1 selects ω ∖ A.
using EnvCondition = std::map<GeneratorName, int>;

inline bool compatible(const EnvCondition& p, const EnvCondition& q) {
  auto i = p.begin();
  auto j = q.begin();
  while (i != p.end() && j != q.end()) {
    if (i->first < j->first)
      ++i;
    else if (j->first < i->first)
      ++j;
    else {
      if (i->second != j->second) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

/// q ⊇ p as partial functions (so B^q ⊆ B^p).
inline bool extends(const EnvCondition& q, const EnvCondition& p) {
  for (const auto& [name, bit] : p) {
    auto it = q.find(name);
    if (it == q.end() || it->second != bit) return false;
  }
  return true;
}

inline EnvCondition merge(const EnvCondition& p, const EnvCondition& q) {
  EnvCondition r = p;
  for (const auto& [name, bit] : q) {
    auto [it, fresh] = r.emplace(name, bit);
    if (!fresh && it->second != bit) fail(ErrorKind::Precondition, "merging incompatible conditions");
  }
  return r;
}

inline bool generator_member(const GeneratorName& x, const FKPoint& point) {
  return point.phi_contains(trace(x, point.F));
}

inline bool in_condition(const EnvCondition& p, const FKPoint& point) {
  for (const auto& [name, bit] : p)
    if (generator_member(name, point) != (bit == 0)) return false;
  return true;
}

/// A finite union of sets B^p, with finitely many points added and removed.
struct EnvSet {
  std::vector<EnvCondition> conditions;
  std::vector<FKPoint> additions;  // sorted in code order
  std::vector<FKPoint> deletions;  // sorted in code order

  static EnvSet whole() { return EnvSet{{EnvCondition{}}, {}, {}}; }
  static EnvSet of(EnvCondition p) { return EnvSet{{std::move(p)}, {}, {}}; }

  bool contains(const FKPoint& x) const {
    if (std::binary_search(additions.begin(), additions.end(), x, FKCodeLess{})) return true;
    if (std::binary_search(deletions.begin(), deletions.end(), x, FKCodeLess{})) return false;
    for (const auto& c : conditions)
      if (in_condition(c, x)) return true;
    return false;
  }

  bool operator==(const EnvSet&) const = default;
};

inline void normalize(EnvSet& s) {
  auto& cs = s.conditions;
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    // drop conditions subsumed by a weaker one
    for (std::size_t i = 0; i < cs.size() && !changed; ++i)
      for (std::size_t j = 0; j < cs.size() && !changed; ++j)
        if (i != j && extends(cs[i], cs[j])) {
          cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
        }
    // merge x ∪ {A↦0} with x ∪ {A↦1}
    for (std::size_t i = 0; i < cs.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < cs.size() && !changed; ++j) {
        if (cs[i].size() != cs[j].size()) continue;
        const GeneratorName* flip = nullptr;
        bool ok = true;
        for (auto a = cs[i].begin(), b = cs[j].begin(); a != cs[i].end(); ++a, ++b) {
          if (!(a->first == b->first)) {
            ok = false;
            break;
          }
          if (a->second != b->second) {
            if (flip) {
              ok = false;
              break;
            }
            flip = &a->first;
          }
        }
        if (ok && flip) {
          EnvCondition m = cs[i];
          m.erase(*flip);
          cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(j));
          cs[i] = std::move(m);
          changed = true;
        }
      }
  }
  auto sort_points = [](std::vector<FKPoint>& v) {
    std::sort(v.begin(), v.end(), FKCodeLess{});
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  sort_points(s.additions);
  sort_points(s.deletions);
  std::vector<FKPoint> kept;
  for (auto& d : s.deletions)
    if (!std::binary_search(s.additions.begin(), s.additions.end(), d, FKCodeLess{})) kept.push_back(d);
  s.deletions = std::move(kept);
}

}  // namespace idealis
