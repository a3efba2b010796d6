#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "forge/base_group.hpp"

namespace forge {

/// A point (equivalently an element) of the ambient group G0 + Z:
/// a base normal form and the exponent of the central letter z.
struct AmbientElement {
  BaseElement base;
  std::int64_t zexp = 0;

  bool operator==(const AmbientElement& o) const {
    return zexp == o.zexp && base == o.base;
  }
  /// Canonical value order: (zexp, base lex). Used for serialization.
  bool operator<(const AmbientElement& o) const {
    if (zexp != o.zexp) return zexp < o.zexp;
    return base < o.base;
  }
};

/// Interned point handle. Ids are dense and stable within one GroupContext.
using PointId = std::uint32_t;
inline constexpr PointId kNoPoint = 0xffffffffu;

struct AmbientHash {
  std::size_t operator()(const AmbientElement& a) const;
};

/// One generator of S = S0 + {z}: a stable name and its point value.
struct SGen {
  std::string name;
  PointId value = 0;
  PointId inverse = 0;
};

/// Ball of the ambient Cayley graph: members in BFS discovery order with
/// canonical geodesics (parent links). Exploration order is S0 order, then
/// z, then the inverses in the same order; the first-discovered word is the
/// canonical geodesic.
struct AmbientBall {
  std::int64_t radius = 0;
  std::vector<PointId> members;
  std::vector<std::int32_t> parent;     // index into members, -1 for identity
  std::vector<std::int16_t> parent_sym; // symbol used to reach the member
  std::unordered_map<PointId, std::uint32_t> index;

  bool contains(PointId p) const { return index.count(p) != 0; }
};

/// Owns the base spec, the point interning table, and the geodesic caches.
/// All permutation-side machinery identifies points through this context.
/// Single-threaded by design; interning grows monotonically.
class GroupContext {
 public:
  explicit GroupContext(BaseGroupSpec spec);
  explicit GroupContext(const std::string& spec_text)
      : GroupContext(parse_base_spec(spec_text)) {}

  const BaseGroupSpec& spec() const { return spec_; }
  std::string spec_string() const { return to_string(spec_); }

  PointId identity() const { return identity_; }
  PointId intern(const AmbientElement& e);
  const AmbientElement& point(PointId p) const { return points_[p]; }
  std::size_t interned_count() const { return points_.size(); }

  PointId mul(PointId a, PointId b);
  PointId inv(PointId a);
  PointId z_power(std::int64_t k);
  /// base generator by index, as a point
  PointId base_point(std::size_t gen_index) const { return s_gens_[gen_index].value; }

  /// S-word norm. Splits as base norm + |zexp| because z generates a central
  /// free factor.
  std::int64_t norm(PointId a);

  /// Generators of S: the base generators in positional order, then z.
  const std::vector<SGen>& s_generators() const { return s_gens_; }
  std::size_t z_index() const { return s_gens_.size() - 1; }

  /// Cached BFS ball of the given radius (supersets are reused).
  const AmbientBall& ball(std::int64_t radius);

  /// Canonical geodesic of a ball member, as (generator index, sign) letters.
  std::vector<std::pair<int, int>> geodesic(const AmbientBall& ball, PointId p) const;

  /// Point literal grammar: `id`, `a`, `a*z^3`, `z^-2`.
  PointId parse_point(const std::string& text);
  std::string point_literal(PointId p) const;

 private:
  BaseGroupSpec spec_;
  std::vector<AmbientElement> points_;
  std::unordered_map<AmbientElement, PointId, AmbientHash> ids_;
  std::vector<SGen> s_gens_;
  PointId identity_ = 0;
  std::unordered_map<std::uint64_t, PointId> mul_memo_;
  std::vector<PointId> inv_memo_;
  std::vector<std::int64_t> norm_memo_;
  // one BFS that only ever grows; per-radius balls are prefix snapshots
  AmbientBall core_;
  std::vector<std::size_t> layer_end_;  // members below radius r+1
  std::map<std::int64_t, AmbientBall> snapshots_;
};

}  // namespace forge
