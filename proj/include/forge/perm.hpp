#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "forge/ambient.hpp"

namespace forge {

/// Finitely supported permutation of the ambient point set, stored as the
/// sorted list of (point, image) pairs with every fixed point omitted. The
/// stored domain therefore equals the support exactly, and equality of the
/// stored mappings is equality in Sym(G).
class FinPerm {
 public:
  using Pair = std::pair<PointId, PointId>;

  FinPerm() = default;

  /// Builds from arbitrary pairs; drops fixed points, validates bijectivity
  /// (domain = range as sets). Throws std::invalid_argument on malformed input.
  static FinPerm from_pairs(std::vector<Pair> pairs);

  /// Single transposition x <-> y.
  static FinPerm transposition(PointId x, PointId y);

  bool is_identity() const { return map_.empty(); }
  std::size_t support_size() const { return map_.size(); }
  const std::vector<Pair>& pairs() const { return map_; }

  PointId apply(PointId x) const;
  FinPerm inverse() const;

  bool operator==(const FinPerm& o) const { return map_ == o.map_; }
  bool operator!=(const FinPerm& o) const { return map_ != o.map_; }

 private:
  std::vector<Pair> map_;  // sorted by domain id, no fixed points
};

/// x -> p(q(x)). Support is contained in Supp(p) union Supp(q).
FinPerm perm_compose(const FinPerm& p, const FinPerm& q);

/// x -> g p(g^-1 x); the support is the g-translate of Supp(p).
FinPerm perm_conjugate_by_translation(GroupContext& ctx, const FinPerm& p, PointId g);

/// Pointwise apply for raw sorted pair slices (shared with the ball arena).
PointId apply_pairs(std::span<const FinPerm::Pair> pairs, PointId x);

/// An involution given by a generator letter and a set of integer shifts:
///   s in S0: product over m in indices of the transposition (z^m, z^m s)
///   s = z:   product over m in indices of (z^m, z^(m+1)), all m even
/// The evenness requirement for s = z keeps the transpositions disjoint.
struct IndexedInvolution {
  std::string s;                      // generator name ("a", ..., or "z")
  std::vector<std::int64_t> indices;  // sorted, distinct

  bool operator==(const IndexedInvolution& o) const {
    return s == o.s && indices == o.indices;
  }
};

/// Materializes the product of the disjoint transpositions.
/// Throws std::invalid_argument on an odd index for s = z.
FinPerm indexed_to_finperm(GroupContext& ctx, const IndexedInvolution& v);

/// indices' = indices xor (indices + shift), the index-set image of
/// multiplying the z^shift conjugate with the original. Coinciding indices
/// cancel (equal transpositions annihilate); when the shifted copy is
/// disjoint this is a plain union. Requires shift > 0, and an even shift
/// for s = z.
IndexedInvolution indexed_shift_xor(const IndexedInvolution& v, std::int64_t shift);

/// Plain sorted-set symmetric difference of J and J + shift.
std::vector<std::int64_t> shift_xor_indices(const std::vector<std::int64_t>& indices,
                                            std::int64_t shift);

}  // namespace forge
