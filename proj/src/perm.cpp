#include "forge/perm.hpp"

#include <algorithm>

#include "forge/errors.hpp"

namespace forge {

FinPerm FinPerm::from_pairs(std::vector<Pair> pairs) {
  std::vector<Pair> kept;
  kept.reserve(pairs.size());
  for (auto& [x, y] : pairs)
    if (x != y) kept.emplace_back(x, y);
  std::sort(kept.begin(), kept.end());
  for (std::size_t i = 1; i < kept.size(); ++i)
    if (kept[i].first == kept[i - 1].first)
      throw std::invalid_argument("duplicate domain point in permutation");
  // bijectivity: the image multiset must equal the domain set
  std::vector<PointId> range;
  range.reserve(kept.size());
  for (auto& [x, y] : kept) {
    (void)x;
    range.push_back(y);
  }
  std::sort(range.begin(), range.end());
  for (std::size_t i = 0; i < kept.size(); ++i)
    if (range[i] != kept[i].first)
      throw std::invalid_argument("mapping is not a bijection of its support");
  FinPerm p;
  p.map_ = std::move(kept);
  return p;
}

FinPerm FinPerm::transposition(PointId x, PointId y) {
  if (x == y) throw std::invalid_argument("transposition needs two distinct points");
  FinPerm p;
  p.map_ = {{std::min(x, y), std::max(x, y)}, {std::max(x, y), std::min(x, y)}};
  std::sort(p.map_.begin(), p.map_.end());
  return p;
}

PointId apply_pairs(std::span<const FinPerm::Pair> pairs, PointId x) {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), x,
                             [](const FinPerm::Pair& p, PointId v) { return p.first < v; });
  if (it != pairs.end() && it->first == x) return it->second;
  return x;
}

PointId FinPerm::apply(PointId x) const { return apply_pairs(map_, x); }

FinPerm FinPerm::inverse() const {
  std::vector<Pair> inv;
  inv.reserve(map_.size());
  for (auto& [x, y] : map_) inv.emplace_back(y, x);
  std::sort(inv.begin(), inv.end());
  FinPerm p;
  p.map_ = std::move(inv);
  return p;
}

FinPerm perm_compose(const FinPerm& p, const FinPerm& q) {
  // domain of the result is contained in dom(p) | dom(q)
  std::vector<FinPerm::Pair> out;
  out.reserve(p.pairs().size() + q.pairs().size());
  for (auto& [x, y] : q.pairs()) {
    PointId z = p.apply(y);
    if (z != x) out.emplace_back(x, z);
  }
  for (auto& [x, y] : p.pairs()) {
    if (apply_pairs(q.pairs(), x) != x) continue;  // already handled above
    if (y != x) out.emplace_back(x, y);
  }
  std::sort(out.begin(), out.end());
  FinPerm r;
  // trusted construction: inputs are bijections, so the merge is one too
  r = FinPerm::from_pairs(std::move(out));
  return r;
}

FinPerm perm_conjugate_by_translation(GroupContext& ctx, const FinPerm& p, PointId g) {
  std::vector<FinPerm::Pair> out;
  out.reserve(p.pairs().size());
  for (auto& [x, y] : p.pairs()) out.emplace_back(ctx.mul(g, x), ctx.mul(g, y));
  std::sort(out.begin(), out.end());
  return FinPerm::from_pairs(std::move(out));
}

FinPerm indexed_to_finperm(GroupContext& ctx, const IndexedInvolution& v) {
  std::vector<FinPerm::Pair> pairs;
  if (v.s == "z") {
    for (auto m : v.indices) {
      if (m % 2 != 0)
        throw std::invalid_argument("z-indexed involution requires even indices");
      PointId a = ctx.z_power(m);
      PointId b = ctx.z_power(m + 1);
      pairs.emplace_back(a, b);
      pairs.emplace_back(b, a);
    }
  } else {
    const SGen* gen = nullptr;
    for (auto& g : ctx.s_generators())
      if (g.name == v.s) { gen = &g; break; }
    if (!gen) throw std::invalid_argument("unknown generator name '" + v.s + "'");
    for (auto m : v.indices) {
      PointId a = ctx.z_power(m);
      PointId b = ctx.mul(a, gen->value);
      pairs.emplace_back(a, b);
      pairs.emplace_back(b, a);
    }
  }
  return FinPerm::from_pairs(std::move(pairs));
}

std::vector<std::int64_t> shift_xor_indices(const std::vector<std::int64_t>& indices,
                                            std::int64_t shift) {
  std::vector<std::int64_t> shifted;
  shifted.reserve(indices.size());
  for (auto m : indices) shifted.push_back(m + shift);
  std::vector<std::int64_t> out;
  std::set_symmetric_difference(indices.begin(), indices.end(), shifted.begin(),
                                shifted.end(), std::back_inserter(out));
  return out;
}

IndexedInvolution indexed_shift_xor(const IndexedInvolution& v, std::int64_t shift) {
  if (shift <= 0) throw std::invalid_argument("shift must be positive");
  if (v.s == "z" && shift % 2 != 0)
    throw std::invalid_argument("z-indexed involution requires an even shift");
  return IndexedInvolution{v.s, shift_xor_indices(v.indices, shift)};
}

}  // namespace forge
