#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "forge/perm.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

FinPerm transposition_points(GroupContext& ctx, const AmbientElement& x,
                             const AmbientElement& y) {
  return FinPerm::transposition(ctx.intern(x), ctx.intern(y));
}

}  // namespace

TEST_CASE("composition basics") {
  GroupContext ctx("cyclic:2");
  PointId id = ctx.identity();
  PointId a = ctx.base_point(0);
  PointId z = ctx.z_power(1);
  PointId za = ctx.mul(z, a);

  FinPerm t_ida = FinPerm::transposition(id, a);
  CHECK(perm_compose(t_ida, t_ida).is_identity());

  FinPerm t_zza = FinPerm::transposition(z, za);
  FinPerm dbl = perm_compose(t_ida, t_zza);
  CHECK(dbl.support_size() == 4);
  CHECK(dbl.apply(id) == a);
  CHECK(dbl.apply(z) == za);

  // two transpositions sharing one point make a 3-cycle
  FinPerm t_az = FinPerm::transposition(a, z);
  FinPerm cycle = perm_compose(t_ida, t_az);
  CHECK(cycle.apply(id) == a);
  CHECK(cycle.apply(a) == z);
  CHECK(cycle.apply(z) == id);
  auto oracle = oracles::compose_maps(oracles::perm_as_map(t_ida),
                                      oracles::perm_as_map(t_az));
  for (auto& [x, y] : oracle) CHECK(cycle.apply(x) == y);
  CHECK(oracle.size() == cycle.support_size());
}

TEST_CASE("translation conjugation shifts supports") {
  GroupContext ctx("cyclic:2");
  PointId id = ctx.identity();
  PointId a = ctx.base_point(0);
  PointId z = ctx.z_power(1);

  FinPerm t = FinPerm::transposition(id, a);
  FinPerm shifted = perm_conjugate_by_translation(ctx, t, z);
  CHECK(shifted == FinPerm::transposition(z, ctx.mul(z, a)));
  CHECK(perm_conjugate_by_translation(ctx, t, id) == t);

  FinPerm tz = FinPerm::transposition(id, z);
  CHECK(perm_conjugate_by_translation(ctx, tz, ctx.z_power(2)) ==
        FinPerm::transposition(ctx.z_power(2), ctx.z_power(3)));
}

TEST_CASE("indexed involutions materialize as transposition products") {
  GroupContext ctx("cyclic:2");
  CHECK(indexed_to_finperm(ctx, {"a", {0}}) ==
        transposition_points(ctx, {{0}, 0}, {{1}, 0}));
  CHECK(indexed_to_finperm(ctx, {"z", {0}}) ==
        transposition_points(ctx, {{0}, 0}, {{0}, 1}));

  FinPerm two = indexed_to_finperm(ctx, {"a", {0, 2}});
  FinPerm oracle = perm_compose(transposition_points(ctx, {{0}, 0}, {{1}, 0}),
                                transposition_points(ctx, {{0}, 2}, {{1}, 2}));
  CHECK(two == oracle);

  CHECK_THROWS_AS(indexed_to_finperm(ctx, {"z", {1}}), std::invalid_argument);
  CHECK_THROWS_AS(indexed_to_finperm(ctx, {"q", {0}}), std::invalid_argument);
}

TEST_CASE("shift-xor matches group multiplication") {
  GroupContext ctx("cyclic:2");
  CHECK(indexed_shift_xor({"a", {0}}, 2).indices == std::vector<std::int64_t>{0, 2});
  CHECK(indexed_shift_xor({"a", {0, 2}}, 2).indices == std::vector<std::int64_t>{0, 4});
  CHECK(indexed_shift_xor({"a", {0, 2}}, 6).indices ==
        std::vector<std::int64_t>{0, 2, 6, 8});

  // the cancellation case against the composition route
  {
    IndexedInvolution v{"a", {0, 2}};
    FinPerm lhs = indexed_to_finperm(ctx, indexed_shift_xor(v, 2));
    FinPerm f = indexed_to_finperm(ctx, v);
    FinPerm rhs = perm_compose(perm_conjugate_by_translation(ctx, f, ctx.z_power(2)), f);
    CHECK(lhs == rhs);
  }

  CHECK_THROWS_AS(indexed_shift_xor({"a", {0}}, 0), std::invalid_argument);
  CHECK_THROWS_AS(indexed_shift_xor({"z", {0}}, 3), std::invalid_argument);
}

TEST_CASE("encoding homomorphy, exhaustively over small boxes") {
  GroupContext ctx("cyclic:3");
  // s in the base: all subsets of {0..7} and shifts 1..16
  for (unsigned mask = 0; mask < 256; ++mask) {
    std::vector<std::int64_t> indices;
    for (int bit = 0; bit < 8; ++bit)
      if (mask & (1u << bit)) indices.push_back(bit);
    if (indices.empty()) continue;
    IndexedInvolution v{"a", indices};
    FinPerm f = indexed_to_finperm(ctx, v);
    CHECK(perm_compose(f, f).is_identity());
    for (std::int64_t t = 1; t <= 16; ++t) {
      FinPerm lhs = indexed_to_finperm(ctx, indexed_shift_xor(v, t));
      FinPerm rhs =
          perm_compose(perm_conjugate_by_translation(ctx, f, ctx.z_power(t)), f);
      CHECK(lhs == rhs);
    }
  }
  // s = z: doubled indices keep the transpositions disjoint, even shifts only
  for (unsigned mask = 1; mask < 64; ++mask) {
    std::vector<std::int64_t> indices;
    for (int bit = 0; bit < 6; ++bit)
      if (mask & (1u << bit)) indices.push_back(2 * bit);
    IndexedInvolution v{"z", indices};
    FinPerm f = indexed_to_finperm(ctx, v);
    CHECK(perm_compose(f, f).is_identity());
    for (std::int64_t t = 2; t <= 16; t += 2) {
      FinPerm lhs = indexed_to_finperm(ctx, indexed_shift_xor(v, t));
      FinPerm rhs =
          perm_compose(perm_conjugate_by_translation(ctx, f, ctx.z_power(t)), f);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("transposition families are disjoint across distinct indices") {
  GroupContext ctx("cyclic:4");
  auto support = [&](const IndexedInvolution& v) {
    FinPerm f = indexed_to_finperm(ctx, v);
    std::set<PointId> s;
    for (auto& [x, y] : f.pairs()) {
      (void)y;
      s.insert(x);
    }
    return s;
  };
  for (std::int64_t m = 0; m < 6; ++m)
    for (std::int64_t mp = m + 1; mp < 6; ++mp) {
      auto sa = support({"a", {m}});
      auto sb = support({"a", {mp}});
      for (PointId p : sa) CHECK(sb.count(p) == 0);
    }
  for (std::int64_t m = 0; m < 12; m += 2)
    for (std::int64_t mp = m + 2; mp < 12; mp += 2) {
      auto sa = support({"z", {m}});
      auto sb = support({"z", {mp}});
      for (PointId p : sa) CHECK(sb.count(p) == 0);
    }
}

TEST_CASE("super-increasing shifts build subset-sum index sets") {
  // nu_i each exceeding the running maximum index
  std::vector<std::int64_t> shifts{1, 2, 4, 8, 16, 32};
  IndexedInvolution v{"a", {0}};
  std::vector<std::int64_t> applied;
  for (std::size_t n = 0; n < shifts.size(); ++n) {
    v = indexed_shift_xor(v, shifts[n]);
    applied.push_back(shifts[n]);
    std::set<std::int64_t> sums;
    for (unsigned mask = 0; mask < (1u << applied.size()); ++mask) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < applied.size(); ++i)
        if (mask & (1u << i)) s += applied[i];
      sums.insert(s);
    }
    CHECK(v.indices.size() == (1u << applied.size()));
    CHECK(std::set<std::int64_t>(v.indices.begin(), v.indices.end()) == sums);
  }
}

TEST_CASE("malformed permutations are rejected") {
  CHECK_THROWS_AS(FinPerm::from_pairs({{0, 1}, {0, 2}, {1, 0}, {2, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FinPerm::from_pairs({{0, 1}}), std::invalid_argument);
  CHECK(FinPerm::from_pairs({{0, 0}, {3, 3}}).is_identity());
}
