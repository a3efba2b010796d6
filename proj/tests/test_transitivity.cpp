#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "forge/transitivity.hpp"
#include "forge/errors.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

struct Tower {
  GroupContext ctx;
  Budgets budgets;
  Certificate cert;
  LimitContext lim;

  explicit Tower(const char* base, int stages)
      : ctx(base), cert(build_stages(ctx, stages, budgets)), lim(ctx, cert) {
    REQUIRE(cert.complete);
  }
};

Tower& tower() {
  static Tower t("cyclic:2", 4);
  return t;
}

}  // namespace

TEST_CASE("index trimming follows the worked example") {
  int steps = 0;
  auto out = trim_indices({0, 2, 5}, 4, &steps);
  CHECK(out == std::vector<std::int64_t>{0, 5, 7, 8, 9, 11});
  CHECK(steps == 2);

  CHECK(trim_indices({0, 2, 5}, 1, &steps) == std::vector<std::int64_t>{0, 2, 5});
  CHECK(steps == 0);

  // the trimmed set never keeps anything in [1, level]
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int64_t> indices{0};
    std::uniform_int_distribution<std::int64_t> d(1, 30);
    for (int i = 0; i < 6; ++i) indices.push_back(d(rng));
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    std::int64_t level = d(rng);
    auto trimmed = trim_indices(indices, level, nullptr);
    CHECK(trimmed[0] == 0);
    for (auto m : trimmed) CHECK((m == 0 || m > level));
  }
}

TEST_CASE("trim at level zero is the limit involution itself") {
  auto& t = tower();
  TrimmedInvolution t0 = trim(t.lim, 0, 0);
  CHECK(t0.slp.flat_length() == 1);
  std::vector<std::int64_t> expected;
  for (std::int64_t m = 0; m <= t.lim.horizon(); ++m)
    if (t.lim.limit_index_member(0, m)) expected.push_back(m);
  CHECK(t0.indices == expected);
}

TEST_CASE("trimmed involutions fix the cleared window and keep both semantics") {
  auto& t = tower();
  GroupContext& ctx = t.ctx;
  for (std::size_t s_pos : {std::size_t{0}, t.ctx.z_index()}) {
    for (std::int64_t level : {1, 3, 7}) {
      TrimmedInvolution trimmed = trim(t.lim, s_pos, level);
      CHECK((trimmed.indices.empty() || trimmed.indices[0] == 0));
      for (auto m : trimmed.indices) CHECK((m == 0 || m > level));

      // the program keeps only the (id, s) factor inside the window: for a
      // base-letter involution that fixes z^j and z^j s for 1 <= j <= level;
      // for the z involution the retained factor is the pair {id, z} itself,
      // so the fixed window starts at z^2
      PointId s_val = ctx.s_generators()[s_pos].value;
      for (std::int64_t j = 1; j <= level; ++j) {
        PointId zj = ctx.z_power(j);
        PointId zjs = ctx.mul(zj, s_val);
        if (s_pos == ctx.z_index()) {
          if (j >= 2) CHECK(t.lim.limit_apply(trimmed.slp, zj) == zj);
        } else {
          CHECK(t.lim.limit_apply(trimmed.slp, zj) == zj);
          CHECK(t.lim.limit_apply(trimmed.slp, zjs) == zjs);
        }
      }
      // the retained factor swaps id and s
      CHECK(t.lim.limit_apply(trimmed.slp, ctx.identity()) == s_val);
      CHECK(t.lim.limit_apply(trimmed.slp, s_val) == ctx.identity());

      // program semantics equals index-set semantics on random points
      std::mt19937_64 rng(67 + static_cast<std::uint64_t>(level));
      std::uniform_int_distribution<std::int64_t> zd(-3, t.lim.nu(t.lim.top_stage()) / 2);
      for (int i = 0; i < 100; ++i) {
        std::int64_t j = zd(rng);
        bool member = j >= 0 && std::binary_search(trimmed.indices.begin(),
                                                   trimmed.indices.end(), j);
        PointId zj = ctx.z_power(j);
        if (s_pos == ctx.z_index()) {
          bool member_prev = j > 0 && std::binary_search(trimmed.indices.begin(),
                                                         trimmed.indices.end(), j - 1);
          PointId expect = member ? ctx.z_power(j + 1)
                           : member_prev ? ctx.z_power(j - 1)
                                         : zj;
          CHECK(t.lim.limit_apply(trimmed.slp, zj) == expect);
        } else {
          PointId expect = member ? ctx.mul(zj, s_val) : zj;
          CHECK(t.lim.limit_apply(trimmed.slp, zj) == expect);
          PointId zjs = ctx.mul(zj, s_val);
          PointId expect2 = member ? zj : zjs;
          CHECK(t.lim.limit_apply(trimmed.slp, zjs) == expect2);
        }
      }
    }
  }
  CHECK_THROWS_AS(trim(t.lim, 0, t.lim.horizon() + 5), CertificateExhausted);
}

TEST_CASE("transposition realizers act exactly on the ball") {
  auto& t = tower();
  GroupContext& ctx = t.ctx;

  // swap id <-> a and fix z, z^-1
  TranspositionRealizer r1 = realize_transposition(t.lim, 0, ctx.identity(), 1);
  CHECK(t.lim.limit_apply(r1.slp, ctx.identity()) == ctx.base_point(0));
  CHECK(t.lim.limit_apply(r1.slp, ctx.base_point(0)) == ctx.identity());
  CHECK(t.lim.limit_apply(r1.slp, ctx.z_power(1)) == ctx.z_power(1));
  CHECK(t.lim.limit_apply(r1.slp, ctx.z_power(-1)) == ctx.z_power(-1));

  // swap z <-> z^2 on the radius-2 ball, fixing the other six vertices
  TranspositionRealizer r2 = realize_transposition(t.lim, ctx.z_index(), ctx.z_power(1), 2);
  const AmbientBall& b2 = ctx.ball(2);
  REQUIRE(b2.members.size() == 8);
  for (PointId x : b2.members) {
    PointId expect = x == ctx.z_power(1)   ? ctx.z_power(2)
                     : x == ctx.z_power(2) ? ctx.z_power(1)
                                           : x;
    CHECK(t.lim.limit_apply(r2.slp, x) == expect);
    // applied twice: the identity on the ball
    CHECK(t.lim.limit_apply(r2.slp, t.lim.limit_apply(r2.slp, x)) == x);
  }

  // ball invariance at radius <= 3, for a few realizers
  for (std::int64_t n : {1, 2, 3}) {
    const AmbientBall& ball = ctx.ball(n);
    for (PointId f : {ctx.identity(), ctx.z_power(n - 1)}) {
      TranspositionRealizer r = realize_transposition(t.lim, 0, f, n);
      std::set<PointId> image;
      for (PointId x : ball.members) image.insert(t.lim.limit_apply(r.slp, x));
      for (PointId x : ball.members) CHECK(image.count(x) == 1);
    }
  }

  CHECK_THROWS_AS(realize_transposition(t.lim, 0, ctx.z_power(5), 1),
                  std::invalid_argument);
}

TEST_CASE("witness examples") {
  auto& t = tower();
  GroupContext& ctx = t.ctx;

  // the identity pair needs no letters at all
  std::vector<PointId> idt{ctx.identity()};
  Slp empty = witness(t.lim, idt, idt);
  CHECK(empty.flat_length() == 0);

  std::vector<PointId> from{ctx.identity()};
  std::vector<PointId> to{ctx.z_power(1)};
  Slp w1 = witness(t.lim, from, to);
  CHECK(t.lim.limit_apply(w1, ctx.identity()) == ctx.z_power(1));

  std::vector<PointId> from3{ctx.identity(), ctx.base_point(0), ctx.z_power(1)};
  std::vector<PointId> to3{ctx.z_power(1), ctx.z_power(-1), ctx.base_point(0)};
  Slp w3 = witness(t.lim, from3, to3);
  for (std::size_t i = 0; i < from3.size(); ++i)
    CHECK(t.lim.limit_apply(w3, from3[i]) == to3[i]);

  CHECK_THROWS_AS(witness(t.lim, std::vector<PointId>{ctx.identity(), ctx.identity()},
                          std::vector<PointId>{ctx.z_power(1), ctx.z_power(2)}),
                  std::invalid_argument);
}

TEST_CASE("sampled 2-transitivity on the radius-2 ball") {
  auto& t = tower();
  GroupContext& ctx = t.ctx;
  const AmbientBall& ball = ctx.ball(2);
  REQUIRE(ball.members.size() == 8);

  std::mt19937_64 rng(71);
  std::uniform_int_distribution<std::size_t> pick(0, ball.members.size() - 1);
  int done = 0;
  while (done < 100) {
    std::size_t a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
    if (a == b || c == d) continue;
    ++done;
    std::vector<PointId> from{ball.members[a], ball.members[b]};
    std::vector<PointId> to{ball.members[c], ball.members[d]};
    Slp w = witness(t.lim, from, to);
    CHECK(t.lim.limit_apply(w, from[0]) == to[0]);
    CHECK(t.lim.limit_apply(w, from[1]) == to[1]);
  }
}
