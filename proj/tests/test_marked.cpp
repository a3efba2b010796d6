#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "forge/construction.hpp"
#include "forge/errors.hpp"
#include "forge/serialize.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

std::vector<IndexedInvolution> sigma_with_indices(GroupContext& ctx,
                                                  std::vector<std::int64_t> indices) {
  std::vector<IndexedInvolution> sigma;
  for (auto& g : ctx.s_generators()) sigma.push_back({g.name, indices});
  return sigma;
}

AugElement random_aug(GroupContext& ctx, const MarkedAlphabet& alphabet,
                      std::mt19937_64& rng, std::size_t len) {
  return evaluate_word(ctx, alphabet, random_reduced_word(rng, alphabet.size(), len));
}

}  // namespace

TEST_CASE("semidirect product law against the pointwise action") {
  GroupContext ctx("cyclic:2");
  auto alphabet = make_stage_alphabet(ctx, sigma_with_indices(ctx, {0}));

  // pure translations multiply in the group
  AugElement tz{FinPerm{}, ctx.z_power(1)};
  AugElement ta{FinPerm{}, ctx.base_point(0)};
  AugElement za = aug_multiply(ctx, tz, ta);
  CHECK(za.perm.is_identity());
  CHECK(za.trans == ctx.mul(ctx.z_power(1), ctx.base_point(0)));

  AugElement inv{FinPerm::transposition(ctx.identity(), ctx.base_point(0)),
                 ctx.identity()};
  CHECK(aug_multiply(ctx, inv, inv).is_identity(ctx));

  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    AugElement u = random_aug(ctx, alphabet, rng, 6);
    AugElement v = random_aug(ctx, alphabet, rng, 6);
    AugElement uv = aug_multiply(ctx, u, v);
    // agreement on both supports plus random outside points
    std::vector<PointId> probes{ctx.identity(), ctx.z_power(1), ctx.z_power(-1)};
    for (auto& [x, y] : u.perm.pairs()) {
      (void)y;
      probes.push_back(x);
    }
    for (auto& [x, y] : v.perm.pairs()) {
      (void)y;
      probes.push_back(x);
    }
    std::uniform_int_distribution<std::int64_t> zd(-40, 40);
    for (int i = 0; i < 50; ++i)
      probes.push_back(ctx.mul(ctx.z_power(zd(rng)),
                               (rng() & 1) ? ctx.base_point(0) : ctx.identity()));
    for (PointId x : probes)
      CHECK(aug_apply(ctx, uv, x) == aug_apply(ctx, u, aug_apply(ctx, v, x)));
  }
}

TEST_CASE("canonical form equality is action equality") {
  GroupContext ctx("cyclic:2");
  auto alphabet = make_stage_alphabet(ctx, sigma_with_indices(ctx, {0}));
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    Word w = random_reduced_word(rng, alphabet.size(), 8);
    // evaluate with two different bracketings
    AugElement left = evaluate_word(ctx, alphabet, w);
    std::uniform_int_distribution<std::size_t> cutd(0, w.size());
    std::size_t cut = cutd(rng);
    AugElement right = aug_multiply(
        ctx, evaluate_word(ctx, alphabet, Word(w.begin(), w.begin() + cut)),
        evaluate_word(ctx, alphabet, Word(w.begin() + cut, w.end())));
    CHECK(left == right);
  }
  // distinct canonical forms act differently somewhere on support + {id, z, z^-1}
  AugElement s1{FinPerm::transposition(ctx.identity(), ctx.base_point(0)), ctx.identity()};
  AugElement s2{FinPerm{}, ctx.base_point(0)};
  bool differ = false;
  for (PointId x : {ctx.identity(), ctx.z_power(1), ctx.z_power(-1)})
    differ = differ || aug_apply(ctx, s1, x) != aug_apply(ctx, s2, x);
  CHECK(differ);
}

TEST_CASE("word evaluation examples") {
  GroupContext ctx("cyclic:2");
  auto alphabet = make_stage_alphabet(ctx, sigma_with_indices(ctx, {0}));
  CHECK(evaluate_word(ctx, alphabet, {}).is_identity(ctx));

  Word sasa = parse_word(alphabet, "Sa Sa");
  CHECK(evaluate_word(ctx, alphabet, sasa).is_identity(ctx));

  // z^2 Sa z^-2 Sa has permutation support {id, a, z^2, z^2 a}
  Word w = parse_word(alphabet, "z z Sa z^-1 z^-1 Sa");
  AugElement e = evaluate_word(ctx, alphabet, w);
  CHECK(e.trans == ctx.identity());
  std::set<PointId> support;
  for (auto& [x, y] : e.perm.pairs()) {
    (void)y;
    support.insert(x);
  }
  CHECK(support == std::set<PointId>{ctx.identity(), ctx.base_point(0), ctx.z_power(2),
                                     ctx.mul(ctx.z_power(2), ctx.base_point(0))});
}

TEST_CASE("word text round trips") {
  GroupContext ctx("prod(cyclic:2,cyclic:2)");
  auto alphabet = make_stage_alphabet(ctx, sigma_with_indices(ctx, {0}));
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    Word w = random_reduced_word(rng, alphabet.size(), 10);
    CHECK(parse_word(alphabet, word_to_text(alphabet, w)) == w);
  }
  CHECK(parse_word(alphabet, "z^3").size() == 3);
  CHECK(parse_word(alphabet, "z^-2") == Word{Lit{2, -1}, Lit{2, -1}});
  CHECK_THROWS_AS(parse_word(alphabet, "Sq"), UsageError);
}

TEST_CASE("marked balls at stage zero") {
  GroupContext ctx("cyclic:2");
  auto alphabet = make_stage_alphabet(ctx, sigma_with_indices(ctx, {0}));
  Budgets budgets;

  CHECK(marked_ball(ctx, alphabet, 0, budgets).size() == 1);

  MarkedBall b1 = marked_ball(ctx, alphabet, 1, budgets);
  CHECK(b1.size() == 6);  // id, a, z, Sa, Sz, z^-1

  // independent reduced-word enumeration finds the same vertex set
  std::set<std::pair<std::vector<FinPerm::Pair>, PointId>> seen;
  for (auto& w : oracles::all_reduced_words(alphabet.size(), 1)) {
    AugElement e = evaluate_word(ctx, alphabet, w);
    seen.insert({e.perm.pairs(), e.trans});
  }
  CHECK(seen.size() == 6);

  std::size_t prev = 0;
  for (int k = 0; k <= 4; ++k) {
    MarkedBall b = marked_ball(ctx, alphabet, k, budgets);
    CHECK(b.size() >= prev);
    prev = b.size();
  }
}

TEST_CASE("ball vertices expose elements, depths and geodesics") {
  GroupContext ctx("cyclic:2");
  auto alphabet = make_stage_alphabet(ctx, sigma_with_indices(ctx, {0}));
  Budgets budgets;
  MarkedBall ball = marked_ball(ctx, alphabet, 3, budgets);
  for (std::uint32_t i = 0; i < ball.size(); ++i) {
    Word w = ball.geodesic(i);
    CHECK(static_cast<std::int64_t>(w.size()) == ball.vertex_depth(i));
    CHECK(evaluate_word(ctx, alphabet, w) == ball.vertex_element(i));
    auto found = ball.find(ctx, ball.vertex_element(i));
    REQUIRE(found.has_value());
    CHECK(*found == i);
  }
}

TEST_CASE("ball budget is a hard stop") {
  GroupContext ctx("cyclic:2");
  auto alphabet = make_stage_alphabet(ctx, sigma_with_indices(ctx, {0}));
  Budgets budgets;
  budgets.ball_cap = 10;
  CHECK_THROWS_AS(marked_ball(ctx, alphabet, 4, budgets), BudgetExceeded);
}

TEST_CASE("ball comparison: reflexive, symmetric, monotone") {
  GroupContext ctx("cyclic:2");
  auto a0 = make_stage_alphabet(ctx, sigma_with_indices(ctx, {0}));
  auto a1 = make_stage_alphabet(ctx, sigma_with_indices(ctx, {0, 2}));
  Budgets budgets;

  for (int k = 0; k <= 3; ++k) CHECK(marked_ball_iso(ctx, a0, a0, k, budgets).isomorphic);
  CHECK(marked_ball_iso(ctx, a0, a1, 0, budgets).isomorphic);

  for (int k = 0; k <= 3; ++k) {
    auto ab = marked_ball_iso(ctx, a0, a1, k, budgets);
    auto ba = marked_ball_iso(ctx, a1, a0, k, budgets);
    CHECK(ab.isomorphic == ba.isomorphic);
    CHECK(ab.isomorphic ==
          oracles::word_pair_partitions_agree(ctx, a0, a1, static_cast<std::size_t>(k)));
    if (ab.isomorphic && k > 0)
      CHECK(marked_ball_iso(ctx, a0, a1, k - 1, budgets).isomorphic);
  }

  // a deliberately broken side: its first sigma letter is the identity, so
  // the word Sa closes a relation there and nowhere else
  auto broken = make_stage_alphabet(
      ctx, {IndexedInvolution{"a", {}}, IndexedInvolution{"z", {0}}});
  auto bad = marked_ball_iso(ctx, a0, broken, 1, budgets);
  REQUIRE_FALSE(bad.isomorphic);
  CHECK(static_cast<int>(bad.witness_u.size()) <= 1);
  AugElement ua = evaluate_word(ctx, a0, bad.witness_u);
  AugElement va = evaluate_word(ctx, a0, bad.witness_v);
  AugElement ub = evaluate_word(ctx, broken, bad.witness_u);
  AugElement vb = evaluate_word(ctx, broken, bad.witness_v);
  CHECK((ua == va) != (ub == vb));
}

TEST_CASE("programs: flat length, expansion, and action agree with words") {
  GroupContext ctx("cyclic:2");
  auto alphabet = make_stage_alphabet(ctx, sigma_with_indices(ctx, {0}));
  std::mt19937_64 rng(37);

  for (int i = 0; i < 30; ++i) {
    Word w = random_reduced_word(rng, alphabet.size(), 12);
    Slp slp = Slp::from_word(w);
    CHECK(slp.flat_length() == w.size());
    CHECK(slp.expand(1 << 12) == w);
    CHECK(evaluate_slp(ctx, alphabet, slp) == evaluate_word(ctx, alphabet, w));
    PointId x = ctx.z_power(static_cast<std::int64_t>(i % 5) - 2);
    CHECK(apply_slp(ctx, alphabet, slp, x) == apply_word(ctx, alphabet, w, x));
  }

  // doubling tower: flat length grows exponentially, nodes stay linear
  Slp tower = Slp::from_word(parse_word(alphabet, "Sa"));
  for (int step = 0; step < 12; ++step) {
    Slp next;
    auto r = next.absorb(tower);
    next.root = next.add_mul(*r, *r);
    tower = std::move(next);
  }
  CHECK(tower.flat_length() == (1u << 12));
  CHECK(tower.expand(1 << 12).size() == (1u << 12));
  CHECK_THROWS_AS(tower.expand((1 << 12) - 1), BudgetExceeded);
  CHECK(evaluate_slp(ctx, alphabet, tower).is_identity(ctx));

  // inversion nodes evaluate to group inverses
  Word w = parse_word(alphabet, "a z Sa");
  Slp slp;
  auto r = slp.absorb(Slp::from_word(w));
  slp.root = slp.add_inv(*r);
  CHECK(evaluate_slp(ctx, alphabet, slp) ==
        aug_inverse(ctx, evaluate_word(ctx, alphabet, w)));
  CHECK(slp.expand(16) == word_inverse(w));

  // identity program
  Slp empty;
  CHECK(empty.flat_length() == 0);
  CHECK(evaluate_slp(ctx, alphabet, empty).is_identity(ctx));

  // z powers by squaring
  for (std::int64_t k : {-9, -1, 1, 2, 17}) {
    Slp zp = Slp::z_power(alphabet, k);
    CHECK(evaluate_slp(ctx, alphabet, zp) ==
          AugElement{FinPerm{}, ctx.z_power(k)});
    CHECK(zp.flat_length() == static_cast<std::uint64_t>(std::abs(k)));
  }
}

TEST_CASE("program JSON round trips") {
  GroupContext ctx("cyclic:2");
  auto alphabet = make_stage_alphabet(ctx, sigma_with_indices(ctx, {0}));
  std::mt19937_64 rng(73);
  for (int i = 0; i < 20; ++i) {
    Word w = random_reduced_word(rng, alphabet.size(), 8);
    Slp slp;
    auto r = slp.absorb(Slp::from_word(w));
    slp.root = slp.add_inv(*r);
    Slp back = slp_from_json(alphabet, slp_to_json(alphabet, slp));
    CHECK(evaluate_slp(ctx, alphabet, back) == evaluate_slp(ctx, alphabet, slp));
    CHECK(back.flat_length() == slp.flat_length());
  }
  // the empty program serializes with a null root
  Slp empty;
  auto j = slp_to_json(alphabet, empty);
  CHECK(j.at("root").is_null());
  CHECK(slp_from_json(alphabet, j).flat_length() == 0);
}

TEST_CASE("dot export lists vertices and labeled edges") {
  GroupContext ctx("cyclic:2");
  auto alphabet = make_stage_alphabet(ctx, sigma_with_indices(ctx, {0}));
  Budgets budgets;
  MarkedBall ball = marked_ball(ctx, alphabet, 1, budgets, /*with_edges=*/true);
  std::string dot = ball_to_dot(alphabet, ball);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("label=\"Sa\"") != std::string::npos);
  // the involution edge from the Sa vertex returns to the identity
  auto sa = ball.find(ctx, evaluate_word(ctx, alphabet, parse_word(alphabet, "Sa")));
  REQUIRE(sa.has_value());
  auto back = ball.successor(*sa, static_cast<std::uint16_t>(alphabet.letter_index("Sa")), +1);
  REQUIRE(back.has_value());
  CHECK(*back == 0);
}
