#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "forge/construction.hpp"
#include "forge/errors.hpp"
#include "oracles.hpp"

using namespace forge;

TEST_CASE("closure-word enumeration is shortlex, nested, kernel-only") {
  // cyclic:2 letters: a z Sa Sz
  auto one = enumerate_pi(2, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Word{Lit{2, 1}});  // the first sigma letter

  auto five = enumerate_pi(2, 5);
  REQUIRE(five.size() == 5);
  CHECK(five[0] == Word{Lit{2, 1}});                 // Sa
  CHECK(five[1] == Word{Lit{3, 1}});                 // Sz
  CHECK(five[2] == Word{Lit{2, -1}});                // Sa^-1
  CHECK(five[3] == Word{Lit{3, -1}});                // Sz^-1
  CHECK(five[4] == Word{Lit{2, 1}, Lit{2, 1}});      // Sa Sa

  for (int count : {1, 2, 3, 4, 8, 16}) {
    auto words = enumerate_pi(2, count);
    REQUIRE(static_cast<int>(words.size()) == count);
    for (auto& w : words) {
      CHECK(word_in_pi(2, w));
      CHECK(free_reduce(w) == w);
      CHECK_FALSE(w.empty());
    }
    // nested prefixes
    auto longer = enumerate_pi(2, count + 3);
    for (int i = 0; i < count; ++i) CHECK(longer[static_cast<std::size_t>(i)] == words[static_cast<std::size_t>(i)]);
  }
  CHECK(enumerate_pi(2, 0).empty());
}

TEST_CASE("finiteness witness on explicit generators") {
  GroupContext ctx("cyclic:2");
  Budgets budgets;
  std::vector<IndexedInvolution> sigma1{{"a", {0, 2}}, {"z", {0, 2}}};
  MarkedAlphabet alphabet = make_stage_alphabet(ctx, sigma1);

  // single involution
  auto fin = finiteness_witness(ctx, alphabet, enumerate_pi(2, 1), budgets);
  CHECK(fin.order == 2);
  CHECK(fin.max_flat == 1);
  {
    // brute closure over the raw maps
    FinPerm f = indexed_to_finperm(ctx, sigma1[0]);
    CHECK(oracles::closure_order({oracles::perm_as_map(f)}, 100) == 2);
  }

  // empty generating set
  auto none = finiteness_witness(ctx, alphabet, {}, budgets);
  CHECK(none.order == 1);
  CHECK(none.max_flat == 0);

  // two involutions sharing points generate a diagonal copy of a small
  // symmetric group; cross-check with the naive closure and the factorial bound
  auto both = finiteness_witness(ctx, alphabet, enumerate_pi(2, 2), budgets);
  {
    FinPerm fa = indexed_to_finperm(ctx, sigma1[0]);
    FinPerm fz = indexed_to_finperm(ctx, sigma1[1]);
    CHECK(both.order == oracles::closure_order(
                            {oracles::perm_as_map(fa), oracles::perm_as_map(fz)}, 100000));
    std::set<PointId> support;
    for (auto& [x, y] : fa.pairs()) {
      (void)y;
      support.insert(x);
    }
    for (auto& [x, y] : fz.pairs()) {
      (void)y;
      support.insert(x);
    }
    std::uint64_t fact = 1;
    for (std::uint64_t i = 2; i <= support.size(); ++i) fact *= i;
    CHECK(fact % both.order == 0);
  }

  // words with a surviving translation letter are rejected
  CHECK_THROWS_AS(finiteness_witness(ctx, alphabet, {Word{Lit{0, 1}}}, budgets),
                  InvariantViolation);
}

TEST_CASE("radius selection") {
  CHECK(choose_k(0, 2, 1) == 3);
  CHECK(choose_k(5, 1, 0) == 6);
  CHECK(choose_k(0, 5, 2) == 12);
  for (std::int64_t k : {0, 1, 7}) CHECK(choose_k(k, 1, 0) == k + 1);
}

TEST_CASE("stage zero certificate") {
  GroupContext ctx("cyclic:2");
  Budgets budgets;
  Certificate cert = build_stages(ctx, 0, budgets);
  CHECK(cert.complete);
  REQUIRE(cert.stages.size() == 1);
  CHECK(cert.stages[0].n == 0);
  CHECK(cert.stages[0].nu == 0);
  CHECK(cert.stages[0].k == 0);
  for (auto& v : cert.stages[0].sigma) CHECK(v.indices == std::vector<std::int64_t>{0});
  CHECK(verify_certificate(ctx, cert, budgets).ok);
}

TEST_CASE("two stages over cyclic:2, with the subset-sum shape") {
  GroupContext ctx("cyclic:2");
  Budgets budgets;
  Certificate cert = build_stages(ctx, 2, budgets);
  REQUIRE(cert.complete);
  REQUIRE(cert.stages.size() == 3);

  // nu_1 = 2 is forced: the first even shift clears every disjointness and
  // radius-0 condition
  CHECK(cert.stages[1].nu == 2);
  CHECK(cert.stages[1].k == 3);  // order 2, flat 1 witness

  const StageData& s2 = cert.stages[2];
  for (auto& v : s2.sigma) {
    REQUIRE(v.indices.size() == 4);
    std::set<std::int64_t> sums{0, cert.stages[1].nu, s2.nu, cert.stages[1].nu + s2.nu};
    CHECK(std::set<std::int64_t>(v.indices.begin(), v.indices.end()) == sums);
  }

  // determinism: a rebuild reproduces the tower exactly
  GroupContext ctx2("cyclic:2");
  Certificate again = build_stages(ctx2, 2, budgets);
  REQUIRE(again.stages.size() == cert.stages.size());
  for (std::size_t i = 0; i < cert.stages.size(); ++i) {
    CHECK(again.stages[i].nu == cert.stages[i].nu);
    CHECK(again.stages[i].k == cert.stages[i].k);
    CHECK(again.stages[i].sigma == cert.stages[i].sigma);
  }

  // re-running the shift search on the loaded prefix reproduces nu_2
  std::vector<StageData> prefix{cert.stages[0], cert.stages[1]};
  CHECK(search_nu(ctx, prefix, budgets) == cert.stages[2].nu);
}

TEST_CASE("the chosen shift is minimal: every smaller candidate fails a condition") {
  GroupContext ctx("cyclic:2");
  Budgets budgets;
  Certificate cert = build_stages(ctx, 3, budgets);
  REQUIRE(cert.complete);

  auto support_of = [&](const IndexedInvolution& v) {
    FinPerm f = indexed_to_finperm(ctx, v);
    std::set<PointId> s;
    for (auto& [x, y] : f.pairs()) {
      (void)y;
      s.insert(x);
    }
    return s;
  };

  for (std::size_t step = 1; step < cert.stages.size(); ++step) {
    const StageData& prev = cert.stages[step - 1];
    std::vector<MarkedAlphabet> earlier;
    for (std::size_t l = 0; l < step; ++l)
      earlier.push_back(make_stage_alphabet(ctx, cert.stages[l].sigma));

    for (std::int64_t nu = prev.nu + 2; nu < cert.stages[step].nu; nu += 2) {
      bool disjoint = true;
      for (auto& v : prev.sigma) {
        auto s = support_of(v);
        PointId znu = ctx.z_power(nu);
        for (PointId x : s)
          if (s.count(ctx.mul(znu, x))) {
            disjoint = false;
            break;
          }
        if (!disjoint) break;
      }
      if (!disjoint) continue;  // rejected by the support condition

      std::vector<IndexedInvolution> candidate;
      for (auto& v : prev.sigma) candidate.push_back(indexed_shift_xor(v, nu));
      MarkedAlphabet cand = make_stage_alphabet(ctx, candidate);

      bool iso = true;
      for (std::size_t l = 0; l < step && iso; ++l)
        iso = marked_ball_iso(ctx, cand, earlier[l], cert.stages[l].k, budgets)
                  .isomorphic;
      bool displaced = true;
      if (iso) {
        MarkedBall ball = marked_ball(ctx, cand, prev.k, budgets);
        PointId znu = ctx.z_power(nu);
        for (std::uint32_t i = 0; i < ball.size() && displaced; ++i) {
          PointId t = ball.vertex_trans(i);
          auto perm = ball.vertex_perm(i);
          displaced =
              apply_pairs(perm, ctx.mul(t, znu)) == ctx.mul(znu, apply_pairs(perm, t));
        }
      }
      CHECK_FALSE((iso && displaced));
    }
  }
}

TEST_CASE("post-hoc invariants on a three-stage tower") {
  GroupContext ctx("cyclic:2");
  Budgets budgets;
  Certificate cert = build_stages(ctx, 3, budgets);
  REQUIRE(cert.complete);

  std::vector<MarkedAlphabet> alphabets;
  for (auto& st : cert.stages) alphabets.push_back(make_stage_alphabet(ctx, st.sigma));

  // all pairs p < q at radius k_p, independent of the builder's bookkeeping
  for (std::size_t p = 0; p < cert.stages.size(); ++p)
    for (std::size_t q = p + 1; q < cert.stages.size(); ++q)
      CHECK(marked_ball_iso(ctx, alphabets[q], alphabets[p], cert.stages[p].k, budgets)
                .isomorphic);

  // every sigma is an involution
  for (auto& st : cert.stages)
    for (auto& v : st.sigma) {
      FinPerm f = indexed_to_finperm(ctx, v);
      CHECK_FALSE(f.is_identity());
      CHECK(perm_compose(f, f).is_identity());
    }

  // displacement: vertices of the radius-k_{p-1} ball commute past z^{nu_p}
  for (std::size_t p = 1; p < cert.stages.size(); ++p) {
    MarkedBall ball = marked_ball(ctx, alphabets[p], cert.stages[p - 1].k, budgets);
    PointId znu = ctx.z_power(cert.stages[p].nu);
    for (std::uint32_t i = 0; i < ball.size(); ++i) {
      PointId t = ball.vertex_trans(i);
      auto perm = ball.vertex_perm(i);
      CHECK(apply_pairs(perm, ctx.mul(t, znu)) == ctx.mul(znu, apply_pairs(perm, t)));
    }
  }

  // monotone and even
  for (std::size_t i = 1; i < cert.stages.size(); ++i) {
    CHECK(cert.stages[i].nu > cert.stages[i - 1].nu);
    CHECK(cert.stages[i].k > cert.stages[i - 1].k);
    CHECK(cert.stages[i].nu % 2 == 0);
  }

  // the radius-3 stage-1 ball contains the square relation of the first sigma
  MarkedBall b3 = marked_ball(ctx, alphabets[1], 3, budgets, /*with_edges=*/true);
  MarkedAlphabet& a1 = alphabets[1];
  auto sa = b3.find(ctx, evaluate_word(ctx, a1, parse_word(a1, "Sa")));
  REQUIRE(sa.has_value());
  auto back = b3.successor(*sa, static_cast<std::uint16_t>(a1.letter_index("Sa")), +1);
  REQUIRE(back.has_value());
  CHECK(*back == 0);
}

TEST_CASE("certificates replay and survive round trips") {
  GroupContext ctx("cyclic:3");
  Budgets budgets;
  Certificate cert = build_stages(ctx, 2, budgets);
  REQUIRE(cert.complete);

  VerifyReport report = verify_certificate(ctx, cert, budgets);
  CHECK(report.ok);
  CHECK(report.checks_replayed == cert.checks.size());

  auto j = certificate_to_json(cert);
  Certificate reloaded = certificate_from_json(j);
  CHECK(reloaded.stages.size() == cert.stages.size());
  for (std::size_t i = 0; i < cert.stages.size(); ++i)
    CHECK(reloaded.stages[i].sigma == cert.stages[i].sigma);
  GroupContext ctx2("cyclic:3");
  CHECK(verify_certificate(ctx2, reloaded, budgets).ok);

  // tampering is caught
  Certificate bad = cert;
  bad.stages[1].sigma[0].indices.push_back(100);
  GroupContext ctx3("cyclic:3");
  CHECK_FALSE(verify_certificate(ctx3, bad, budgets).ok);

  Certificate bad_k = cert;
  bad_k.stages[2].k += 1;
  CHECK_FALSE(verify_certificate(ctx3, bad_k, budgets).ok);

  // flipping a recorded outcome is caught by the replay itself
  Certificate bad_check = cert;
  REQUIRE_FALSE(bad_check.checks.empty());
  bad_check.checks[0].ok = !bad_check.checks[0].ok;
  CHECK_FALSE(verify_certificate(ctx3, bad_check, budgets).ok);
}

TEST_CASE("budget exhaustion yields a partial, marked certificate") {
  GroupContext ctx("cyclic:2");
  Budgets budgets;
  budgets.nu_cap = 2;  // enough for stage 1, too small for stage 2
  Certificate cert = build_stages(ctx, 3, budgets);
  CHECK_FALSE(cert.complete);
  CHECK(cert.stages.size() == 2);
  CHECK_FALSE(cert.note.empty());
}
