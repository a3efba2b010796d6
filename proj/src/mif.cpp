#include "forge/mif.hpp"

#include <algorithm>
#include <map>

#include "forge/errors.hpp"

namespace forge {

EscapeReport escape_certificate(const LimitContext& lim, const Word& w,
                                int stages_to_check) {
  GroupContext& ctx = lim.group();
  EscapeReport report;
  report.word = w;

  auto wp = lim.word_problem(w);
  PointId moved = kNoPoint;
  if (wp.verdict == WordProblemResult::Verdict::Trivial)
    throw std::invalid_argument("escape certificate rejected a trivial word");
  if (wp.verdict == WordProblemResult::Verdict::Nontrivial) {
    moved = wp.moved_point;
  } else {
    // too long for the certified radii: fall back to the moved-point search
    auto found = lim.find_moved_point(w);
    if (!found)
      throw CertificateExhausted(
          "word is undecided at this certificate and no moved point was found", 1);
    moved = *found;
  }
  report.moved_point = moved;
  report.moved_image = lim.limit_apply(w, moved);

  // conjugate the moved point to the identity; translations stay in the group
  const AmbientBall& ball = ctx.ball(ctx.norm(moved));
  Word g_word;
  for (auto [gen, sign] : ctx.geodesic(ball, moved))
    g_word.push_back(Lit{static_cast<std::uint16_t>(gen), static_cast<std::int8_t>(sign)});
  report.conjugated = free_reduce(
      word_concat(word_inverse(g_word), word_concat(w, g_word)));

  for (int m = lim.top_stage(); m >= 1 && static_cast<int>(report.checks.size()) <
                                              stages_to_check; --m) {
    EscapeCheck check;
    check.stage = m;
    check.nu = lim.nu(m);
    PointId znu = ctx.z_power(check.nu);
    try {
      check.displaced = lim.limit_apply(report.conjugated, znu);
    } catch (const CertificateExhausted&) {
      continue;  // stabilization not available for this stage
    }
    PointId stage_at_id =
        apply_word(ctx, lim.stage_alphabet(m), report.conjugated, ctx.identity());
    check.chain_ok = check.displaced == ctx.mul(znu, stage_at_id);
    check.moved = check.displaced != znu;
    report.checks.push_back(check);
  }

  if (report.checks.empty()) {
    report.verdict = EscapeReport::Verdict::Inconclusive;
  } else if (std::all_of(report.checks.begin(), report.checks.end(),
                         [](const EscapeCheck& c) { return c.chain_ok && c.moved; })) {
    report.verdict = EscapeReport::Verdict::Escaped;
  } else if (std::none_of(report.checks.begin(), report.checks.end(),
                          [](const EscapeCheck& c) { return c.moved; })) {
    report.verdict = EscapeReport::Verdict::Confined;
  } else {
    report.verdict = EscapeReport::Verdict::Inconclusive;
  }
  return report;
}

bool escape_report_reverify(const LimitContext& lim, const EscapeReport& report) {
  GroupContext& ctx = lim.group();
  try {
    if (lim.limit_apply(report.word, report.moved_point) != report.moved_image ||
        report.moved_image == report.moved_point)
      return false;
    if (lim.limit_apply(report.conjugated, ctx.identity()) == ctx.identity())
      return false;
    for (const EscapeCheck& check : report.checks) {
      if (check.nu != lim.nu(check.stage)) return false;
      PointId znu = ctx.z_power(check.nu);
      PointId displaced = lim.limit_apply(report.conjugated, znu);
      if (displaced != check.displaced) return false;
      PointId stage_at_id = apply_word(ctx, lim.stage_alphabet(check.stage),
                                       report.conjugated, ctx.identity());
      if (check.chain_ok != (displaced == ctx.mul(znu, stage_at_id))) return false;
      if (check.moved != (displaced != znu)) return false;
    }
  } catch (const CertificateExhausted&) {
    return false;
  }
  return true;
}

MifSummary mif_scan(const LimitContext& lim, int samples, int max_flat,
                    std::uint64_t seed, bool keep_reports) {
  if (max_flat > lim.k(lim.top_stage()))
    throw std::invalid_argument("max flat length exceeds the top certified radius");
  MifSummary summary;
  summary.seed = seed;
  summary.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, std::max(1, max_flat));
  std::size_t n_letters = lim.names().size();
  Budgets budgets;  // escape depth below comes from the default profile
  for (int i = 0; i < samples; ++i) {
    Word w = random_reduced_word(rng, n_letters, static_cast<std::size_t>(len(rng)));
    auto wp = lim.word_problem(w);
    if (wp.verdict == WordProblemResult::Verdict::Trivial) {
      ++summary.trivial;
      continue;
    }
    EscapeReport report = escape_certificate(lim, w, budgets.escape_stages);
    switch (report.verdict) {
      case EscapeReport::Verdict::Escaped:
        ++summary.escaped;
        break;
      case EscapeReport::Verdict::Inconclusive:
        ++summary.inconclusive;
        break;
      case EscapeReport::Verdict::Confined:
        ++summary.falsifiers;
        summary.falsifier_reports.push_back(report);
        break;
    }
    if (keep_reports) summary.reports.push_back(std::move(report));
  }
  return summary;
}

PiClosureResult pi_closure(const LimitContext& lim, int x_count, std::uint64_t budget) {
  GroupContext& ctx = lim.group();
  PiClosureResult result;
  result.stage_used = lim.top_stage();
  std::vector<Word> gens = enumerate_pi(lim.n_translations(), x_count);

  // equality of words u, v transfers through the top stage while
  // |u| + |v| <= k_top; keeping every representative within half the radius
  // makes the stage values a sound dedupe key
  std::int64_t half = lim.k(lim.top_stage()) / 2;

  struct Key {
    std::vector<FinPerm::Pair> perm;
    PointId trans;
    bool operator<(const Key& o) const {
      if (trans != o.trans) return trans < o.trans;
      return perm < o.perm;
    }
  };
  std::map<Key, std::uint32_t> seen;
  std::vector<Word> reps{Word{}};
  AugElement id = aug_identity(ctx);
  seen.emplace(Key{id.perm.pairs(), id.trans}, 0);

  for (std::size_t head = 0; head < reps.size(); ++head) {
    for (const Word& g : gens) {
      Word next = free_reduce(word_concat(reps[head], g));
      if (static_cast<std::int64_t>(next.size()) > half) {
        result.conclusive = false;
        result.blocking_length = static_cast<std::int64_t>(next.size()) * 2;
        return result;
      }
      AugElement value = lim.stage_value(next, lim.top_stage());
      Key key{value.perm.pairs(), value.trans};
      if (seen.count(key)) continue;
      if (reps.size() >= budget) {
        result.conclusive = false;
        result.blocking_length = -1;
        return result;
      }
      seen.emplace(std::move(key), static_cast<std::uint32_t>(reps.size()));
      reps.push_back(std::move(next));
    }
  }

  result.conclusive = true;
  result.order = reps.size();

  Budgets budgets;
  FinitenessWitness fin =
      finiteness_witness(ctx, lim.stage_alphabet(lim.top_stage()), gens, budgets);
  result.stage_order = fin.order;
  result.stage_match = fin.order == result.order;
  return result;
}

}  // namespace forge
