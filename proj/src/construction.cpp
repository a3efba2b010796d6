#include "forge/construction.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "forge/errors.hpp"

namespace forge {

namespace {

using json = nlohmann::json;

std::vector<IndexedInvolution> stage_zero_sigma(const GroupContext& ctx) {
  std::vector<IndexedInvolution> sigma;
  for (auto& g : ctx.s_generators()) sigma.push_back(IndexedInvolution{g.name, {0}});
  return sigma;
}

std::int64_t sigma_support_radius(GroupContext& ctx,
                                  const std::vector<IndexedInvolution>& sigma) {
  std::int64_t r = 0;
  for (auto& v : sigma) {
    FinPerm f = indexed_to_finperm(ctx, v);
    for (auto& [x, y] : f.pairs()) {
      (void)y;
      r = std::max(r, ctx.norm(x));
    }
  }
  return r;
}

/// f(z^nu) = z^nu * f(id) for every ball vertex f.
bool displacement_holds(GroupContext& ctx, const MarkedBall& ball, std::int64_t nu) {
  PointId znu = ctx.z_power(nu);
  for (std::uint32_t i = 0; i < ball.size(); ++i) {
    PointId t = ball.vertex_trans(i);
    auto perm = ball.vertex_perm(i);
    PointId lhs = apply_pairs(perm, ctx.mul(t, znu));
    PointId rhs = ctx.mul(znu, apply_pairs(perm, t));
    if (lhs != rhs) return false;
  }
  return true;
}

bool supports_shift_disjoint(GroupContext& ctx, const IndexedInvolution& v,
                             std::int64_t nu) {
  FinPerm f = indexed_to_finperm(ctx, v);
  std::set<PointId> support;
  for (auto& [x, y] : f.pairs()) {
    (void)y;
    support.insert(x);
  }
  PointId znu = ctx.z_power(nu);
  for (PointId x : support)
    if (support.count(ctx.mul(znu, x))) return false;
  return true;
}

/// Random element of the sigma-letter normal closure: w * delete_sigma(w)^-1.
Word random_pi_word(std::mt19937_64& rng, std::size_t n_translations,
                    std::size_t length) {
  Word w = random_reduced_word(rng, 2 * n_translations, length);
  Word s_only;
  for (auto lit : w)
    if (lit.letter < n_translations) s_only.push_back(lit);
  return free_reduce(word_concat(w, word_inverse(s_only)));
}

bool pi_samples_hold(GroupContext& ctx, const MarkedAlphabet& alphabet,
                     std::size_t n_translations, int count, int max_len,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, max_len);
  for (int i = 0; i < count; ++i) {
    Word w = random_pi_word(rng, n_translations, static_cast<std::size_t>(len(rng)));
    if (!word_in_pi(n_translations, w)) return false;
    AugElement e = evaluate_word(ctx, alphabet, w);
    if (e.trans != ctx.identity()) return false;
  }
  return true;
}

void record(std::vector<CheckRecord>* sink, const std::string& kind, json params,
            bool ok) {
  if (sink) sink->push_back(CheckRecord{kind, std::move(params), ok});
  if (!ok)
    throw InvariantViolation("condition check failed during build: " + kind +
                             " " + params.dump());
}

}  // namespace

MarkedAlphabet make_stage_alphabet(GroupContext& ctx,
                                   const std::vector<IndexedInvolution>& sigma) {
  MarkedAlphabet alphabet;
  alphabet.n_translations = ctx.s_generators().size();
  for (auto& g : ctx.s_generators()) {
    MarkedLetter letter;
    letter.name = g.name;
    letter.is_sigma = false;
    letter.value = AugElement{FinPerm{}, g.value};
    letter.inverse = AugElement{FinPerm{}, g.inverse};
    letter.self_inverse = g.value == g.inverse;
    alphabet.letters.push_back(std::move(letter));
  }
  if (sigma.size() != alphabet.n_translations)
    throw std::invalid_argument("one sigma involution per S-generator expected");
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i].s != ctx.s_generators()[i].name)
      throw std::invalid_argument("sigma names out of order");
    MarkedLetter letter;
    letter.name = "S" + sigma[i].s;
    letter.is_sigma = true;
    letter.value = AugElement{indexed_to_finperm(ctx, sigma[i]), ctx.identity()};
    letter.inverse = letter.value;
    letter.self_inverse = true;
    alphabet.letters.push_back(std::move(letter));
  }
  return alphabet;
}

std::vector<std::string> alphabet_names(const GroupContext& ctx) {
  std::vector<std::string> names;
  for (auto& g : ctx.s_generators()) names.push_back(g.name);
  for (auto& g : ctx.s_generators()) names.push_back("S" + g.name);
  return names;
}

bool word_in_pi(std::size_t n_translations, const Word& w) {
  Word s_only;
  for (auto lit : w)
    if (lit.letter < n_translations) s_only.push_back(lit);
  return free_reduce(s_only).empty();
}

std::vector<Word> enumerate_pi(std::size_t n_translations, int count) {
  std::vector<Word> out;
  if (count <= 0) return out;
  std::size_t n_letters = 2 * n_translations;
  std::size_t n_symbols = 2 * n_letters;
  auto symbol_lit = [&](std::size_t sym) {
    return Lit{static_cast<std::uint16_t>(sym % n_letters),
               static_cast<std::int8_t>(sym < n_letters ? 1 : -1)};
  };

  // depth-first lexicographic scan of reduced words, one length at a time
  Word word;
  auto scan = [&](auto&& self, std::size_t remaining) -> bool {
    if (remaining == 0) {
      if (word_in_pi(n_translations, word)) {
        out.push_back(word);
        if (out.size() == static_cast<std::size_t>(count)) return true;
      }
      return false;
    }
    for (std::size_t sym = 0; sym < n_symbols; ++sym) {
      Lit lit = symbol_lit(sym);
      if (!word.empty() && word.back().letter == lit.letter &&
          word.back().sign == -lit.sign)
        continue;  // keep the word freely reduced
      word.push_back(lit);
      bool done = self(self, remaining - 1);
      word.pop_back();
      if (done) return true;
    }
    return false;
  };

  for (std::size_t length = 1; out.size() < static_cast<std::size_t>(count); ++length) {
    if (length > 24) throw BudgetExceeded("closure enumeration ran away");
    word.clear();
    if (scan(scan, length)) break;
  }
  return out;
}

std::int64_t search_nu(GroupContext& ctx, const std::vector<StageData>& stages,
                       const Budgets& budgets, std::vector<CheckRecord>* sink) {
  if (stages.empty()) throw std::invalid_argument("stage 0 must exist");
  const StageData& top = stages.back();
  int next_n = top.n + 1;
  std::vector<MarkedAlphabet> built;
  for (auto& st : stages) built.push_back(make_stage_alphabet(ctx, st.sigma));

  std::int64_t candidates_tried = 0;
  for (std::int64_t nu = top.nu + 2; nu <= budgets.nu_cap; nu += 2) {
    ++candidates_tried;
    bool disjoint = true;
    for (auto& v : top.sigma)
      if (!supports_shift_disjoint(ctx, v, nu)) {
        disjoint = false;
        break;
      }
    if (!disjoint) continue;

    std::vector<IndexedInvolution> candidate;
    for (auto& v : top.sigma) candidate.push_back(indexed_shift_xor(v, nu));
    MarkedAlphabet cand_alphabet = make_stage_alphabet(ctx, candidate);

    bool involutions = true;
    for (auto& v : candidate) {
      FinPerm f = indexed_to_finperm(ctx, v);
      if (f.is_identity() || !perm_compose(f, f).is_identity()) {
        involutions = false;
        break;
      }
    }
    if (!involutions) continue;

    bool iso_ok = true;
    for (int l = top.n; l >= 0; --l) {
      auto outcome =
          marked_ball_iso(ctx, cand_alphabet, built[static_cast<std::size_t>(l)],
                          stages[static_cast<std::size_t>(l)].k, budgets);
      if (!outcome.isomorphic) {
        iso_ok = false;
        break;
      }
    }
    if (!iso_ok) continue;

    MarkedBall cand_ball = marked_ball(ctx, cand_alphabet, top.k, budgets);
    if (!displacement_holds(ctx, cand_ball, nu)) continue;

    if (sink) {
      for (auto& v : top.sigma)
        record(sink, "shift_disjoint", {{"stage", next_n}, {"s", v.s}, {"nu", nu}}, true);
      for (auto& v : candidate)
        record(sink, "sigma_involution", {{"stage", next_n}, {"s", v.s}}, true);
      for (int l = 0; l <= top.n; ++l)
        record(sink, "ball_iso",
               {{"p", l},
                {"q", next_n},
                {"radius", stages[static_cast<std::size_t>(l)].k}},
               true);
      record(sink, "displacement",
             {{"stage", next_n},
              {"radius", top.k},
              {"nu", nu},
              {"vertices", cand_ball.size()}},
             true);
      record(sink, "nu_chosen",
             {{"stage", next_n}, {"nu", nu}, {"candidates_tried", candidates_tried}},
             nu % 2 == 0 && nu > top.nu);
    }
    return nu;
  }
  throw BudgetExceeded("no conjugation shift found up to the cap " +
                       std::to_string(budgets.nu_cap) +
                       "; the search is inconclusive at this budget");
}

FinitenessWitness finiteness_witness(GroupContext& ctx, const MarkedAlphabet& alphabet,
                                     const std::vector<Word>& closure_words,
                                     const Budgets& budgets) {
  FinitenessWitness w;
  std::vector<FinPerm> gens;
  for (auto& word : closure_words) {
    AugElement e = evaluate_word(ctx, alphabet, word);
    if (e.trans != ctx.identity())
      throw InvariantViolation("closure word has a nontrivial translation part");
    w.max_flat = std::max(w.max_flat, static_cast<std::uint64_t>(word.size()));
    gens.push_back(std::move(e.perm));
  }

  std::set<std::vector<FinPerm::Pair>> seen;
  std::vector<FinPerm> queue{FinPerm{}};
  seen.insert(queue[0].pairs());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto& g : gens) {
      FinPerm next = perm_compose(queue[head], g);
      if (seen.count(next.pairs())) continue;
      if (seen.size() >= budgets.closure_cap)
        throw BudgetExceeded("finite-closure element budget exceeded");
      seen.insert(next.pairs());
      queue.push_back(std::move(next));
    }
  }
  w.order = seen.size();
  return w;
}

std::int64_t choose_k(std::int64_t k_prev, std::uint64_t order, std::uint64_t max_flat) {
  std::int64_t pigeonhole = static_cast<std::int64_t>((order + 1) * max_flat);
  return std::max(k_prev + 1, pigeonhole);
}

Certificate build_stages(GroupContext& ctx, int upto, const Budgets& budgets) {
  Certificate cert;
  cert.base = ctx.spec_string();

  StageData zero;
  zero.n = 0;
  zero.nu = 0;
  zero.k = 0;
  zero.sigma = stage_zero_sigma(ctx);
  zero.support_radius = sigma_support_radius(ctx, zero.sigma);
  cert.stages.push_back(zero);

  std::size_t n_translations = ctx.s_generators().size();
  try {
    for (int step = 1; step <= upto; ++step) {
      std::int64_t nu = search_nu(ctx, cert.stages, budgets, &cert.checks);

      StageData st;
      st.n = step;
      st.nu = nu;
      for (auto& v : cert.stages.back().sigma)
        st.sigma.push_back(indexed_shift_xor(v, nu));
      st.support_radius = sigma_support_radius(ctx, st.sigma);

      MarkedAlphabet alphabet = make_stage_alphabet(ctx, st.sigma);
      std::vector<Word> closure_words = enumerate_pi(n_translations, step);
      FinitenessWitness fin = finiteness_witness(ctx, alphabet, closure_words, budgets);
      st.k = choose_k(cert.stages.back().k, fin.order, fin.max_flat);
      record(&cert.checks, "finiteness",
             {{"stage", step},
              {"x_count", step},
              {"order", fin.order},
              {"max_flat", fin.max_flat}},
             true);
      record(&cert.checks, "k_bound",
             {{"stage", step}, {"k", st.k}, {"order", fin.order}, {"max_flat", fin.max_flat}},
             st.k > cert.stages.back().k &&
                 st.k >= static_cast<std::int64_t>((fin.order + 1) * fin.max_flat));

      std::uint64_t seed = 0x5eedull + static_cast<std::uint64_t>(step);
      record(&cert.checks, "pi_samples",
             {{"stage", step}, {"count", 32}, {"max_len", 8}, {"seed", seed}},
             pi_samples_hold(ctx, alphabet, n_translations, 32, 8, seed));

      cert.stages.push_back(std::move(st));
    }

    bool monotone = true;
    for (std::size_t i = 1; i < cert.stages.size(); ++i) {
      monotone = monotone && cert.stages[i].nu > cert.stages[i - 1].nu &&
                 cert.stages[i].k > cert.stages[i - 1].k && cert.stages[i].nu % 2 == 0;
    }
    record(&cert.checks, "monotone_even",
           {{"stages", cert.stages.size()}}, monotone);
  } catch (const BudgetExceeded& e) {
    cert.complete = false;
    cert.note = e.what();
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Certificate JSON.

json certificate_to_json(const Certificate& cert) {
  json stages = json::array();
  for (auto& st : cert.stages) {
    json sigma = json::object();
    for (auto& v : st.sigma) sigma[v.s] = v.indices;
    stages.push_back({{"n", st.n},
                      {"nu", st.nu},
                      {"k", st.k},
                      {"sigma", sigma},
                      {"support_radius", st.support_radius}});
  }
  json checks = json::array();
  for (auto& c : cert.checks) {
    json entry = c.params;
    entry["check"] = c.kind;
    entry["ok"] = c.ok;
    checks.push_back(entry);
  }
  json j = {{"version", cert.version},
            {"base", cert.base},
            {"stages", stages},
            {"checks", checks},
            {"complete", cert.complete}};
  if (!cert.note.empty()) j["note"] = cert.note;
  return j;
}

Certificate certificate_from_json(const json& j) {
  Certificate cert;
  cert.version = j.at("version").get<int>();
  if (cert.version != 1) throw UsageError("unsupported certificate version");
  cert.base = j.at("base").get<std::string>();
  GroupContext ctx(cert.base);  // fixes the generator order for sigma
  for (auto& js : j.at("stages")) {
    StageData st;
    st.n = js.at("n").get<int>();
    st.nu = js.at("nu").get<std::int64_t>();
    st.k = js.at("k").get<std::int64_t>();
    st.support_radius = js.at("support_radius").get<std::int64_t>();
    auto& sigma = js.at("sigma");
    for (auto& g : ctx.s_generators()) {
      if (!sigma.contains(g.name))
        throw UsageError("certificate sigma is missing generator " + g.name);
      IndexedInvolution v;
      v.s = g.name;
      v.indices = sigma.at(g.name).get<std::vector<std::int64_t>>();
      if (!std::is_sorted(v.indices.begin(), v.indices.end()))
        throw UsageError("certificate sigma indices must be sorted");
      st.sigma.push_back(std::move(v));
    }
    cert.stages.push_back(std::move(st));
  }
  for (auto& jc : j.at("checks")) {
    CheckRecord c;
    c.kind = jc.at("check").get<std::string>();
    c.ok = jc.at("ok").get<bool>();
    c.params = jc;
    c.params.erase("check");
    c.params.erase("ok");
    cert.checks.push_back(std::move(c));
  }
  cert.complete = j.value("complete", true);
  cert.note = j.value("note", std::string{});
  if (cert.stages.empty()) throw UsageError("certificate has no stages");
  return cert;
}

void save_certificate(const Certificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write certificate to " + path);
  out << certificate_to_json(cert).dump(1) << "\n";
}

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read certificate from " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed certificate JSON: ") + e.what());
  }
  return certificate_from_json(j);
}

// ---------------------------------------------------------------------------
// Replay.

VerifyReport verify_certificate(GroupContext& ctx, const Certificate& cert,
                                const Budgets& budgets) {
  VerifyReport report;
  auto fail = [&](const std::string& what) {
    report.ok = false;
    report.failures.push_back(what);
  };

  if (ctx.spec_string() != cert.base) fail("context and certificate base disagree");

  // structural re-derivation
  const auto& stages = cert.stages;
  if (stages.empty() || stages[0].n != 0 || stages[0].nu != 0 || stages[0].k != 0)
    fail("stage 0 must be (0, 0, 0)");
  auto expect_sigma = stage_zero_sigma(ctx);
  if (stages[0].sigma != expect_sigma) fail("stage 0 sigma must be {0} per generator");
  std::size_t n_translations = ctx.s_generators().size();
  for (std::size_t i = 1; i < stages.size(); ++i) {
    if (stages[i].n != static_cast<int>(i)) fail("stage numbering is broken");
    std::vector<IndexedInvolution> derived;
    for (auto& v : stages[i - 1].sigma)
      derived.push_back(indexed_shift_xor(v, stages[i].nu));
    if (derived != stages[i].sigma)
      fail("stage " + std::to_string(i) + " sigma is not the shift-xor image");
    if (stages[i].support_radius != sigma_support_radius(ctx, stages[i].sigma))
      fail("stage " + std::to_string(i) + " support radius is wrong");
    MarkedAlphabet alphabet = make_stage_alphabet(ctx, stages[i].sigma);
    FinitenessWitness fin = finiteness_witness(
        ctx, alphabet, enumerate_pi(n_translations, static_cast<int>(i)), budgets);
    if (stages[i].k != choose_k(stages[i - 1].k, fin.order, fin.max_flat))
      fail("stage " + std::to_string(i) + " k does not re-derive");
  }

  std::vector<MarkedAlphabet> alphabets;
  for (auto& st : stages) alphabets.push_back(make_stage_alphabet(ctx, st.sigma));

  for (auto& check : cert.checks) {
    ++report.checks_replayed;
    bool ok = false;
    try {
      const auto& p = check.params;
      if (check.kind == "shift_disjoint") {
        int stage = p.at("stage").get<int>();
        std::string s = p.at("s").get<std::string>();
        std::int64_t nu = p.at("nu").get<std::int64_t>();
        const auto& prev = stages.at(static_cast<std::size_t>(stage - 1)).sigma;
        auto it = std::find_if(prev.begin(), prev.end(),
                               [&](const IndexedInvolution& v) { return v.s == s; });
        ok = it != prev.end() && nu == stages.at(static_cast<std::size_t>(stage)).nu &&
             supports_shift_disjoint(ctx, *it, nu);
      } else if (check.kind == "sigma_involution") {
        int stage = p.at("stage").get<int>();
        std::string s = p.at("s").get<std::string>();
        const auto& sig = stages.at(static_cast<std::size_t>(stage)).sigma;
        auto it = std::find_if(sig.begin(), sig.end(),
                               [&](const IndexedInvolution& v) { return v.s == s; });
        if (it != sig.end()) {
          FinPerm f = indexed_to_finperm(ctx, *it);
          ok = !f.is_identity() && perm_compose(f, f).is_identity();
        }
      } else if (check.kind == "ball_iso") {
        std::size_t pl = p.at("p").get<std::size_t>();
        std::size_t q = p.at("q").get<std::size_t>();
        std::int64_t radius = p.at("radius").get<std::int64_t>();
        ok = radius == stages.at(pl).k &&
             marked_ball_iso(ctx, alphabets.at(q), alphabets.at(pl), radius, budgets)
                 .isomorphic;
      } else if (check.kind == "displacement") {
        std::size_t stage = p.at("stage").get<std::size_t>();
        std::int64_t radius = p.at("radius").get<std::int64_t>();
        std::int64_t nu = p.at("nu").get<std::int64_t>();
        MarkedBall ball = marked_ball(ctx, alphabets.at(stage), radius, budgets);
        ok = radius == stages.at(stage - 1).k && nu == stages.at(stage).nu &&
             displacement_holds(ctx, ball, nu);
      } else if (check.kind == "finiteness") {
        std::size_t stage = p.at("stage").get<std::size_t>();
        int x_count = p.at("x_count").get<int>();
        FinitenessWitness fin = finiteness_witness(
            ctx, alphabets.at(stage), enumerate_pi(n_translations, x_count), budgets);
        ok = fin.order == p.at("order").get<std::uint64_t>() &&
             fin.max_flat == p.at("max_flat").get<std::uint64_t>();
      } else if (check.kind == "k_bound") {
        std::size_t stage = p.at("stage").get<std::size_t>();
        std::int64_t k = p.at("k").get<std::int64_t>();
        std::uint64_t order = p.at("order").get<std::uint64_t>();
        std::uint64_t max_flat = p.at("max_flat").get<std::uint64_t>();
        ok = k == stages.at(stage).k && k > stages.at(stage - 1).k &&
             k >= static_cast<std::int64_t>((order + 1) * max_flat);
      } else if (check.kind == "pi_samples") {
        std::size_t stage = p.at("stage").get<std::size_t>();
        ok = pi_samples_hold(ctx, alphabets.at(stage), n_translations,
                             p.at("count").get<int>(), p.at("max_len").get<int>(),
                             p.at("seed").get<std::uint64_t>());
      } else if (check.kind == "nu_chosen") {
        std::size_t stage = p.at("stage").get<std::size_t>();
        std::int64_t nu = p.at("nu").get<std::int64_t>();
        ok = nu == stages.at(stage).nu && nu % 2 == 0 &&
             nu > stages.at(stage - 1).nu;
      } else if (check.kind == "monotone_even") {
        ok = true;
        for (std::size_t i = 1; i < stages.size(); ++i)
          ok = ok && stages[i].nu > stages[i - 1].nu && stages[i].k > stages[i - 1].k &&
               stages[i].nu % 2 == 0;
      } else {
        fail("unknown check kind '" + check.kind + "'");
        continue;
      }
    } catch (const std::exception& e) {
      fail("replay of " + check.kind + " raised: " + e.what());
      continue;
    }
    if (ok != check.ok)
      fail("check " + check.kind + " " + check.params.dump() + " replayed to " +
           (ok ? "true" : "false") + " but was recorded as " +
           (check.ok ? "true" : "false"));
  }
  return report;
}

}  // namespace forge
