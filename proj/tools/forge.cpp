// forge: exact engine for towers of marked permutation overgroups of
// G0 + Z, with replayable certificates, limit-word evaluation, transitivity
// witnesses, and support-escape scans.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "forge/construction.hpp"
#include "forge/errors.hpp"
#include "forge/limit_group.hpp"
#include "forge/mif.hpp"
#include "forge/serialize.hpp"
#include "forge/transitivity.hpp"

namespace {

using forge::Budgets;
using forge::Certificate;
using forge::GroupContext;
using forge::LimitContext;
using forge::Word;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitHard = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;
constexpr int kExitNontrivial = 10;  // wp only

struct Output {
  bool as_json = false;
  bool quiet = false;

  void emit(const json& j, const std::string& text) const {
    if (as_json)
      std::cout << j.dump(1) << "\n";
    else if (!quiet)
      std::cout << text;
  }
};

std::vector<forge::PointId> parse_tuple(GroupContext& ctx, const std::string& text) {
  std::vector<forge::PointId> points;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) points.push_back(ctx.parse_point(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (points.empty()) throw forge::UsageError("empty point tuple: " + text);
  return points;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: certified towers of marked permutation overgroups"};
  app.require_subcommand(1);

  Output out;
  std::uint64_t seed = 1;
  app.add_flag("--json", out.as_json, "machine-readable JSON on stdout");
  app.add_flag("--quiet", out.quiet, "suppress human-readable output");
  app.add_option("--seed", seed, "seed for randomized commands");

  Budgets budgets;
  try {
    budgets = Budgets::from_env();
  } catch (const forge::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  // build
  auto* build = app.add_subcommand("build", "build a stage tower certificate");
  std::string base_text, out_path;
  int stages = 0;
  build->add_option("--base", base_text, "base group spec, e.g. cyclic:2")->required();
  build->add_option("--stages", stages, "highest stage to build")->required();
  build->add_option("--out", out_path, "certificate output path")->required();
  build->add_option("--nu-cap", budgets.nu_cap, "largest shift candidate")
      ->check(CLI::PositiveNumber);
  build->add_option("--ball-cap", budgets.ball_cap, "marked-ball vertex budget")
      ->check(CLI::PositiveNumber);
  build->add_option("--closure-cap", budgets.closure_cap, "finite-closure budget")
      ->check(CLI::PositiveNumber);

  // verify-cert
  auto* verify = app.add_subcommand("verify-cert", "replay every recorded check");
  std::string cert_path;
  verify->add_option("--cert", cert_path, "certificate path")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "apply a word to a point");
  std::string word_text, point_text;
  int eval_stage = -1;
  eval->add_option("--cert", cert_path, "certificate path")->required();
  eval->add_option("--word", word_text, "word, e.g. \"Sa z^-1\"")->required();
  eval->add_option("--point", point_text,
                   "point literal, e.g. a*z^3; omit to print the whole element "
                   "(stage interpretation only)");
  eval->add_option("--stage", eval_stage, "stage interpretation (default: limit)");

  // wp
  auto* wp = app.add_subcommand("wp", "bounded word problem");
  wp->add_option("--cert", cert_path, "certificate path")->required();
  wp->add_option("--word", word_text, "word over the marked letters")->required();

  // ball
  auto* ball_cmd = app.add_subcommand("ball", "enumerate a marked ball");
  std::string group_sel = "stage:0", dot_path;
  std::int64_t radius = 0;
  ball_cmd->add_option("--cert", cert_path, "certificate path")->required();
  ball_cmd->add_option("--group", group_sel, "stage:N or ambient");
  ball_cmd->add_option("--radius", radius, "ball radius")->required();
  ball_cmd->add_option("--dot", dot_path, "write DOT to this path");

  // ball-iso
  auto* iso_cmd = app.add_subcommand("ball-iso", "compare two stage balls");
  int iso_p = 0, iso_q = 0;
  std::int64_t iso_radius = -1;
  iso_cmd->add_option("--cert", cert_path, "certificate path")->required();
  iso_cmd->add_option("--p", iso_p, "first stage")->required();
  iso_cmd->add_option("--q", iso_q, "second stage")->required();
  iso_cmd->add_option("--radius", iso_radius, "radius (default: k of the lower stage)");

  // witness
  auto* witness_cmd = app.add_subcommand("witness", "transitivity witness program");
  std::string from_text, to_text, slp_path;
  std::int64_t flat_max = -1;
  witness_cmd->add_option("--cert", cert_path, "certificate path")->required();
  witness_cmd->add_option("--from", from_text, "comma-separated points")->required();
  witness_cmd->add_option("--to", to_text, "comma-separated points")->required();
  witness_cmd->add_option("--emit-slp", slp_path, "write the program as JSON");
  witness_cmd->add_option("--flat-max", flat_max, "also print the flat word up to this length");

  // escape
  auto* escape_cmd = app.add_subcommand("escape", "support-escape certificate");
  int escape_stages_opt = -1;
  escape_cmd->add_option("--cert", cert_path, "certificate path")->required();
  escape_cmd->add_option("--word", word_text, "nontrivial word")->required();
  escape_cmd->add_option("--stages", escape_stages_opt, "stages to check");

  // mif-scan
  auto* scan_cmd = app.add_subcommand("mif-scan", "random-word support-escape scan");
  int samples = 100, max_len = 1;
  scan_cmd->add_option("--cert", cert_path, "certificate path")->required();
  scan_cmd->add_option("--samples", samples, "number of sampled words")->required();
  scan_cmd->add_option("--max-len", max_len, "maximum flat length")->required();
  scan_cmd->add_option("--seed", seed, "scan seed");

  // pi-closure
  auto* closure_cmd = app.add_subcommand("pi-closure", "closure of limit sigma words");
  int x_count = 1;
  std::uint64_t closure_budget = 100000;
  closure_cmd->add_option("--cert", cert_path, "certificate path")->required();
  closure_cmd->add_option("--x-count", x_count, "closure words to take")->required();
  closure_cmd->add_option("--budget", closure_budget, "element budget");

  // let the global flags appear after the subcommand name too
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (build->parsed()) {
      GroupContext ctx(base_text);
      auto t0 = std::chrono::steady_clock::now();
      Certificate cert = forge::build_stages(ctx, stages, budgets);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      forge::save_certificate(cert, out_path);
      json j = {{"base", cert.base},
                {"stages", cert.stages.size() - 1},
                {"complete", cert.complete},
                {"checks", cert.checks.size()},
                {"seconds", secs},
                {"out", out_path}};
      if (!cert.complete) j["note"] = cert.note;
      std::string text = "built " + std::to_string(cert.stages.size() - 1) +
                         " stage(s) over " + cert.base + " in " + std::to_string(secs) +
                         "s -> " + out_path + "\n";
      if (!cert.complete) text += "INCOMPLETE: " + cert.note + "\n";
      out.emit(j, text);
      return cert.complete ? kExitOk : kExitInconclusive;
    }

    if (verify->parsed()) {
      Certificate cert = forge::load_certificate(cert_path);
      GroupContext ctx(cert.base);
      forge::VerifyReport report = forge::verify_certificate(ctx, cert, budgets);
      json j = {{"ok", report.ok},
                {"checks_replayed", report.checks_replayed},
                {"failures", report.failures}};
      std::string text = report.ok
                             ? "certificate ok (" + std::to_string(report.checks_replayed) +
                                   " checks replayed)\n"
                             : "certificate FAILED replay\n";
      for (auto& f : report.failures) text += "  " + f + "\n";
      out.emit(j, text);
      return report.ok ? kExitOk : kExitHard;
    }

    Certificate cert;
    std::optional<GroupContext> ctx;
    std::optional<LimitContext> lim;
    if (!cert_path.empty()) {
      cert = forge::load_certificate(cert_path);
      ctx.emplace(cert.base);
      lim.emplace(*ctx, cert);
    }

    if (eval->parsed()) {
      Word w = forge::parse_word(lim->names(), word_text);
      if (eval_stage > lim->top_stage())
        throw forge::UsageError("stage exceeds the certificate");
      if (point_text.empty()) {
        // whole-element query: only stage values are finitely presentable
        if (eval_stage < 0)
          throw forge::UsageError(
              "a limit element has no finite presentation; pass --point or --stage");
        forge::AugElement value = lim->stage_value(w, eval_stage);
        json j = forge::aug_to_json(*ctx, value);
        j["word"] = word_text;
        j["stage"] = eval_stage;
        out.emit(j, "perm " + forge::finperm_to_json(*ctx, value.perm).dump() +
                        " trans " + ctx->point_literal(value.trans) + "\n");
        return kExitOk;
      }
      forge::PointId x = ctx->parse_point(point_text);
      forge::PointId image;
      if (eval_stage >= 0) {
        image = forge::apply_word(*ctx, lim->stage_alphabet(eval_stage), w, x);
      } else {
        image = lim->limit_apply(w, x);
      }
      json j = {{"word", word_text},
                {"point", ctx->point_literal(x)},
                {"image", ctx->point_literal(image)},
                {"interpretation", eval_stage >= 0 ? std::to_string(eval_stage) : "limit"}};
      out.emit(j, ctx->point_literal(image) + "\n");
      return kExitOk;
    }

    if (wp->parsed()) {
      Word w = forge::parse_word(lim->names(), word_text);
      auto result = lim->word_problem(w);
      switch (result.verdict) {
        case forge::WordProblemResult::Verdict::Trivial:
          out.emit({{"verdict", "trivial"}, {"stage_used", result.stage_used}},
                   "trivial\n");
          return kExitOk;
        case forge::WordProblemResult::Verdict::Nontrivial: {
          json j = {{"verdict", "nontrivial"},
                    {"stage_used", result.stage_used},
                    {"moved_point", ctx->point_literal(result.moved_point)},
                    {"moved_image", ctx->point_literal(result.moved_image)},
                    {"quotient_image", ctx->point_literal(lim->quotient_to_g(w))}};
          out.emit(j, "nontrivial (moves " + ctx->point_literal(result.moved_point) +
                          " to " + ctx->point_literal(result.moved_image) + ")\n");
          return kExitNontrivial;
        }
        case forge::WordProblemResult::Verdict::Undecided: {
          // semi-decision fallback: a moved point still certifies nontriviality
          if (auto moved = lim->find_moved_point(w)) {
            json j = {{"verdict", "nontrivial"},
                      {"decided_by", "moved-point search"},
                      {"moved_point", ctx->point_literal(*moved)},
                      {"moved_image", ctx->point_literal(lim->limit_apply(w, *moved))}};
            out.emit(j, "nontrivial (beyond the certified radii, but it moves " +
                            ctx->point_literal(*moved) + ")\n");
            return kExitNontrivial;
          }
          out.emit({{"verdict", "undecided"}, {"needed_k", result.needed_k}},
                   "undecided at this certificate: flat length " +
                       std::to_string(result.needed_k) + " exceeds every certified radius; "
                       "rebuild with more stages\n");
          return kExitInconclusive;
        }
      }
    }

    if (ball_cmd->parsed()) {
      if (group_sel == "ambient") {
        const forge::AmbientBall& b = ctx->ball(radius);
        json members = json::array();
        for (auto p : b.members) members.push_back(ctx->point_literal(p));
        out.emit({{"radius", radius}, {"vertices", b.members.size()}, {"members", members}},
                 std::to_string(b.members.size()) + " vertices\n");
        return kExitOk;
      }
      if (group_sel.rfind("stage:", 0) != 0)
        throw forge::UsageError("--group must be 'ambient' or 'stage:N'");
      int stage = std::stoi(group_sel.substr(6));
      if (stage < 0 || stage > lim->top_stage())
        throw forge::UsageError("stage out of range for this certificate");
      bool with_edges = !dot_path.empty();
      forge::MarkedBall ball =
          forge::marked_ball(*ctx, lim->stage_alphabet(stage), radius, budgets, with_edges);
      if (!dot_path.empty()) {
        std::ofstream dot(dot_path);
        if (!dot) throw forge::UsageError("cannot write " + dot_path);
        dot << forge::ball_to_dot(lim->stage_alphabet(stage), ball);
      }
      json j = {{"group", group_sel}, {"radius", radius}, {"vertices", ball.size()}};
      if (!dot_path.empty()) j["dot"] = dot_path;
      out.emit(j, std::to_string(ball.size()) + " vertices\n");
      return kExitOk;
    }

    if (iso_cmd->parsed()) {
      if (iso_p < 0 || iso_q < 0 || iso_p > lim->top_stage() || iso_q > lim->top_stage())
        throw forge::UsageError("stage out of range for this certificate");
      std::int64_t r = iso_radius >= 0 ? iso_radius
                                       : lim->k(std::min(iso_p, iso_q));
      auto outcome = forge::marked_ball_iso(*ctx, lim->stage_alphabet(iso_q),
                                            lim->stage_alphabet(iso_p), r, budgets);
      json j = {{"p", iso_p}, {"q", iso_q}, {"radius", r},
                {"isomorphic", outcome.isomorphic}, {"vertices", outcome.vertices}};
      std::string text = outcome.isomorphic ? "isomorphic at radius " + std::to_string(r) + "\n"
                                            : "NOT isomorphic at radius " + std::to_string(r) + "\n";
      if (!outcome.isomorphic) {
        j["witness_u"] = forge::word_to_text(lim->names(), outcome.witness_u);
        j["witness_v"] = forge::word_to_text(lim->names(), outcome.witness_v);
        text += "  separating pair: u = " + forge::word_to_text(lim->names(), outcome.witness_u) +
                ", v = " + forge::word_to_text(lim->names(), outcome.witness_v) + "\n";
      }
      out.emit(j, text);
      return outcome.isomorphic ? kExitOk : kExitHard;
    }

    if (witness_cmd->parsed()) {
      auto from = parse_tuple(*ctx, from_text);
      auto to = parse_tuple(*ctx, to_text);
      forge::Slp slp = forge::witness(*lim, from, to);
      json j = {{"from", from_text},
                {"to", to_text},
                {"flat_length", slp.flat_length()},
                {"nodes", slp.nodes.size()},
                {"verified", true}};
      if (!slp_path.empty()) {
        std::ofstream f(slp_path);
        if (!f) throw forge::UsageError("cannot write " + slp_path);
        f << forge::slp_to_json(lim->names(), slp).dump(1) << "\n";
        j["slp"] = slp_path;
      }
      std::string text = "witness verified; flat length " +
                         std::to_string(slp.flat_length()) + ", " +
                         std::to_string(slp.nodes.size()) + " nodes\n";
      if (flat_max >= 0) {
        Word flat = slp.expand(static_cast<std::uint64_t>(flat_max));
        j["flat"] = forge::word_to_text(lim->names(), flat);
        text += forge::word_to_text(lim->names(), flat) + "\n";
      }
      out.emit(j, text);
      return kExitOk;
    }

    if (escape_cmd->parsed()) {
      Word w = forge::parse_word(lim->names(), word_text);
      int depth = escape_stages_opt > 0 ? escape_stages_opt : budgets.escape_stages;
      forge::EscapeReport report = forge::escape_certificate(*lim, w, depth);
      json j = forge::escape_report_to_json(*lim, report);
      std::string verdict = j["verdict"].get<std::string>();
      out.emit(j, "verdict: " + verdict + " (" + std::to_string(report.checks.size()) +
                      " stage checks)\n");
      if (report.verdict == forge::EscapeReport::Verdict::Escaped) return kExitOk;
      return report.verdict == forge::EscapeReport::Verdict::Confined ? kExitHard
                                                                      : kExitInconclusive;
    }

    if (scan_cmd->parsed()) {
      forge::MifSummary summary = forge::mif_scan(*lim, samples, max_len, seed);
      json j = forge::mif_summary_to_json(*lim, summary);
      out.emit(j, "samples=" + std::to_string(summary.samples) +
                      " trivial=" + std::to_string(summary.trivial) +
                      " escaped=" + std::to_string(summary.escaped) +
                      " inconclusive=" + std::to_string(summary.inconclusive) +
                      " falsifiers=" + std::to_string(summary.falsifiers) + " seed=" +
                      std::to_string(summary.seed) + "\n");
      return summary.falsifiers > 0 ? kExitHard : kExitOk;
    }

    if (closure_cmd->parsed()) {
      forge::PiClosureResult result = forge::pi_closure(*lim, x_count, closure_budget);
      json j = {{"x_count", x_count},
                {"conclusive", result.conclusive},
                {"order", result.order},
                {"stage_used", result.stage_used},
                {"stage_order", result.stage_order},
                {"stage_match", result.stage_match}};
      if (!result.conclusive) {
        j["blocking_length"] = result.blocking_length;
        out.emit(j, "inconclusive (blocking length " +
                        std::to_string(result.blocking_length) + ")\n");
        return kExitInconclusive;
      }
      out.emit(j, "order " + std::to_string(result.order) + " (stage order " +
                      std::to_string(result.stage_order) + ")\n");
      return result.stage_match ? kExitOk : kExitHard;
    }
  } catch (const forge::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const forge::BudgetExceeded& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const forge::CertificateExhausted& e) {
    std::cerr << "inconclusive: " << e.what() << " (approximately "
              << e.needed_stages_hint << " more stage(s) needed)\n";
    return kExitInconclusive;
  } catch (const forge::InvariantViolation& e) {
    std::cerr << "hard error: " << e.what() << "\n";
    return kExitHard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitHard;
  }
  return kExitUsage;
}
