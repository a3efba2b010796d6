#include "forge/serialize.hpp"

#include <algorithm>

#include "forge/errors.hpp"

namespace forge {

using json = nlohmann::json;

json finperm_to_json(const GroupContext& ctx, const FinPerm& perm) {
  std::vector<FinPerm::Pair> pairs = perm.pairs();
  std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    return ctx.point(a.first) < ctx.point(b.first);
  });
  json out = json::array();
  for (auto& [x, y] : pairs)
    out.push_back({ctx.point_literal(x), ctx.point_literal(y)});
  return out;
}

json aug_to_json(const GroupContext& ctx, const AugElement& e) {
  return {{"perm", finperm_to_json(ctx, e.perm)},
          {"trans", ctx.point_literal(e.trans)}};
}

json indexed_involution_to_json(const IndexedInvolution& v) {
  return {{"s", v.s}, {"indices", v.indices}};
}

json slp_to_json(const MarkedAlphabet& alphabet, const Slp& slp) {
  json nodes = json::array();
  for (auto& n : slp.nodes) {
    switch (n.op) {
      case Slp::Op::Letter: {
        json entry = {{"op", "letter"}, {"letter", alphabet.letters[n.lit.letter].name}};
        if (n.lit.sign < 0) entry["sign"] = -1;
        nodes.push_back(entry);
        break;
      }
      case Slp::Op::Mul:
        nodes.push_back({{"op", "mul"}, {"a", n.a}, {"b", n.b}});
        break;
      case Slp::Op::Inv:
        nodes.push_back({{"op", "inv"}, {"a", n.a}});
        break;
    }
  }
  json out = {{"nodes", nodes}};
  if (slp.root)
    out["root"] = *slp.root;
  else
    out["root"] = nullptr;
  return out;
}

Slp slp_from_json(const MarkedAlphabet& alphabet, const json& j) {
  Slp slp;
  for (auto& jn : j.at("nodes")) {
    std::string op = jn.at("op").get<std::string>();
    if (op == "letter") {
      int idx = alphabet.letter_index(jn.at("letter").get<std::string>());
      if (idx < 0) throw UsageError("unknown letter in program: " + jn.dump());
      int sign = jn.value("sign", 1);
      slp.add_letter(Lit{static_cast<std::uint16_t>(idx),
                         static_cast<std::int8_t>(sign < 0 ? -1 : 1)});
    } else if (op == "mul") {
      std::uint32_t a = jn.at("a").get<std::uint32_t>();
      std::uint32_t b = jn.at("b").get<std::uint32_t>();
      if (a >= slp.nodes.size() || b >= slp.nodes.size())
        throw UsageError("program node references a later node");
      slp.add_mul(a, b);
    } else if (op == "inv") {
      std::uint32_t a = jn.at("a").get<std::uint32_t>();
      if (a >= slp.nodes.size())
        throw UsageError("program node references a later node");
      slp.add_inv(a);
    } else {
      throw UsageError("unknown program op '" + op + "'");
    }
  }
  if (!j.at("root").is_null()) {
    std::uint32_t root = j.at("root").get<std::uint32_t>();
    if (root >= slp.nodes.size()) throw UsageError("program root out of range");
    slp.root = root;
  }
  return slp;
}

json escape_report_to_json(const LimitContext& lim, const EscapeReport& report) {
  const GroupContext& ctx = lim.group();
  json checks = json::array();
  for (auto& c : report.checks)
    checks.push_back({{"stage", c.stage},
                      {"nu", c.nu},
                      {"displaced", ctx.point_literal(c.displaced)},
                      {"chain_ok", c.chain_ok},
                      {"moved", c.moved}});
  const char* verdict = report.verdict == EscapeReport::Verdict::Escaped ? "escaped"
                        : report.verdict == EscapeReport::Verdict::Confined
                            ? "confined"
                            : "inconclusive";
  return {{"word", word_to_text(lim.names(), report.word)},
          {"conjugated", word_to_text(lim.names(), report.conjugated)},
          {"moved_point", ctx.point_literal(report.moved_point)},
          {"moved_image", ctx.point_literal(report.moved_image)},
          {"checks", checks},
          {"verdict", verdict}};
}

json mif_summary_to_json(const LimitContext& lim, const MifSummary& summary) {
  json falsifiers = json::array();
  for (auto& r : summary.falsifier_reports)
    falsifiers.push_back(escape_report_to_json(lim, r));
  return {{"seed", summary.seed},
          {"samples", summary.samples},
          {"trivial", summary.trivial},
          {"escaped", summary.escaped},
          {"inconclusive", summary.inconclusive},
          {"falsifiers", summary.falsifiers},
          {"falsifier_reports", falsifiers}};
}

}  // namespace forge
