#include "forge/limit_group.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "forge/errors.hpp"

namespace forge {

LimitContext::LimitContext(GroupContext& ctx, const Certificate& cert)
    : ctx_(ctx), cert_(cert) {
  if (ctx_.spec_string() != cert_.base)
    throw std::invalid_argument("certificate was built for base " + cert_.base);
  if (cert_.stages.empty()) throw std::invalid_argument("certificate has no stages");
  alphabets_.resize(cert_.stages.size());
  // top-stage index sets are the limit sets below the horizon
  for (auto& v : cert_.stages.back().sigma) limit_indices_.push_back(v.indices);
}

std::int64_t LimitContext::horizon() const {
  return cert_.stages.back().nu + 1;
}

const MarkedAlphabet& LimitContext::stage_alphabet(int n) const {
  auto& slot = alphabets_.at(static_cast<std::size_t>(n));
  if (!slot)
    slot = make_stage_alphabet(ctx_, cert_.stages[static_cast<std::size_t>(n)].sigma);
  return *slot;
}

bool LimitContext::limit_index_member(std::size_t s_pos, std::int64_t m) const {
  if (m < 0) return false;
  if (m > horizon()) {
    // increments double roughly stage by stage; each new stage raises the
    // horizon by at least 2
    std::int64_t hint = (m - horizon() + 1) / 2 + 1;
    throw CertificateExhausted(
        "limit index query at " + std::to_string(m) + " exceeds the stable horizon " +
            std::to_string(horizon()) + "; rebuild with more stages",
        hint);
  }
  const auto& indices = limit_indices_.at(s_pos);
  return std::binary_search(indices.begin(), indices.end(), m);
}

PointId LimitContext::limit_sigma_apply(std::size_t s_pos, PointId x) const {
  const AmbientElement& e = ctx_.point(x);
  const BaseElement id_base = base_identity(ctx_.spec());
  if (s_pos == ctx_.z_index()) {
    if (e.base != id_base) return x;
    if (limit_index_member(s_pos, e.zexp)) return ctx_.z_power(e.zexp + 1);
    if (limit_index_member(s_pos, e.zexp - 1)) return ctx_.z_power(e.zexp - 1);
    return x;
  }
  const SGen& gen = ctx_.s_generators()[s_pos];
  const AmbientElement& s_elem = ctx_.point(gen.value);
  if (e.base == id_base) {
    if (limit_index_member(s_pos, e.zexp))
      return ctx_.mul(ctx_.z_power(e.zexp), gen.value);
    return x;
  }
  if (e.base == s_elem.base && limit_index_member(s_pos, e.zexp))
    return ctx_.z_power(e.zexp);
  return x;
}

PointId LimitContext::limit_letter_apply(Lit lit, PointId x) const {
  std::size_t T = n_translations();
  if (lit.letter >= T) return limit_sigma_apply(lit.letter - T, x);  // involutions
  const SGen& gen = ctx_.s_generators()[lit.letter];
  return ctx_.mul(lit.sign > 0 ? gen.value : gen.inverse, x);
}

PointId LimitContext::limit_apply(const Word& w, PointId x) const {
  for (auto it = w.rbegin(); it != w.rend(); ++it) x = limit_letter_apply(*it, x);
  return x;
}

PointId LimitContext::limit_apply(const Slp& slp, PointId x) const {
  if (!slp.root) return x;
  std::unordered_map<std::uint64_t, PointId> memo;
  auto rec = [&](auto&& self, std::uint32_t i, bool inv, PointId p) -> PointId {
    std::uint64_t key = ((static_cast<std::uint64_t>(i) * 2 + (inv ? 1 : 0)) << 32) | p;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const Slp::Node& n = slp.nodes[i];
    PointId r = p;
    switch (n.op) {
      case Slp::Op::Letter: {
        Lit lit = n.lit;
        if (inv) lit.sign = static_cast<std::int8_t>(-lit.sign);
        r = limit_letter_apply(lit, p);
        break;
      }
      case Slp::Op::Mul:
        r = inv ? self(self, n.b, true, self(self, n.a, true, p))
                : self(self, n.a, false, self(self, n.b, false, p));
        break;
      case Slp::Op::Inv:
        r = self(self, n.a, !inv, p);
        break;
    }
    memo.emplace(key, r);
    return r;
  };
  return rec(rec, *slp.root, false, x);
}

AugElement LimitContext::stage_value(const Word& w, int n) const {
  return evaluate_word(ctx_, stage_alphabet(n), w);
}

int LimitContext::stabilization_stage(const Word& w, PointId x) const {
  std::size_t T = n_translations();
  int top = top_stage();
  std::int64_t best_needed = 0;
  for (int n = 0; n <= top; ++n) {
    const MarkedAlphabet& alphabet = stage_alphabet(n);
    PointId p = x;
    std::int64_t max_sigma_zexp = std::numeric_limits<std::int64_t>::min();
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      const MarkedLetter& letter = alphabet.letters[it->letter];
      if (it->letter >= T)
        max_sigma_zexp = std::max(max_sigma_zexp, ctx_.point(p).zexp);
      p = aug_apply(ctx_, it->sign > 0 ? letter.value : letter.inverse, p);
    }
    std::int64_t bound = n < top ? nu(n + 1) - 1 : horizon();
    if (max_sigma_zexp <= bound) return n;
    best_needed = max_sigma_zexp;
  }
  throw CertificateExhausted(
      "no built stage stabilizes this evaluation (trajectory reaches z-exponent " +
          std::to_string(best_needed) + "); rebuild with more stages",
      (best_needed - horizon() + 1) / 2 + 1);
}

WordProblemResult LimitContext::word_problem(const Word& w) const {
  WordProblemResult result;
  std::int64_t flat = static_cast<std::int64_t>(w.size());
  int stage = -1;
  for (int n = 0; n <= top_stage(); ++n)
    if (k(n) >= flat) {
      stage = n;
      break;
    }
  if (stage < 0) {
    result.verdict = WordProblemResult::Verdict::Undecided;
    result.needed_k = flat;
    return result;
  }
  result.stage_used = stage;
  AugElement value = stage_value(w, stage);
  if (value.is_identity(ctx_)) {
    result.verdict = WordProblemResult::Verdict::Trivial;
    return result;
  }

  // moved-point evidence, re-verified against the limit action
  std::vector<PointId> candidates{ctx_.identity(), ctx_.z_power(1), ctx_.z_power(-1)};
  if (!value.perm.is_identity()) {
    PointId best = value.perm.pairs()[0].first;
    for (auto& [from, to] : value.perm.pairs()) {
      (void)to;
      if (ctx_.point(from) < ctx_.point(best)) best = from;
    }
    candidates.push_back(best);
  }
  if (value.trans != ctx_.identity()) {
    std::int64_t far = std::abs(ctx_.point(value.trans).zexp) + 1;
    for (auto& [from, to] : value.perm.pairs()) {
      (void)to;
      far = std::max(far, std::abs(ctx_.point(from).zexp) + 1);
    }
    candidates.push_back(ctx_.z_power(far));
  }
  for (PointId x : candidates) {
    try {
      PointId image = limit_apply(w, x);
      if (image != x) {
        result.verdict = WordProblemResult::Verdict::Nontrivial;
        result.moved_point = x;
        result.moved_image = image;
        return result;
      }
    } catch (const CertificateExhausted&) {
      continue;  // try a nearer candidate
    }
  }
  if (auto moved = find_moved_point(w)) {
    result.verdict = WordProblemResult::Verdict::Nontrivial;
    result.moved_point = *moved;
    result.moved_image = limit_apply(w, *moved);
    return result;
  }
  throw InvariantViolation(
      "stage value is nontrivial but no moved point verifies against the limit");
}

PointId LimitContext::quotient_to_g(const Word& w) const {
  std::size_t T = n_translations();
  PointId acc = ctx_.identity();
  for (auto lit : w) {
    if (lit.letter >= T) continue;
    const SGen& gen = ctx_.s_generators()[lit.letter];
    acc = ctx_.mul(acc, lit.sign > 0 ? gen.value : gen.inverse);
  }
  return acc;
}

PointId LimitContext::quotient_to_g(const Slp& slp) const {
  if (!slp.root) return ctx_.identity();
  std::vector<char> needed(slp.nodes.size(), 0);
  std::vector<std::uint32_t> stack{*slp.root};
  while (!stack.empty()) {
    std::uint32_t i = stack.back();
    stack.pop_back();
    if (needed[i]) continue;
    needed[i] = 1;
    const Slp::Node& n = slp.nodes[i];
    if (n.op != Slp::Op::Letter) {
      stack.push_back(n.a);
      if (n.op == Slp::Op::Mul) stack.push_back(n.b);
    }
  }
  std::size_t T = n_translations();
  std::vector<PointId> value(slp.nodes.size(), ctx_.identity());
  for (std::size_t i = 0; i < slp.nodes.size(); ++i) {
    if (!needed[i]) continue;
    const Slp::Node& n = slp.nodes[i];
    switch (n.op) {
      case Slp::Op::Letter:
        if (n.lit.letter < T) {
          const SGen& gen = ctx_.s_generators()[n.lit.letter];
          value[i] = n.lit.sign > 0 ? gen.value : gen.inverse;
        }
        break;
      case Slp::Op::Mul:
        value[i] = ctx_.mul(value[n.a], value[n.b]);
        break;
      case Slp::Op::Inv:
        value[i] = ctx_.inv(value[n.a]);
        break;
    }
  }
  return value[*slp.root];
}

std::optional<PointId> LimitContext::find_moved_point(const Word& w) const {
  std::int64_t radius = static_cast<std::int64_t>(w.size());
  const AmbientBall& ball = ctx_.ball(radius);
  for (PointId x : ball.members) {
    try {
      if (limit_apply(w, x) != x) return x;
    } catch (const CertificateExhausted&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace forge
