#include "forge/transitivity.hpp"

#include <algorithm>

#include "forge/errors.hpp"

namespace forge {

namespace {

std::int64_t min_positive(const std::vector<std::int64_t>& indices) {
  for (auto m : indices)
    if (m > 0) return m;
  return -1;
}

Word geodesic_word(const LimitContext& lim, const AmbientBall& ball, PointId p) {
  Word w;
  for (auto [gen, sign] : lim.group().geodesic(ball, p))
    w.push_back(Lit{static_cast<std::uint16_t>(gen), static_cast<std::int8_t>(sign)});
  return w;
}

}  // namespace

std::vector<std::int64_t> trim_indices(std::vector<std::int64_t> indices,
                                       std::int64_t level, int* steps) {
  if (steps) *steps = 0;
  std::int64_t prev = 0;
  for (std::int64_t p = min_positive(indices); p > 0 && p <= level;
       p = min_positive(indices)) {
    if (p <= prev)
      throw InvariantViolation("trim did not increase the minimal positive index");
    prev = p;
    indices = shift_xor_indices(indices, p);
    if (steps) ++(*steps);
  }
  return indices;
}

TrimmedInvolution trim(const LimitContext& lim, std::size_t s_pos, std::int64_t level) {
  if (level < 0) throw std::invalid_argument("trim level must be >= 0");
  if (level > lim.horizon())
    throw CertificateExhausted(
        "trim level " + std::to_string(level) + " exceeds the stable horizon " +
            std::to_string(lim.horizon()),
        (level - lim.horizon() + 1) / 2 + 1);

  // known part of the limit index set
  std::vector<std::int64_t> indices;
  for (std::int64_t m = 0; m <= lim.horizon(); ++m)
    if (lim.limit_index_member(s_pos, m)) indices.push_back(m);

  TrimmedInvolution out;
  out.s_pos = s_pos;
  out.level = level;
  std::uint16_t sigma_letter =
      static_cast<std::uint16_t>(lim.n_translations() + s_pos);
  out.slp = Slp::from_word(Word{Lit{sigma_letter, 1}});

  const MarkedAlphabet& names = lim.names();
  std::int64_t prev = 0;
  for (std::int64_t p = min_positive(indices); p > 0 && p <= level;
       p = min_positive(indices)) {
    if (p <= prev)
      throw InvariantViolation("trim did not increase the minimal positive index");
    if (s_pos == lim.group().z_index() && p % 2 != 0)
      throw InvariantViolation("trim shift for the z involution must stay even");
    prev = p;
    // indices beyond the horizon are unknown but their membership below it
    // is unaffected: m in J + p needs m - p in J, and m - p < m
    indices = shift_xor_indices(indices, p);
    while (!indices.empty() && indices.back() > lim.horizon()) indices.pop_back();

    Slp zp = Slp::z_power(names, p);
    Slp next;
    auto z_root = next.absorb(zp);
    auto cur_root = next.absorb(out.slp);
    // (z^p cur z^-p) cur
    std::uint32_t conj =
        next.add_mul(next.add_mul(*z_root, *cur_root), next.add_inv(*z_root));
    next.root = next.add_mul(conj, *cur_root);
    out.slp = std::move(next);
  }
  out.indices = indices;
  if (!out.indices.empty() && out.indices[0] != 0)
    throw InvariantViolation("trimmed involution lost index 0");
  return out;
}

TranspositionRealizer realize_transposition(const LimitContext& lim, std::size_t s_pos,
                                            PointId f, std::int64_t n) {
  GroupContext& ctx = lim.group();
  const AmbientBall& ball = ctx.ball(n);
  PointId fs = ctx.mul(f, ctx.s_generators()[s_pos].value);
  if (!ball.contains(f) || !ball.contains(fs))
    throw std::invalid_argument("both endpoints must lie in the radius-" +
                                std::to_string(n) + " ball");

  std::int64_t level = n + ctx.norm(f) + 1;
  TrimmedInvolution trimmed = trim(lim, s_pos, level);

  TranspositionRealizer out;
  out.s_pos = s_pos;
  out.f = f;
  out.n = n;
  Word f_word = geodesic_word(lim, ball, f);
  if (f_word.empty()) {
    out.slp = trimmed.slp;
  } else {
    Slp slp;
    auto f_root = slp.absorb(Slp::from_word(f_word));
    auto t_root = slp.absorb(trimmed.slp);
    slp.root = slp.add_mul(slp.add_mul(*f_root, *t_root), slp.add_inv(*f_root));
    out.slp = std::move(slp);
  }

  // exhaustive check on the ball: swaps f <-> fs, fixes everything else
  for (PointId x : ball.members) {
    PointId expect = x == f ? fs : x == fs ? f : x;
    if (lim.limit_apply(out.slp, x) != expect)
      throw InvariantViolation("transposition realizer failed its ball check");
  }
  return out;
}

Slp witness(const LimitContext& lim, std::span<const PointId> from,
            std::span<const PointId> to) {
  if (from.size() != to.size() || from.empty())
    throw std::invalid_argument("tuples must be nonempty and of equal length");
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = i + 1; j < from.size(); ++j)
      if (from[i] == from[j] || to[i] == to[j])
        throw std::invalid_argument("tuple entries must be distinct");

  GroupContext& ctx = lim.group();
  std::int64_t n = 0;
  for (PointId p : from) n = std::max(n, ctx.norm(p));
  for (PointId p : to) n = std::max(n, ctx.norm(p));
  const AmbientBall& ball = ctx.ball(n);
  std::size_t V = ball.members.size();

  // extend the partial map to a permutation of the ball, matching the
  // unused points in BFS order
  std::vector<std::uint32_t> target(V, kNoVertex);
  std::vector<char> used(V, 0);
  for (std::size_t i = 0; i < from.size(); ++i) {
    std::uint32_t a = ball.index.at(from[i]);
    std::uint32_t b = ball.index.at(to[i]);
    target[a] = b;
    used[b] = 1;
  }
  std::vector<std::uint32_t> free_targets;
  for (std::uint32_t i = 0; i < V; ++i)
    if (!used[i]) free_targets.push_back(i);
  std::size_t next_free = 0;
  for (std::uint32_t i = 0; i < V; ++i)
    if (target[i] == kNoVertex) target[i] = free_targets[next_free++];

  // token routing on the BFS spanning tree: tokens carry their destination;
  // fix the deepest member, then shrink the tree (a BFS prefix stays
  // connected and ancestors have smaller indices)
  std::vector<std::uint32_t> token_at(V), pos_of(V);
  for (std::uint32_t i = 0; i < V; ++i) {
    token_at[i] = target[i];
    pos_of[target[i]] = i;
  }
  auto tree_path = [&](std::uint32_t a, std::uint32_t b) {
    std::vector<std::uint32_t> up_a{a}, up_b{b};
    std::uint32_t x = a, y = b;
    while (x != y) {
      if (x > y) {
        x = static_cast<std::uint32_t>(ball.parent[x]);
        up_a.push_back(x);
      } else {
        y = static_cast<std::uint32_t>(ball.parent[y]);
        up_b.push_back(y);
      }
    }
    up_a.insert(up_a.end(), up_b.rbegin() + 1, up_b.rend());
    return up_a;  // a .. lca .. b
  };

  std::vector<std::pair<std::uint32_t, std::uint32_t>> swaps;  // ball indices
  for (std::uint32_t v = static_cast<std::uint32_t>(V); v-- > 1;) {
    std::uint32_t cur = pos_of[v];
    if (cur == v) continue;
    auto path = tree_path(cur, v);
    for (std::size_t step = 0; step + 1 < path.size(); ++step) {
      std::uint32_t a = path[step], b = path[step + 1];
      swaps.emplace_back(a, b);
      std::swap(token_at[a], token_at[b]);
      pos_of[token_at[a]] = a;
      pos_of[token_at[b]] = b;
    }
  }
  for (std::uint32_t i = 0; i < V; ++i)
    if (token_at[i] != i)
      throw InvariantViolation("token routing did not sort the ball");

  // each tree edge joins some g to g*s; realize each swap accordingly
  std::map<std::pair<std::size_t, PointId>, Slp> realizer_cache;
  auto realizer_for = [&](std::uint32_t a, std::uint32_t b) -> const Slp& {
    // one endpoint is the BFS parent of the other
    std::uint32_t child = ball.parent[a] == static_cast<std::int32_t>(b) ? a : b;
    std::uint32_t par = child == a ? b : a;
    int sym = ball.parent_sym[child];
    std::size_t ngen = ctx.s_generators().size();
    std::size_t gen = static_cast<std::size_t>(sym) % ngen;
    bool positive = static_cast<std::size_t>(sym) < ngen;
    PointId f = positive ? ball.members[par] : ball.members[child];
    auto key = std::make_pair(gen, f);
    auto it = realizer_cache.find(key);
    if (it == realizer_cache.end())
      it = realizer_cache.emplace(key, realize_transposition(lim, gen, f, n).slp).first;
    return it->second;
  };

  // swaps apply left to right; the group word lists them right to left
  Slp out;
  for (auto it = swaps.rbegin(); it != swaps.rend(); ++it)
    out.append_product(realizer_for(it->first, it->second));

  for (std::size_t i = 0; i < from.size(); ++i)
    if (lim.limit_apply(out, from[i]) != to[i])
      throw InvariantViolation("witness failed to map a tuple entry");
  return out;
}

}  // namespace forge
