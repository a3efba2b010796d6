#include "forge/marked.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "forge/errors.hpp"

namespace forge {

namespace {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t hash_aug(std::span<const FinPerm::Pair> pairs, PointId trans) {
  std::uint64_t h = mix64(0x5eedull ^ trans);
  for (auto& [x, y] : pairs)
    h = mix64(h ^ ((static_cast<std::uint64_t>(x) << 32) | y));
  return h;
}

constexpr std::uint64_t kFlatCap = 1ull << 62;

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return (s < a || s > kFlatCap) ? kFlatCap : s;
}

}  // namespace

AugElement aug_identity(const GroupContext& ctx) {
  return AugElement{FinPerm{}, ctx.identity()};
}

PointId aug_apply(GroupContext& ctx, const AugElement& u, PointId x) {
  return u.perm.apply(ctx.mul(u.trans, x));
}

AugElement aug_multiply(GroupContext& ctx, const AugElement& u, const AugElement& v) {
  AugElement r;
  r.perm = perm_compose(u.perm, perm_conjugate_by_translation(ctx, v.perm, u.trans));
  r.trans = ctx.mul(u.trans, v.trans);
  return r;
}

AugElement aug_inverse(GroupContext& ctx, const AugElement& u) {
  AugElement r;
  r.trans = ctx.inv(u.trans);
  r.perm = perm_conjugate_by_translation(ctx, u.perm.inverse(), r.trans);
  return r;
}

int MarkedAlphabet::letter_index(const std::string& name) const {
  for (std::size_t i = 0; i < letters.size(); ++i)
    if (letters[i].name == name) return static_cast<int>(i);
  return -1;
}

Word free_reduce(const Word& w) {
  Word out;
  for (auto lit : w) {
    if (!out.empty() && out.back().letter == lit.letter && out.back().sign == -lit.sign)
      out.pop_back();
    else
      out.push_back(lit);
  }
  return out;
}

Word word_inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back(Lit{it->letter, static_cast<std::int8_t>(-it->sign)});
  return out;
}

Word word_concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string word_to_text(const MarkedAlphabet& alphabet, const Word& w) {
  std::string out;
  for (auto lit : w) {
    if (!out.empty()) out += ' ';
    out += alphabet.letters[lit.letter].name;
    if (lit.sign < 0) out += "^-1";
  }
  return out;
}

Word parse_word(const MarkedAlphabet& alphabet, const std::string& text) {
  Word out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    std::int64_t exp = 1;
    std::string name = token;
    auto caret = token.find('^');
    if (caret != std::string::npos) {
      name = token.substr(0, caret);
      try {
        exp = std::stoll(token.substr(caret + 1));
      } catch (const std::exception&) {
        throw UsageError("bad exponent in word token '" + token + "'");
      }
    }
    int idx = alphabet.letter_index(name);
    if (idx < 0) throw UsageError("unknown letter '" + name + "' in word");
    for (std::int64_t i = 0; i < std::abs(exp); ++i)
      out.push_back(Lit{static_cast<std::uint16_t>(idx),
                        static_cast<std::int8_t>(exp >= 0 ? 1 : -1)});
  }
  return out;
}

Slp Slp::from_word(const Word& w) {
  Slp slp;
  std::optional<std::uint32_t> root;
  for (auto lit : w) {
    std::uint32_t leaf = slp.add_letter(lit);
    root = root ? std::optional<std::uint32_t>(slp.add_mul(*root, leaf)) : leaf;
  }
  slp.root = root;
  return slp;
}

Slp Slp::z_power(const MarkedAlphabet& alphabet, std::int64_t k) {
  Slp slp;
  if (k == 0) return slp;
  std::uint16_t z = static_cast<std::uint16_t>(alphabet.n_translations - 1);
  std::uint32_t base =
      slp.add_letter(Lit{z, static_cast<std::int8_t>(k > 0 ? 1 : -1)});
  std::uint64_t n = static_cast<std::uint64_t>(std::abs(k));
  std::optional<std::uint32_t> acc;
  while (n > 0) {
    if (n & 1) acc = acc ? std::optional<std::uint32_t>(slp.add_mul(*acc, base)) : base;
    n >>= 1;
    if (n > 0) base = slp.add_mul(base, base);
  }
  slp.root = acc;
  return slp;
}

std::optional<std::uint32_t> Slp::absorb(const Slp& other) {
  std::uint32_t offset = static_cast<std::uint32_t>(nodes.size());
  for (auto node : other.nodes) {
    if (node.op != Op::Letter) {
      node.a += offset;
      if (node.op == Op::Mul) node.b += offset;
    }
    nodes.push_back(node);
  }
  if (!other.root) return std::nullopt;
  return *other.root + offset;
}

std::uint32_t Slp::add_letter(Lit lit) {
  nodes.push_back(Node{Op::Letter, 0, 0, lit});
  return static_cast<std::uint32_t>(nodes.size() - 1);
}

std::uint32_t Slp::add_mul(std::uint32_t a, std::uint32_t b) {
  nodes.push_back(Node{Op::Mul, a, b, {}});
  return static_cast<std::uint32_t>(nodes.size() - 1);
}

std::uint32_t Slp::add_inv(std::uint32_t a) {
  nodes.push_back(Node{Op::Inv, a, 0, {}});
  return static_cast<std::uint32_t>(nodes.size() - 1);
}

void Slp::append_product(const Slp& other) {
  auto other_root = absorb(other);
  if (!other_root) return;
  root = root ? std::optional<std::uint32_t>(add_mul(*root, *other_root)) : other_root;
}

std::uint64_t Slp::flat_length() const {
  if (!root) return 0;
  std::vector<std::uint64_t> len(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    switch (n.op) {
      case Op::Letter: len[i] = 1; break;
      case Op::Mul: len[i] = sat_add(len[n.a], len[n.b]); break;
      case Op::Inv: len[i] = len[n.a]; break;
    }
  }
  return len[*root];
}

Word Slp::expand(std::uint64_t max_len) const {
  if (flat_length() > max_len)
    throw BudgetExceeded("flat expansion exceeds the length limit");
  Word out;
  if (!root) return out;
  // iterative stack of (node, inverted)
  std::vector<std::pair<std::uint32_t, bool>> stack{{*root, false}};
  while (!stack.empty()) {
    auto [i, inv] = stack.back();
    stack.pop_back();
    const Node& n = nodes[i];
    switch (n.op) {
      case Op::Letter:
        out.push_back(Lit{n.lit.letter,
                          static_cast<std::int8_t>(inv ? -n.lit.sign : n.lit.sign)});
        break;
      case Op::Mul:
        if (!inv) {
          stack.emplace_back(n.b, false);
          stack.emplace_back(n.a, false);
        } else {
          stack.emplace_back(n.a, true);
          stack.emplace_back(n.b, true);
        }
        break;
      case Op::Inv:
        stack.emplace_back(n.a, !inv);
        break;
    }
  }
  return out;
}

AugElement evaluate_word(GroupContext& ctx, const MarkedAlphabet& alphabet,
                         const Word& w) {
  AugElement acc = aug_identity(ctx);
  for (auto lit : w) {
    const MarkedLetter& letter = alphabet.letters[lit.letter];
    acc = aug_multiply(ctx, acc, lit.sign > 0 ? letter.value : letter.inverse);
  }
  return acc;
}

AugElement evaluate_slp(GroupContext& ctx, const MarkedAlphabet& alphabet,
                        const Slp& slp) {
  if (!slp.root) return aug_identity(ctx);
  // children precede parents by construction
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
  std::vector<AugElement> value(slp.nodes.size());
  for (std::size_t i = 0; i < slp.nodes.size(); ++i) {
    if (!needed[i]) continue;
    const Slp::Node& n = slp.nodes[i];
    switch (n.op) {
      case Slp::Op::Letter: {
        const MarkedLetter& letter = alphabet.letters[n.lit.letter];
        value[i] = n.lit.sign > 0 ? letter.value : letter.inverse;
        break;
      }
      case Slp::Op::Mul:
        value[i] = aug_multiply(ctx, value[n.a], value[n.b]);
        break;
      case Slp::Op::Inv:
        value[i] = aug_inverse(ctx, value[n.a]);
        break;
    }
  }
  return value[*slp.root];
}

PointId apply_word(GroupContext& ctx, const MarkedAlphabet& alphabet, const Word& w,
                   PointId x) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const MarkedLetter& letter = alphabet.letters[it->letter];
    x = aug_apply(ctx, it->sign > 0 ? letter.value : letter.inverse, x);
  }
  return x;
}

PointId apply_slp(GroupContext& ctx, const MarkedAlphabet& alphabet, const Slp& slp,
                  PointId x) {
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
        const MarkedLetter& letter = alphabet.letters[n.lit.letter];
        int sign = inv ? -n.lit.sign : n.lit.sign;
        r = aug_apply(ctx, sign > 0 ? letter.value : letter.inverse, p);
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

// ---------------------------------------------------------------------------
// Ball BFS machinery.

namespace {

// Per-symbol view of an alphabet: value to multiply on the right.
struct SymbolTable {
  std::vector<const AugElement*> value;  // size 2L
  std::vector<char> skip;                // inverse symbol of a self-inverse letter

  explicit SymbolTable(const MarkedAlphabet& alphabet) {
    std::size_t L = alphabet.size();
    value.resize(2 * L);
    skip.assign(2 * L, 0);
    for (std::size_t i = 0; i < L; ++i) {
      value[i] = &alphabet.letters[i].value;
      value[L + i] = &alphabet.letters[i].inverse;
      if (alphabet.letters[i].self_inverse) skip[L + i] = 1;
    }
  }
};

// Storage for one side of a BFS: arena of permutation pairs plus the
// canonical-key lookup.
struct SideStore {
  std::vector<FinPerm::Pair> arena;
  struct Elem {
    std::uint64_t off;
    std::uint32_t len;
    PointId trans;
  };
  std::vector<Elem> verts;
  std::unordered_multimap<std::uint64_t, std::uint32_t> lookup;

  std::span<const FinPerm::Pair> perm(std::uint32_t i) const {
    return {arena.data() + verts[i].off, verts[i].len};
  }

  std::optional<std::uint32_t> find(std::span<const FinPerm::Pair> pairs,
                                    PointId trans) const {
    std::uint64_t h = hash_aug(pairs, trans);
    auto [lo, hi] = lookup.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      std::uint32_t j = it->second;
      if (verts[j].trans != trans || verts[j].len != pairs.size()) continue;
      if (std::equal(pairs.begin(), pairs.end(), arena.begin() + static_cast<std::ptrdiff_t>(verts[j].off)))
        return j;
    }
    return std::nullopt;
  }

  std::uint32_t insert(std::span<const FinPerm::Pair> pairs, PointId trans) {
    Elem e{arena.size(), static_cast<std::uint32_t>(pairs.size()), trans};
    arena.insert(arena.end(), pairs.begin(), pairs.end());
    verts.push_back(e);
    std::uint32_t idx = static_cast<std::uint32_t>(verts.size() - 1);
    lookup.emplace(hash_aug(pairs, trans), idx);
    return idx;
  }
};

// result(x) = big(c(x)) where c is the trans-conjugate of the letter
// permutation; emitted sorted by domain id with fixed points dropped.
void compose_step(GroupContext& ctx, std::span<const FinPerm::Pair> big, PointId trans,
                  const FinPerm& letter_perm, std::vector<FinPerm::Pair>& scratch,
                  std::vector<FinPerm::Pair>& out) {
  scratch.clear();
  for (auto& [x, y] : letter_perm.pairs())
    scratch.emplace_back(ctx.mul(trans, x), ctx.mul(trans, y));
  std::sort(scratch.begin(), scratch.end());

  out.clear();
  std::size_t i = 0, j = 0;
  auto push_from_c = [&](const FinPerm::Pair& c) {
    PointId img = apply_pairs(big, c.second);
    if (img != c.first) out.emplace_back(c.first, img);
  };
  while (i < big.size() && j < scratch.size()) {
    if (big[i].first < scratch[j].first) {
      out.push_back(big[i++]);
    } else if (big[i].first > scratch[j].first) {
      push_from_c(scratch[j++]);
    } else {
      push_from_c(scratch[j++]);
      ++i;
    }
  }
  for (; i < big.size(); ++i) out.push_back(big[i]);
  for (; j < scratch.size(); ++j) push_from_c(scratch[j]);
}

}  // namespace

std::span<const FinPerm::Pair> MarkedBall::vertex_perm(std::uint32_t i) const {
  return {arena_.data() + verts_[i].perm_off, verts_[i].perm_len};
}

AugElement MarkedBall::vertex_element(std::uint32_t i) const {
  auto pairs = vertex_perm(i);
  AugElement e;
  e.perm = FinPerm::from_pairs({pairs.begin(), pairs.end()});
  e.trans = verts_[i].trans;
  return e;
}

Word MarkedBall::geodesic(std::uint32_t i) const {
  Word w;
  std::size_t L = n_symbols / 2;
  for (std::int32_t cur = static_cast<std::int32_t>(i); verts_[static_cast<std::uint32_t>(cur)].parent >= 0;
       cur = verts_[static_cast<std::uint32_t>(cur)].parent) {
    std::int16_t sym = verts_[static_cast<std::uint32_t>(cur)].parent_sym;
    w.push_back(Lit{static_cast<std::uint16_t>(sym % L),
                    static_cast<std::int8_t>(sym < static_cast<std::int16_t>(L) ? 1 : -1)});
  }
  std::reverse(w.begin(), w.end());
  return w;
}

std::optional<std::uint32_t> MarkedBall::find(GroupContext&, const AugElement& e) const {
  std::uint64_t h = hash_aug(e.perm.pairs(), e.trans);
  auto [lo, hi] = lookup_.equal_range(h);
  for (auto it = lo; it != hi; ++it) {
    std::uint32_t j = it->second;
    if (verts_[j].trans != e.trans || verts_[j].perm_len != e.perm.pairs().size()) continue;
    auto pairs = vertex_perm(j);
    if (std::equal(pairs.begin(), pairs.end(), e.perm.pairs().begin())) return j;
  }
  return std::nullopt;
}

std::optional<std::uint32_t> MarkedBall::successor(std::uint32_t i, std::uint16_t letter,
                                                   int sign) const {
  if (edges_.empty()) throw InvariantViolation("ball was built without edges");
  std::size_t L = n_symbols / 2;
  std::size_t sym = sign > 0 ? letter : L + letter;
  std::uint32_t t = edges_[i * n_symbols + sym];
  if (t == kNoVertex) return std::nullopt;
  return t;
}

MarkedBall marked_ball(GroupContext& ctx, const MarkedAlphabet& alphabet,
                       std::int64_t radius, const Budgets& budgets, bool with_edges) {
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  SymbolTable symbols(alphabet);
  std::size_t nsym = symbols.value.size();

  MarkedBall ball;
  ball.radius_ = radius;
  ball.n_symbols = nsym;
  ball.alphabet_ = &alphabet;

  SideStore store;
  store.insert({}, ctx.identity());
  std::vector<std::int16_t> depth{0};
  std::vector<std::int32_t> parent{-1};
  std::vector<std::int16_t> parent_sym{-1};

  std::vector<FinPerm::Pair> scratch, out;
  for (std::uint32_t head = 0; head < store.verts.size(); ++head) {
    if (depth[head] >= radius) break;  // BFS order: depths are nondecreasing
    auto big = store.perm(head);
    PointId trans = store.verts[head].trans;
    for (std::size_t sym = 0; sym < nsym; ++sym) {
      if (symbols.skip[sym]) continue;
      const AugElement& letter = *symbols.value[sym];
      compose_step(ctx, big, trans, letter.perm, scratch, out);
      PointId new_trans = ctx.mul(trans, letter.trans);
      if (store.find(out, new_trans)) continue;
      if (store.verts.size() >= budgets.ball_cap)
        throw BudgetExceeded("marked-ball vertex budget exceeded at radius " +
                             std::to_string(radius));
      store.insert(out, new_trans);
      depth.push_back(static_cast<std::int16_t>(depth[head] + 1));
      parent.push_back(static_cast<std::int32_t>(head));
      parent_sym.push_back(static_cast<std::int16_t>(sym));
      // arena may have reallocated; refresh the slice
      big = store.perm(head);
    }
  }

  ball.arena_ = std::move(store.arena);
  ball.lookup_ = std::move(store.lookup);
  ball.verts_.reserve(store.verts.size());
  for (std::size_t i = 0; i < store.verts.size(); ++i) {
    MarkedBall::Vertex v;
    v.perm_off = store.verts[i].off;
    v.perm_len = store.verts[i].len;
    v.trans = store.verts[i].trans;
    v.parent = parent[i];
    v.parent_sym = parent_sym[i];
    v.depth = depth[i];
    ball.verts_.push_back(v);
  }

  if (with_edges) {
    ball.edges_.assign(ball.verts_.size() * nsym, kNoVertex);
    for (std::uint32_t i = 0; i < ball.verts_.size(); ++i) {
      for (std::size_t sym = 0; sym < nsym; ++sym) {
        const AugElement& letter = *symbols.value[sym % nsym];
        compose_step(ctx, ball.vertex_perm(i), ball.verts_[i].trans, letter.perm,
                     scratch, out);
        PointId new_trans = ctx.mul(ball.verts_[i].trans, letter.trans);
        std::uint64_t h = hash_aug(out, new_trans);
        auto [lo, hi] = ball.lookup_.equal_range(h);
        for (auto it = lo; it != hi; ++it) {
          std::uint32_t j = it->second;
          if (ball.verts_[j].trans != new_trans || ball.verts_[j].perm_len != out.size())
            continue;
          auto pairs = ball.vertex_perm(j);
          if (std::equal(pairs.begin(), pairs.end(), out.begin())) {
            ball.edges_[i * nsym + sym] = j;
            break;
          }
        }
      }
    }
  }
  return ball;
}

IsoOutcome marked_ball_iso(GroupContext& ctx, const MarkedAlphabet& a,
                           const MarkedAlphabet& b, std::int64_t radius,
                           const Budgets& budgets) {
  if (a.size() != b.size())
    throw std::invalid_argument("alphabets have different sizes");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.letters[i].name != b.letters[i].name)
      throw std::invalid_argument("alphabets disagree on letter names");

  SymbolTable sym_a(a), sym_b(b);
  std::size_t nsym = sym_a.value.size();
  std::size_t L = a.size();

  SideStore sa, sb;
  sa.insert({}, ctx.identity());
  sb.insert({}, ctx.identity());
  // shared BFS shape; vertex i on side A corresponds to vertex i on side B
  std::vector<std::int16_t> depth{0};
  std::vector<std::int32_t> parent{-1};
  std::vector<std::int16_t> parent_sym{-1};

  auto word_of = [&](std::uint32_t i) {
    Word w;
    for (std::int32_t cur = static_cast<std::int32_t>(i); parent[static_cast<std::uint32_t>(cur)] >= 0;
         cur = parent[static_cast<std::uint32_t>(cur)]) {
      std::int16_t sym = parent_sym[static_cast<std::uint32_t>(cur)];
      w.push_back(Lit{static_cast<std::uint16_t>(sym % L),
                      static_cast<std::int8_t>(sym < static_cast<std::int16_t>(L) ? 1 : -1)});
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  IsoOutcome outcome;
  std::vector<FinPerm::Pair> scratch, out_a, out_b;
  for (std::uint32_t head = 0; head < sa.verts.size(); ++head) {
    if (depth[head] >= radius) break;
    for (std::size_t sym = 0; sym < nsym; ++sym) {
      // an inverse symbol is redundant only when it is redundant on both sides
      if (sym_a.skip[sym] && sym_b.skip[sym]) continue;
      const AugElement& la = *sym_a.value[sym];
      const AugElement& lb = *sym_b.value[sym];
      compose_step(ctx, sa.perm(head), sa.verts[head].trans, la.perm, scratch, out_a);
      PointId ta = ctx.mul(sa.verts[head].trans, la.trans);
      compose_step(ctx, sb.perm(head), sb.verts[head].trans, lb.perm, scratch, out_b);
      PointId tb = ctx.mul(sb.verts[head].trans, lb.trans);

      auto fa = sa.find(out_a, ta);
      auto fb = sb.find(out_b, tb);
      if (fa && fb && *fa == *fb) continue;
      if (!fa && !fb) {
        if (sa.verts.size() >= budgets.ball_cap)
          throw BudgetExceeded("synchronized-BFS vertex budget exceeded at radius " +
                               std::to_string(radius));
        std::uint32_t ia = sa.insert(out_a, ta);
        std::uint32_t ib = sb.insert(out_b, tb);
        if (ia != ib) throw InvariantViolation("synchronized BFS lost alignment");
        depth.push_back(static_cast<std::int16_t>(depth[head] + 1));
        parent.push_back(static_cast<std::int32_t>(head));
        parent_sym.push_back(static_cast<std::int16_t>(sym));
        continue;
      }
      // the frontier word closes a relation on exactly one side, or closes
      // onto different vertices: a separating pair
      outcome.isomorphic = false;
      outcome.witness_u = word_of(head);
      outcome.witness_u.push_back(Lit{static_cast<std::uint16_t>(sym % L),
                                      static_cast<std::int8_t>(sym < L ? 1 : -1)});
      outcome.witness_v = word_of(fa ? *fa : *fb);
      outcome.vertices = sa.verts.size();
      return outcome;
    }
  }
  outcome.vertices = sa.verts.size();
  return outcome;
}

std::string ball_to_dot(const MarkedAlphabet& alphabet, const MarkedBall& ball) {
  if (!ball.has_edges())
    throw std::invalid_argument("DOT export needs a ball built with edges");
  std::ostringstream out;
  out << "digraph ball {\n";
  for (std::uint32_t i = 0; i < ball.size(); ++i) {
    Word w = ball.geodesic(i);
    out << "  v" << i << " [label=\"" << (w.empty() ? "id" : word_to_text(alphabet, w))
        << "\"];\n";
  }
  for (std::uint32_t i = 0; i < ball.size(); ++i) {
    for (std::uint16_t letter = 0; letter < alphabet.size(); ++letter) {
      auto t = ball.successor(i, letter, +1);
      if (!t) continue;
      out << "  v" << i << " -> v" << *t << " [label=\""
          << alphabet.letters[letter].name << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

Word random_reduced_word(std::mt19937_64& rng, std::size_t n_letters,
                         std::size_t length) {
  Word w;
  std::uniform_int_distribution<std::size_t> pick(0, 2 * n_letters - 1);
  while (w.size() < length) {
    std::size_t sym = pick(rng);
    Lit lit{static_cast<std::uint16_t>(sym % n_letters),
            static_cast<std::int8_t>(sym < n_letters ? 1 : -1)};
    if (!w.empty() && w.back().letter == lit.letter && w.back().sign == -lit.sign)
      continue;
    w.push_back(lit);
  }
  return w;
}

}  // namespace forge
