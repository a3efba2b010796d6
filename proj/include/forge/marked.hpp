#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "forge/config.hpp"
#include "forge/perm.hpp"

namespace forge {

/// Element of the group generated by translations and finitely supported
/// permutations, in its unique (perm, trans) factorization. The element acts
/// on points as x -> perm(trans * x); trans is recovered from the action far
/// from Supp(perm), so the factorization is canonical and equality of the
/// two components is equality of elements.
struct AugElement {
  FinPerm perm;
  PointId trans = 0;

  bool is_identity(const GroupContext& ctx) const {
    return perm.is_identity() && trans == ctx.identity();
  }
  bool operator==(const AugElement& o) const {
    return trans == o.trans && perm == o.perm;
  }
};

/// x -> u(v(x)). The permutation part picks up the trans-conjugate of v.perm:
/// u(v(x)) = u.perm(u.trans * v.perm(v.trans * x)).
AugElement aug_multiply(GroupContext& ctx, const AugElement& u, const AugElement& v);
AugElement aug_inverse(GroupContext& ctx, const AugElement& u);
AugElement aug_identity(const GroupContext& ctx);
PointId aug_apply(GroupContext& ctx, const AugElement& u, PointId x);

/// One letter of a marked generating tuple. Translation letters carry a base
/// generator or z; sigma letters carry a finitely supported involution.
struct MarkedLetter {
  std::string name;
  bool is_sigma = false;
  AugElement value;
  AugElement inverse;
  bool self_inverse = false;
};

/// Ordered, named generating tuple: the translation letters (base generators
/// then z) followed by one sigma letter per translation letter, in the same
/// order. Two alphabets with equal names are comparable position by position.
struct MarkedAlphabet {
  std::vector<MarkedLetter> letters;
  std::size_t n_translations = 0;

  std::size_t size() const { return letters.size(); }
  int letter_index(const std::string& name) const;
};

/// A literal: letter index plus sign.
struct Lit {
  std::uint16_t letter = 0;
  std::int8_t sign = 1;

  bool operator==(const Lit& o) const { return letter == o.letter && sign == o.sign; }
};

/// Word over a marked alphabet; letters act right to left.
using Word = std::vector<Lit>;

Word free_reduce(const Word& w);
Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);
std::string word_to_text(const MarkedAlphabet& alphabet, const Word& w);
Word parse_word(const MarkedAlphabet& alphabet, const std::string& text);

/// Straight-line program: a DAG of letter, product, and inversion nodes.
/// Flat length is computed without expansion and saturates at 2^62.
struct Slp {
  enum class Op : std::uint8_t { Letter, Mul, Inv };
  struct Node {
    Op op = Op::Letter;
    std::uint32_t a = 0, b = 0;
    Lit lit;
  };

  std::vector<Node> nodes;
  std::optional<std::uint32_t> root;  // nullopt encodes the empty product

  static Slp from_word(const Word& w);
  static Slp z_power(const MarkedAlphabet& alphabet, std::int64_t k);

  /// Appends `other`'s nodes and returns the translated root (if any).
  std::optional<std::uint32_t> absorb(const Slp& other);
  std::uint32_t add_letter(Lit lit);
  std::uint32_t add_mul(std::uint32_t a, std::uint32_t b);
  std::uint32_t add_inv(std::uint32_t a);
  /// root := root * other (in action order: other applies first).
  void append_product(const Slp& other);

  std::uint64_t flat_length() const;
  /// Expands to a flat word; throws BudgetExceeded beyond max_len letters.
  Word expand(std::uint64_t max_len) const;
};

/// Evaluates a word as a full element under a stage alphabet.
AugElement evaluate_word(GroupContext& ctx, const MarkedAlphabet& alphabet, const Word& w);
AugElement evaluate_slp(GroupContext& ctx, const MarkedAlphabet& alphabet, const Slp& slp);

/// Action of a word/SLP on one point, without building the full element.
PointId apply_word(GroupContext& ctx, const MarkedAlphabet& alphabet, const Word& w,
                   PointId x);
PointId apply_slp(GroupContext& ctx, const MarkedAlphabet& alphabet, const Slp& slp,
                  PointId x);

/// Ball of the marked Cayley graph, deduplicated by the canonical
/// (sorted perm pairs, trans) key. Vertices are stored in one arena in BFS
/// discovery order; exploration tries positive letters in alphabet order and
/// then the inverses, and skips an inverse symbol whose letter is a
/// self-inverse element (the products are duplicates).
class MarkedBall {
 public:
  std::int64_t radius() const { return radius_; }
  std::size_t size() const { return verts_.size(); }

  std::span<const FinPerm::Pair> vertex_perm(std::uint32_t i) const;
  PointId vertex_trans(std::uint32_t i) const { return verts_[i].trans; }
  AugElement vertex_element(std::uint32_t i) const;
  std::int64_t vertex_depth(std::uint32_t i) const { return verts_[i].depth; }
  Word geodesic(std::uint32_t i) const;
  std::optional<std::uint32_t> find(GroupContext& ctx, const AugElement& e) const;

  /// Successor vertex under one symbol, if the product stays in the ball.
  /// Requires the ball to have been built with edges.
  std::optional<std::uint32_t> successor(std::uint32_t i, std::uint16_t letter,
                                         int sign) const;
  bool has_edges() const { return !edges_.empty(); }

 private:
  friend MarkedBall marked_ball(GroupContext&, const MarkedAlphabet&, std::int64_t,
                                const Budgets&, bool);

  struct Vertex {
    std::uint64_t perm_off = 0;
    std::uint32_t perm_len = 0;
    PointId trans = 0;
    std::int32_t parent = -1;
    std::int16_t parent_sym = -1;
    std::int16_t depth = 0;
  };

  std::int64_t radius_ = 0;
  std::size_t n_symbols = 0;
  std::vector<FinPerm::Pair> arena_;
  std::vector<Vertex> verts_;
  std::unordered_multimap<std::uint64_t, std::uint32_t> lookup_;
  std::vector<std::uint32_t> edges_;  // size() * n_symbols, kNoVertex if absent
  const MarkedAlphabet* alphabet_ = nullptr;
};

inline constexpr std::uint32_t kNoVertex = 0xffffffffu;

/// BFS enumeration of the radius-k ball. Throws BudgetExceeded when the
/// vertex budget is hit (the check is infeasible at this scale; the result is
/// never silently truncated).
MarkedBall marked_ball(GroupContext& ctx, const MarkedAlphabet& alphabet,
                       std::int64_t radius, const Budgets& budgets,
                       bool with_edges = false);

/// Synchronized-BFS comparison of two radius-k marked balls under the letter
/// correspondence. Verdict is true iff every word of length <= k meets the
/// same previously seen vertex (or is new) on both sides; on failure the
/// shortest separating word pair is returned.
struct IsoOutcome {
  bool isomorphic = true;
  Word witness_u, witness_v;  // u equals v on exactly one side
  std::uint64_t vertices = 0;
};

IsoOutcome marked_ball_iso(GroupContext& ctx, const MarkedAlphabet& a,
                           const MarkedAlphabet& b, std::int64_t radius,
                           const Budgets& budgets);

/// Uniformly random freely reduced word of the given length.
Word random_reduced_word(std::mt19937_64& rng, std::size_t n_letters, std::size_t length);

/// DOT rendering of a ball built with edges; nodes are labeled by their
/// canonical geodesics and edges by letter names (positive letters only).
std::string ball_to_dot(const MarkedAlphabet& alphabet, const MarkedBall& ball);

}  // namespace forge
