#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forge/construction.hpp"

namespace forge {

struct WordProblemResult {
  enum class Verdict { Trivial, Nontrivial, Undecided };
  Verdict verdict = Verdict::Undecided;
  PointId moved_point = kNoPoint;  // verified against the limit action
  PointId moved_image = kNoPoint;
  int stage_used = -1;
  std::int64_t needed_k = 0;  // set when undecided: flat length of the word
};

/// Read-only view of a certificate for limit queries: lazy evaluation of the
/// limit involutions, the bounded word problem, and the quotient onto the
/// ambient group.
///
/// Index membership is stable below the horizon nu_top + 1: every increment
/// that a deeper stage would add only touches indices (hence points with
/// z-exponent) at least nu_top + 2. Limit evaluation therefore reads the top
/// stage's index sets and refuses, with a stage-count hint, as soon as a
/// sigma letter is applied beyond the horizon.
class LimitContext {
 public:
  LimitContext(GroupContext& ctx, const Certificate& cert);

  GroupContext& group() const { return ctx_; }
  const Certificate& certificate() const { return cert_; }
  int top_stage() const { return cert_.top_stage(); }
  std::int64_t nu(int m) const { return cert_.stages.at(static_cast<std::size_t>(m)).nu; }
  std::int64_t k(int m) const { return cert_.stages.at(static_cast<std::size_t>(m)).k; }
  std::int64_t horizon() const;
  std::size_t n_translations() const { return ctx_.s_generators().size(); }

  const MarkedAlphabet& stage_alphabet(int n) const;
  /// Alphabet used for parsing words against this certificate (top stage).
  const MarkedAlphabet& names() const { return stage_alphabet(top_stage()); }

  /// Membership of index m in the limit index set of the sigma letter for
  /// generator position s_pos. Throws CertificateExhausted beyond the horizon.
  bool limit_index_member(std::size_t s_pos, std::int64_t m) const;

  /// Action of one limit sigma letter on a point.
  PointId limit_sigma_apply(std::size_t s_pos, PointId x) const;

  /// Action of a limit word/program on a point.
  PointId limit_apply(const Word& w, PointId x) const;
  PointId limit_apply(const Slp& slp, PointId x) const;

  /// Stage-n value of a word (the letterwise substitution of the stage
  /// sigmas; words share letter positions across all interpretations).
  AugElement stage_value(const Word& w, int n) const;

  /// Smallest stage whose evaluation trajectory at x is already stable:
  /// every point a sigma letter is applied to has z-exponent below the next
  /// increment shift. Throws CertificateExhausted when no built stage
  /// qualifies.
  int stabilization_stage(const Word& w, PointId x) const;

  /// Bounded word problem: decided at the smallest stage with k_n at least
  /// the flat length. Nontrivial verdicts carry a verified moved point.
  WordProblemResult word_problem(const Word& w) const;

  /// Deletes sigma letters and multiplies the translation letters.
  PointId quotient_to_g(const Word& w) const;
  PointId quotient_to_g(const Slp& slp) const;

  /// Scans balls of growing radius for a point the word moves; radius bound
  /// is the flat length (every letter displaces by one step), extended by
  /// the stage-derived support when the scan alone finds nothing.
  std::optional<PointId> find_moved_point(const Word& w) const;

 private:
  PointId limit_letter_apply(Lit lit, PointId x) const;

  GroupContext& ctx_;
  Certificate cert_;
  mutable std::vector<std::optional<MarkedAlphabet>> alphabets_;
  std::vector<std::vector<std::int64_t>> limit_indices_;  // per s, within horizon
};

}  // namespace forge
