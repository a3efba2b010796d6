#pragma once

#include <cstdint>
#include <vector>

#include "forge/limit_group.hpp"

namespace forge {

/// One stage check of a support-escape certificate: the limit word displaces
/// z^nu_m, and the displacement factors through the stage value at the
/// identity (limit image = z^nu_m * stage image of id).
struct EscapeCheck {
  int stage = 0;
  std::int64_t nu = 0;
  PointId displaced = kNoPoint;  // limit image of z^nu
  bool chain_ok = false;         // displaced == z^nu * (stage value at id)
  bool moved = false;            // displaced != z^nu
};

struct EscapeReport {
  enum class Verdict { Escaped, Inconclusive, Confined };

  Word word;
  Word conjugated;  // g^-1 w g with the moved point g, so id is moved
  PointId moved_point = kNoPoint;
  PointId moved_image = kNoPoint;
  std::vector<EscapeCheck> checks;
  Verdict verdict = Verdict::Inconclusive;
};

/// Builds a support-escape certificate for a nontrivial word: finds a moved
/// point, conjugates it to the identity, and confirms on the top feasible
/// stages that z^nu_m is displaced the way the stage action at the identity
/// predicts. An `Escaped` verdict shows the support reaches out to every
/// checked nu_m. A `Confined` verdict (no checked stage displaced) would
/// falsify the construction and is reported loudly by the scanner.
/// Rejects trivial words with std::invalid_argument.
EscapeReport escape_certificate(const LimitContext& lim, const Word& w,
                                int stages_to_check);

/// Recomputes every recorded displacement of a report from the certificate.
bool escape_report_reverify(const LimitContext& lim, const EscapeReport& report);

struct MifSummary {
  std::uint64_t seed = 0;
  int samples = 0;
  int trivial = 0;
  int escaped = 0;
  int inconclusive = 0;
  int falsifiers = 0;
  std::vector<EscapeReport> falsifier_reports;
  std::vector<EscapeReport> reports;  // all nontrivial ones, when requested
};

/// Seeded scan of random reduced words of flat length <= max_flat. Every
/// nontrivial sample gets an escape certificate; a confined nontrivial word
/// is a falsifier. Requires max_flat <= top k.
MifSummary mif_scan(const LimitContext& lim, int samples, int max_flat,
                    std::uint64_t seed, bool keep_reports = false);

struct PiClosureResult {
  bool conclusive = false;
  std::uint64_t order = 0;
  std::int64_t blocking_length = 0;  // set when inconclusive
  std::uint64_t stage_order = 0;     // finiteness witness at the top stage
  bool stage_match = false;
  int stage_used = -1;
};

/// Product closure of the limit values of the first x_count closure words,
/// using bounded-length equality: words are compared through the top stage
/// while every representative stays within half the certified radius. The
/// resulting order is cross-checked against the stage finiteness witness.
PiClosureResult pi_closure(const LimitContext& lim, int x_count, std::uint64_t budget);

}  // namespace forge
