#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "forge/limit_group.hpp"

namespace forge {

/// Limit involution with its low transposition indices cancelled: the index
/// set keeps 0, avoids [1, level], and the program realizes it inside the
/// limit group.
struct TrimmedInvolution {
  std::size_t s_pos = 0;
  std::int64_t level = 0;
  std::vector<std::int64_t> indices;  // known part, within the horizon
  Slp slp;
};

/// Core trimming rule on a plain index set: while the minimal positive index
/// p is at most `level`, replace J by J xor (J + p). The minimal positive
/// index strictly increases each step (everything shifted is >= p and p
/// itself cancels), so this terminates. If `steps` is given it receives the
/// number of rewrite steps.
std::vector<std::int64_t> trim_indices(std::vector<std::int64_t> indices,
                                       std::int64_t level, int* steps = nullptr);

/// Trims the limit involution of generator position s_pos so that it fixes
/// z^j and z^j s for 1 <= j <= level. Throws CertificateExhausted when the
/// level exceeds the certificate's stable horizon.
TrimmedInvolution trim(const LimitContext& lim, std::size_t s_pos, std::int64_t level);

/// Element whose restriction to the radius-n ambient ball is exactly the
/// transposition (f, f s), fixing the rest of the ball: the conjugate of a
/// trimmed involution by a geodesic of f. Construction is verified
/// exhaustively on the ball; a mismatch is a hard error.
struct TranspositionRealizer {
  std::size_t s_pos = 0;
  PointId f = 0;
  std::int64_t n = 0;
  Slp slp;
};

TranspositionRealizer realize_transposition(const LimitContext& lim, std::size_t s_pos,
                                            PointId f, std::int64_t n);

/// Explicit limit-group element mapping one tuple of distinct points onto
/// another, as a single program: the partial map is extended to a
/// permutation of the ambient ball of radius max norm, decomposed into edge
/// transpositions by token routing on the BFS spanning tree, and each edge
/// transposition is realized near-identically on the ball. The result is
/// verified on every tuple entry.
Slp witness(const LimitContext& lim, std::span<const PointId> from,
            std::span<const PointId> to);

}  // namespace forge
