#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "forge/config.hpp"
#include "forge/marked.hpp"

namespace forge {

/// One stage of the tower: the conjugation shift nu, the certified ball
/// radius k, and the involution index sets, one per S-generator.
struct StageData {
  int n = 0;
  std::int64_t nu = 0;
  std::int64_t k = 0;
  std::vector<IndexedInvolution> sigma;  // in S-generator order
  std::int64_t support_radius = 0;       // max norm over all sigma supports
};

/// A re-runnable condition check. `params` holds everything needed to replay
/// it against the stage data; `ok` is the recorded outcome.
struct CheckRecord {
  std::string kind;
  nlohmann::json params;
  bool ok = true;
};

/// The whole construction transcript: base spec, stage tower, and the checks
/// that were verified while building. Replayable by verify_certificate.
struct Certificate {
  int version = 1;
  std::string base;
  std::vector<StageData> stages;
  std::vector<CheckRecord> checks;
  bool complete = true;
  std::string note;  // reason when incomplete

  int top_stage() const { return static_cast<int>(stages.size()) - 1; }
};

nlohmann::json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);
void save_certificate(const Certificate& cert, const std::string& path);
Certificate load_certificate(const std::string& path);

/// Stage interpretation of the marked alphabet: translation letters for the
/// S-generators, then one sigma letter per S-generator.
MarkedAlphabet make_stage_alphabet(GroupContext& ctx,
                                   const std::vector<IndexedInvolution>& sigma);

/// Letter names without any stage attached (for parsing words against a
/// certificate). Values are the stage-0 ones; only names and order matter.
std::vector<std::string> alphabet_names(const GroupContext& ctx);

/// First `count` elements of the sigma-letter normal closure inside the free
/// group on the letters, in shortlex order (positive letters in alphabet
/// order, then the inverses). A reduced word belongs to the closure iff
/// deleting its sigma letters freely reduces to the empty word. Prefixes are
/// nested; the identity is excluded.
std::vector<Word> enumerate_pi(std::size_t n_translations, int count);

bool word_in_pi(std::size_t n_translations, const Word& w);

/// Minimal even shift nu > stages.back().nu such that, with every sigma
/// replaced by its shift-xor image: (i) the shifted supports are disjoint
/// from the originals (so the new sigmas are involutions), (ii) the candidate
/// alphabet is marked-ball isomorphic to every stage l at radius k_l, and
/// (iii) every vertex f of the candidate radius-k_n ball satisfies
/// f(z^nu) = z^nu * f(id). Candidates are tested in increasing order, step 2;
/// throws BudgetExceeded past budgets.nu_cap.
std::int64_t search_nu(GroupContext& ctx, const std::vector<StageData>& stages,
                       const Budgets& budgets,
                       std::vector<CheckRecord>* sink = nullptr);

/// Order of the group generated by the stage values of the given closure
/// words, computed by product closure over the invariant support union, plus
/// the maximum flat letter length of the words. Every value must have a
/// trivial translation part.
struct FinitenessWitness {
  std::uint64_t order = 1;
  std::uint64_t max_flat = 0;
};

FinitenessWitness finiteness_witness(GroupContext& ctx, const MarkedAlphabet& alphabet,
                                     const std::vector<Word>& closure_words,
                                     const Budgets& budgets);

/// k_next = max(k_prev + 1, (order + 1) * max_flat). Every product of at
/// most order+1 of the closure generators stays inside that radius, and by
/// pigeonhole the relations collapsing them to at most `order` distinct
/// elements are all visible there.
std::int64_t choose_k(std::int64_t k_prev, std::uint64_t order, std::uint64_t max_flat);

/// Runs the induction from stage 0 up to the requested stage, verifying and
/// recording every condition. A budget error stops early and returns the
/// partial certificate with complete = false.
Certificate build_stages(GroupContext& ctx, int upto, const Budgets& budgets);

struct VerifyReport {
  bool ok = true;
  std::uint64_t checks_replayed = 0;
  std::vector<std::string> failures;
};

/// Structural re-derivation (sigma chains, support radii, k values, stage-0
/// shape, monotonicity) plus a replay of every recorded check.
VerifyReport verify_certificate(GroupContext& ctx, const Certificate& cert,
                                const Budgets& budgets);

}  // namespace forge
