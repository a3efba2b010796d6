#pragma once

#include <cstdint>
#include <string>

namespace forge {

/// Resource caps for the expensive searches. Exceeding a cap raises
/// BudgetExceeded (an inconclusive outcome), never a silent truncation.
struct Budgets {
  std::int64_t nu_cap = 512;            // largest conjugation shift tried
  std::uint64_t ball_cap = 4'000'000;   // marked-ball vertex budget
  std::uint64_t closure_cap = 250'000;  // finite-closure element budget
  int escape_stages = 2;                // stages checked per escape report

  /// Named presets: "small", "default", "large".
  static Budgets profile(const std::string& name);

  /// Preset selected by FORGE_BUDGET_PROFILE, falling back to "default".
  static Budgets from_env();
};

}  // namespace forge
