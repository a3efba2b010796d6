#include "forge/config.hpp"

#include <cstdlib>

#include "forge/errors.hpp"

namespace forge {

Budgets Budgets::profile(const std::string& name) {
  Budgets b;
  if (name == "default") return b;
  if (name == "small") {
    b.nu_cap = 64;
    b.ball_cap = 200'000;
    b.closure_cap = 20'000;
    b.escape_stages = 1;
    return b;
  }
  if (name == "large") {
    b.nu_cap = 4096;
    b.ball_cap = 20'000'000;
    b.closure_cap = 2'000'000;
    b.escape_stages = 3;
    return b;
  }
  throw UsageError("unknown budget profile '" + name + "'");
}

Budgets Budgets::from_env() {
  const char* profile = std::getenv("FORGE_BUDGET_PROFILE");
  return profile ? Budgets::profile(profile) : Budgets{};
}

}  // namespace forge
