#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace forge {

/// Malformed input: bad group spec string, unknown letter, ill-formed literal.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A configured resource cap was hit. The computation is inconclusive, not
/// wrong; retry with a larger budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A query needs more built stages than the certificate holds.
struct CertificateExhausted : std::runtime_error {
  CertificateExhausted(const std::string& what, std::int64_t needed_stages_hint)
      : std::runtime_error(what), needed_stages_hint(needed_stages_hint) {}

  std::int64_t needed_stages_hint = 0;
};

/// An internal consistency check failed. Always a bug or a falsified run,
/// never a budget problem.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace forge
