#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace forge {

enum class BaseKind { Cyclic, Symmetric, FreeAbelian, Product };

/// Description of a finitely generated base group: cyclic:N, sym:N, zfree:D,
/// or prod(<spec>,<spec>). Plain value; Product keeps its two factors inline.
struct BaseGroupSpec {
  BaseKind kind = BaseKind::Cyclic;
  std::int64_t param = 1;               // N for cyclic/sym, D for zfree
  std::vector<BaseGroupSpec> factors;   // exactly two for Product

  bool operator==(const BaseGroupSpec& o) const;
};

/// Elements are flattened normal forms, one canonical integer vector per
/// group element:
///   cyclic:N       -> [r], 0 <= r < N
///   sym:N          -> the image vector of {0..N-1}
///   zfree:D        -> D unconstrained integers
///   prod(A,B)      -> concat(A form, B form)
/// Equality of vectors is equality in the group.
using BaseElement = std::vector<std::int64_t>;

/// Parses the textual grammar: `cyclic:N`, `sym:N`, `zfree:D`,
/// `prod(<spec>,<spec>)`. Throws UsageError on malformed input.
BaseGroupSpec parse_base_spec(const std::string& text);
std::string to_string(const BaseGroupSpec& spec);

/// Length of the flattened normal form.
std::size_t base_flat_size(const BaseGroupSpec& spec);

/// Group order if finite.
std::optional<std::uint64_t> base_order(const BaseGroupSpec& spec);

bool base_is_valid(const BaseGroupSpec& spec, const BaseElement& a);

BaseElement base_identity(const BaseGroupSpec& spec);
BaseElement base_multiply(const BaseGroupSpec& spec, const BaseElement& a,
                          const BaseElement& b);
BaseElement base_inverse(const BaseGroupSpec& spec, const BaseElement& a);

/// The canonical generating set with stable positional names "a","b","c",...
/// ("z" is never used; it is reserved for the central letter of the ambient
/// group). The identity is excluded and duplicates are removed.
std::vector<std::pair<std::string, BaseElement>> base_generators(
    const BaseGroupSpec& spec);

/// Geodesic word length of `a` over generators and their inverses.
std::int64_t base_norm(const BaseGroupSpec& spec, const BaseElement& a);

/// One geodesic word for `a`, as (generator index, exponent sign) pairs.
/// Deterministic; used for printing point literals.
std::vector<std::pair<int, int>> base_geodesic(const BaseGroupSpec& spec,
                                               const BaseElement& a);

/// Positional generator names: 0 -> "a", 1 -> "b", ..., skipping "z".
std::string positional_name(std::size_t index);

}  // namespace forge
