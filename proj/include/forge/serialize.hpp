#pragma once

#include "json.hpp"

#include "forge/mif.hpp"

namespace forge {

/// Sorted [point, image] literal pairs, in canonical point-value order.
nlohmann::json finperm_to_json(const GroupContext& ctx, const FinPerm& perm);

nlohmann::json aug_to_json(const GroupContext& ctx, const AugElement& e);

nlohmann::json indexed_involution_to_json(const IndexedInvolution& v);

nlohmann::json slp_to_json(const MarkedAlphabet& alphabet, const Slp& slp);
Slp slp_from_json(const MarkedAlphabet& alphabet, const nlohmann::json& j);

nlohmann::json escape_report_to_json(const LimitContext& lim, const EscapeReport& report);

nlohmann::json mif_summary_to_json(const LimitContext& lim, const MifSummary& summary);

}  // namespace forge
