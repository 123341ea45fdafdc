#pragma once

#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "hexpst/hamiltonian.hpp"
#include "hexpst/routing.hpp"

namespace hexpst {

inline constexpr std::string_view kTransferReportSchema = "hexpst.transfer_report/1";
inline constexpr std::string_view kSweepReportSchema = "hexpst.sweep_report/1";
inline constexpr std::string_view kChainInventorySchema = "hexpst.chain_inventory/1";

/// Stable field layout; the schema tag is added by the enclosing document.
nlohmann::json to_json(const TransferReport& report);
nlohmann::json to_json(const ChainInventory& inventory);

}  // namespace hexpst
