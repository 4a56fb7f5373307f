#pragma once

#include <string>

#include "scdebt/debt.hpp"

namespace scdebt {

/// Canonical JSON: keys sorted, decimals rendered as fixed-precision strings
/// (scores 1 dp, fiat 2 dp, ETH 8 dp). Byte-stable for identical assessments.
std::string render_json(const DebtAssessment& a);

/// Human-readable report: portfolio summary sorted by severity then interest,
/// then one section per contract with findings, principal breakdown and the
/// interest derivation.
std::string render_markdown(const DebtAssessment& a);

/// Plot-ready data: header `contract,cost_usd,interest,severity`, one row per
/// assessed contract.
std::string render_scatter_csv(const DebtAssessment& a);

}  // namespace scdebt
