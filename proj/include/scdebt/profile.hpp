#pragma once

#include <optional>
#include <string>

#include "scdebt/decimal.hpp"
#include "scdebt/evmgas.hpp"

namespace scdebt {

/// Per-contract context feeding the interest estimate: how active the
/// contract is expected to be (six-point scale from a DApp category ranking)
/// and how long it is expected to live (banded into a lifespan score).
struct ContractProfile {
    std::string name;
    int loc = 0;  // informational only
    std::string activity_category;
    int activity_rank = 0;  // 1..N in the configured category ranking
    Decimal cal_score;      // [1,6]
    int lifespan_days = 1;
    Decimal cls_score;      // 0.17 / 0.35 / 0.5
    std::optional<ContractBytecode> bytecode;
};

}  // namespace scdebt
