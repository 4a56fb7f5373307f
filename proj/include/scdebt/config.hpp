#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scdebt/decimal.hpp"
#include "scdebt/evmgas.hpp"

namespace scdebt {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Interest (value) band boundaries; inclusive upper edges.
struct ValueThresholds {
    Decimal low_max = Decimal::from_int(100);
    Decimal medium_max = Decimal::from_int(200);
};

/// Cost band boundaries in USD; inclusive upper edges.
struct CostThresholds {
    Decimal low_max;
    Decimal medium_max;
};

/// One activity-rank band mapped to a CAL score on the six-point scale.
struct CalBand {
    int min_rank = 1;
    int max_rank = 1;
    Decimal score = Decimal::from_int(1);
};

enum class CostMode { PortfolioRelative, Absolute };

struct AssessConfig {
    ValueThresholds value_thresholds;
    CostMode cost_mode = CostMode::PortfolioRelative;
    CostThresholds absolute_cost_thresholds;  // used when cost_mode == Absolute
    std::vector<CalBand> cal_bands;
    std::vector<std::string> activity_ranking;  // rank = index + 1
    bool include_calldata = false;
    GasSchedule gas_schedule = GasSchedule::defaults();
    int jobs = 0;  // 0 = number of hardware threads
    std::string price_url;  // lowest-precedence price source (flags > env > config)

    static AssessConfig defaults();
    /// Partial override on top of defaults.
    static AssessConfig load(const nlohmann::json& doc);
    static AssessConfig load_file(const std::filesystem::path& path);
};

/// One contract entry from a portfolio document. Bytecode files are loaded
/// lazily during assessment so a corrupt file poisons only its own contract.
struct PortfolioEntry {
    std::string name;
    int loc = 0;
    std::string activity_category;
    std::optional<int> activity_rank;  // explicit rank wins over category lookup
    int lifespan_days = 1;
    std::optional<std::filesystem::path> init_code_path;
    std::optional<std::filesystem::path> runtime_code_path;
    std::optional<std::uint64_t> runtime_len;
    std::optional<std::uint64_t> deploy_gas_override;  // skips bytecode pricing entirely
    std::optional<ExecutionStrategy> execution;
    UpdatePattern update = UpdatePattern::Selfdestruct;
    std::optional<std::uint64_t> proxy_gas;
    std::map<std::string, std::string> vectors;  // vulnerability slug -> vector string
};

/// Loads a portfolio document (JSON array of contract entries). Relative
/// bytecode paths resolve against base_dir.
std::vector<PortfolioEntry> load_portfolio(const nlohmann::json& doc,
                                           const std::filesystem::path& base_dir);
std::vector<PortfolioEntry> load_portfolio_file(const std::filesystem::path& path);

}  // namespace scdebt
