#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scdebt/config.hpp"
#include "scdebt/cwss.hpp"
#include "scdebt/decimal.hpp"
#include "scdebt/evmgas.hpp"
#include "scdebt/ingest.hpp"
#include "scdebt/profile.hpp"

namespace scdebt {

class DebtError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Band { Low, Medium, High };
enum class Severity { Low, Medium, High, Critical };

std::string_view band_name(Band b);
std::string_view severity_name(Severity s);

/// Lifespan band score: 1-266 days -> 0.17, 267-533 -> 0.35, 534+ -> 0.5.
Decimal cls_score(int lifespan_days);

/// Maps an activity rank onto the six-point CAL scale via the configured
/// band table (top-3 ranks default to 6, bottom-3 to 1). A rank covered by
/// no band is an error.
Decimal cal_score(int rank, const std::vector<CalBand>& bands);

/// Accumulated interest: cwss_total x cal x cls, range [0,300].
Decimal interest(const Decimal& cwss_total, const Decimal& cal, const Decimal& cls);

/// <= low_max -> Low, <= medium_max -> Medium, above -> High.
Band band_value(const Decimal& interest_value, const ValueThresholds& thresholds);
Band band_cost(const Decimal& cost_usd, const CostThresholds& thresholds);

/// Portfolio-relative cost thresholds: tertiles of the maximum cost,
/// quantized to one decimal place so the boundaries stay presentable.
CostThresholds tertile_thresholds(const Decimal& portfolio_max_cost);

/// The overall severity matrix over (cost band, value band).
Severity severity(Band cost_band, Band value_band);

/// One priced and scored finding.
struct DebtItem {
    NormalizedFinding finding;
    cwss::CwssScore cwss;
    Decimal cal;
    Decimal cls;
    Decimal interest;  // [0,300]
    PrincipalEstimate principal;  // shared across items of the same contract
    Band value_band = Band::Low;
    Band cost_band = Band::Low;
    Severity severity = Severity::Low;
};

/// Per-contract plot coordinate (cost in USD, worst interest).
struct ScatterPoint {
    std::string contract;
    Decimal cost_usd;
    Decimal interest;
    Severity severity = Severity::Low;
};

struct ContractError {
    std::string contract;
    std::string message;
};

struct DebtAssessment {
    std::string portfolio_name;
    std::vector<DebtItem> items;  // ordered by (contract, vulnerability)
    ValueThresholds value_thresholds;
    CostThresholds cost_thresholds;
    CostMode cost_mode = CostMode::PortfolioRelative;
    std::uint64_t total_gas = 0;  // each contract counted once
    Decimal total_fee_eth;
    Decimal total_fee_usd;
    Decimal max_interest;
    std::vector<ScatterPoint> scatter;  // one per assessed contract, by name
    std::vector<Finding> unmapped;
    std::vector<ContractError> errors;
    std::vector<std::string> warnings;
    PriceQuote quote;
};

struct AssessInputs {
    std::string portfolio_name = "portfolio";
    std::vector<PortfolioEntry> portfolio;
    std::vector<Finding> findings;
    std::optional<nlohmann::json> manual_doc;
    PriceQuote quote;
    std::vector<std::string> warnings;  // carried into the assessment (e.g. quote fallback)
};

/// Runs the full pipeline: normalize + manual merge, per-contract principal
/// and scoring (parallel across contracts), portfolio-wide banding, roll-up.
/// A failing contract becomes an error entry; it never aborts the portfolio.
DebtAssessment assess(const AssessInputs& inputs, const Catalog& catalog,
                      const cwss::WeightTable& weights, const AssessConfig& config);

}  // namespace scdebt
