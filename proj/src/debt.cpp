#include "scdebt/debt.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

namespace scdebt {

namespace {

struct ContractResult {
    bool assessed = false;
    std::string error;
    PrincipalEstimate principal;
    // Items without cost band/severity; those need the portfolio max cost.
    std::vector<DebtItem> items;
    std::vector<std::string> warnings;
};

int severity_rank(Severity s) {
    switch (s) {
        case Severity::Low: return 0;
        case Severity::Medium: return 1;
        case Severity::High: return 2;
        case Severity::Critical: return 3;
    }
    return 0;
}

ContractProfile build_profile(const PortfolioEntry& entry, const AssessConfig& config) {
    ContractProfile profile;
    profile.name = entry.name;
    profile.loc = entry.loc;
    profile.activity_category = entry.activity_category;
    if (entry.activity_rank) {
        profile.activity_rank = *entry.activity_rank;
    } else {
        auto it = std::find(config.activity_ranking.begin(), config.activity_ranking.end(),
                            entry.activity_category);
        if (it == config.activity_ranking.end()) {
            throw DebtError("activity category '" + entry.activity_category +
                            "' is not in the configured ranking");
        }
        profile.activity_rank =
            static_cast<int>(std::distance(config.activity_ranking.begin(), it)) + 1;
    }
    profile.cal_score = cal_score(profile.activity_rank, config.cal_bands);
    profile.lifespan_days = entry.lifespan_days;
    profile.cls_score = cls_score(entry.lifespan_days);
    return profile;
}

PrincipalEstimate estimate_principal(const PortfolioEntry& entry, const AssessConfig& config,
                                     const PriceQuote& quote,
                                     std::vector<std::string>* warnings) {
    if (entry.deploy_gas_override) {
        PrincipalEstimate est;
        est.deploy_gas = *entry.deploy_gas_override;
        est.update_gas = update_gas(entry.update, config.gas_schedule, entry.proxy_gas);
        est.total_gas = est.deploy_gas + est.update_gas;
        est.fee_eth = gas_to_eth(est.total_gas, quote.gas_price_gwei);
        est.fee_usd = est.fee_eth * quote.eth_usd;
        est.quote_used = quote;
        return est;
    }
    ContractBytecode code;
    if (entry.init_code_path) {
        code.init_code = evm::parse_hex_file(*entry.init_code_path);
    }
    if (entry.runtime_code_path) {
        code.runtime_code = evm::parse_hex_file(*entry.runtime_code_path);
    }
    code.runtime_len_override = entry.runtime_len;

    EstimationOptions opts;
    opts.include_calldata = config.include_calldata;
    opts.update = entry.update;
    opts.proxy_gas = entry.proxy_gas;
    if (entry.execution) {
        opts.execution = *entry.execution;
    } else {
        opts.execution = entry.init_code_path ? ExecutionStrategy::static_sum()
                                              : ExecutionStrategy::zero();
    }
    PrincipalEstimate est = principal(code, config.gas_schedule, opts, quote);
    if (warnings) {
        for (const auto& w : est.breakdown.warnings) {
            warnings->push_back(entry.name + ": " + w);
        }
    }
    return est;
}

ContractResult assess_contract(const PortfolioEntry& entry,
                               const std::vector<NormalizedFinding>& findings,
                               const cwss::WeightTable& weights, const AssessConfig& config,
                               const PriceQuote& quote) {
    ContractResult result;
    try {
        ContractProfile profile = build_profile(entry, config);
        result.principal = estimate_principal(entry, config, quote, &result.warnings);

        for (const auto& nf : findings) {
            DebtItem item;
            item.finding = nf;
            auto vec_it = entry.vectors.find(nf.vulnerability_id);
            if (vec_it != entry.vectors.end()) {
                item.cwss = cwss::score(cwss::parse_vector(vec_it->second, weights), weights);
                item.cwss.suggested = false;
            } else {
                item.cwss = cwss::score(cwss::suggest_vector(nf, profile), weights);
                item.cwss.suggested = true;
            }
            item.cal = profile.cal_score;
            item.cls = profile.cls_score;
            item.interest = interest(item.cwss.total, item.cal, item.cls);
            item.principal = result.principal;
            item.value_band = band_value(item.interest, config.value_thresholds);
            result.items.push_back(std::move(item));
        }
        std::sort(result.items.begin(), result.items.end(), [](const auto& a, const auto& b) {
            return a.finding.vulnerability_id < b.finding.vulnerability_id;
        });
        result.assessed = true;
    } catch (const std::exception& e) {
        result.assessed = false;
        result.error = e.what();
    }
    return result;
}

}  // namespace

std::string_view band_name(Band b) {
    switch (b) {
        case Band::Low: return "Low";
        case Band::Medium: return "Medium";
        case Band::High: return "High";
    }
    return "Low";
}

std::string_view severity_name(Severity s) {
    switch (s) {
        case Severity::Low: return "Low";
        case Severity::Medium: return "Medium";
        case Severity::High: return "High";
        case Severity::Critical: return "Critical";
    }
    return "Low";
}

Decimal cls_score(int lifespan_days) {
    if (lifespan_days < 1) {
        throw DebtError("lifespan must be at least one day");
    }
    if (lifespan_days <= 266) return Decimal::parse("0.17");
    if (lifespan_days <= 533) return Decimal::parse("0.35");
    return Decimal::parse("0.5");
}

Decimal cal_score(int rank, const std::vector<CalBand>& bands) {
    for (const auto& band : bands) {
        if (rank >= band.min_rank && rank <= band.max_rank) {
            return band.score;
        }
    }
    throw DebtError("activity rank " + std::to_string(rank) +
                    " is covered by no configured CAL band");
}

Decimal interest(const Decimal& cwss_total, const Decimal& cal, const Decimal& cls) {
    if (cwss_total.is_negative() || cwss_total > Decimal::from_int(100)) {
        throw DebtError("CWSS total must lie within [0,100]");
    }
    if (cal < Decimal::from_int(1) || cal > Decimal::from_int(6)) {
        throw DebtError("CAL score must lie within [1,6]");
    }
    if (cls.is_negative() || cls > Decimal::parse("0.5")) {
        throw DebtError("CLS score must lie within [0,0.5]");
    }
    return cwss_total * cal * cls;
}

Band band_value(const Decimal& interest_value, const ValueThresholds& thresholds) {
    if (interest_value <= thresholds.low_max) return Band::Low;
    if (interest_value <= thresholds.medium_max) return Band::Medium;
    return Band::High;
}

Band band_cost(const Decimal& cost_usd, const CostThresholds& thresholds) {
    if (cost_usd <= thresholds.low_max) return Band::Low;
    if (cost_usd <= thresholds.medium_max) return Band::Medium;
    return Band::High;
}

CostThresholds tertile_thresholds(const Decimal& portfolio_max_cost) {
    CostThresholds t;
    t.low_max = portfolio_max_cost.div_round(3, 1);
    t.medium_max = (portfolio_max_cost * Decimal::from_int(2)).div_round(3, 1);
    return t;
}

Severity severity(Band cost_band, Band value_band) {
    if (cost_band == Band::High) {
        if (value_band == Band::High) return Severity::Critical;
        if (value_band == Band::Medium) return Severity::High;
        return Severity::Medium;
    }
    if (cost_band == Band::Medium) {
        if (value_band == Band::High) return Severity::High;
        if (value_band == Band::Medium) return Severity::Medium;
        return Severity::Low;
    }
    if (value_band == Band::High) return Severity::Medium;
    return Severity::Low;
}

DebtAssessment assess(const AssessInputs& inputs, const Catalog& catalog,
                      const cwss::WeightTable& weights, const AssessConfig& config) {
    DebtAssessment a;
    a.portfolio_name = inputs.portfolio_name;
    a.quote = inputs.quote;
    a.warnings = inputs.warnings;
    a.value_thresholds = config.value_thresholds;
    a.cost_mode = config.cost_mode;

    NormalizeResult normalized = normalize(inputs.findings, catalog);
    std::vector<NormalizedFinding> all_findings = normalized.findings;
    if (inputs.manual_doc) {
        all_findings = merge_manual(all_findings, *inputs.manual_doc, catalog);
    }
    a.unmapped = std::move(normalized.unmapped);

    std::map<std::string, std::vector<NormalizedFinding>> by_contract;
    for (auto& nf : all_findings) {
        by_contract[nf.contract_name].push_back(std::move(nf));
    }
    for (const auto& [contract, findings] : by_contract) {
        bool known = std::any_of(inputs.portfolio.begin(), inputs.portfolio.end(),
                                 [&](const auto& pe) { return pe.name == contract; });
        if (!known) {
            a.warnings.push_back("findings for contract '" + contract +
                                 "' ignored: not in the portfolio");
        }
    }

    // Per-contract work is pure; fan it out across a bounded worker pool and
    // reassemble in portfolio order afterwards.
    std::vector<ContractResult> results(inputs.portfolio.size());
    unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                    : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, std::max<std::size_t>(inputs.portfolio.size(), 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < inputs.portfolio.size();
             i = next.fetch_add(1)) {
            const auto& entry = inputs.portfolio[i];
            auto it = by_contract.find(entry.name);
            static const std::vector<NormalizedFinding> kNone;
            results[i] = assess_contract(entry, it == by_contract.end() ? kNone : it->second,
                                         weights, config, inputs.quote);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    // Portfolio-relative cost thresholds need the max cost over assessed
    // contracts, so banding runs after the fan-out.
    Decimal max_cost;
    for (const auto& r : results) {
        if (r.assessed && r.principal.fee_usd > max_cost) {
            max_cost = r.principal.fee_usd;
        }
    }
    a.cost_thresholds = config.cost_mode == CostMode::Absolute ? config.absolute_cost_thresholds
                                                               : tertile_thresholds(max_cost);

    std::vector<std::size_t> order(results.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return inputs.portfolio[x].name < inputs.portfolio[y].name;
    });

    for (std::size_t idx : order) {
        ContractResult& r = results[idx];
        const std::string& name = inputs.portfolio[idx].name;
        if (!r.assessed) {
            a.errors.push_back({name, r.error});
            continue;
        }
        for (const auto& w : r.warnings) {
            a.warnings.push_back(w);
        }
        ScatterPoint point;
        point.contract = name;
        point.cost_usd = r.principal.fee_usd;
        a.total_gas += r.principal.total_gas;
        a.total_fee_eth = a.total_fee_eth + r.principal.fee_eth;
        a.total_fee_usd = a.total_fee_usd + r.principal.fee_usd;
        for (auto& item : r.items) {
            item.cost_band = band_cost(item.principal.fee_usd, a.cost_thresholds);
            item.severity = severity(item.cost_band, item.value_band);
            if (item.interest > point.interest) {
                point.interest = item.interest;
            }
            if (severity_rank(item.severity) > severity_rank(point.severity)) {
                point.severity = item.severity;
            }
            if (item.interest > a.max_interest) {
                a.max_interest = item.interest;
            }
            a.items.push_back(std::move(item));
        }
        a.scatter.push_back(std::move(point));
    }
    return a;
}

}  // namespace scdebt
