#include "scdebt/config.hpp"

#include <fstream>
#include <set>

namespace scdebt {

namespace {

Decimal decimal_from_json(const nlohmann::json& node, const std::string& where) {
    if (node.is_string()) {
        return Decimal::parse(node.get<std::string>());
    }
    if (node.is_number()) {
        return Decimal::parse(node.dump());
    }
    throw ConfigError(where + " must be a number");
}

nlohmann::json read_json_file(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(std::string("cannot open ") + what + " file: " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string(what) + " file " + path.string() +
                          " is not valid JSON: " + e.what());
    }
    return doc;
}

}  // namespace

AssessConfig AssessConfig::defaults() {
    AssessConfig c;
    c.cal_bands = {
        {1, 3, Decimal::from_int(6)},  {4, 6, Decimal::from_int(5)},
        {7, 9, Decimal::from_int(4)},  {10, 12, Decimal::from_int(3)},
        {13, 15, Decimal::from_int(2)}, {16, 18, Decimal::from_int(1)},
    };
    // Rank order of DApp categories by observed activity; the top three are
    // games, currency exchanges and gambling.
    c.activity_ranking = {
        "games",    "exchanges",  "gambling",   "finance",  "high-risk", "marketplaces",
        "media",    "social",     "wallet",     "development", "security", "governance",
        "property", "storage",    "identity",   "energy",   "insurance", "health",
    };
    return c;
}

AssessConfig AssessConfig::load(const nlohmann::json& doc) {
    AssessConfig c = defaults();
    if (!doc.is_object()) {
        throw ConfigError("config document must be a JSON object");
    }
    static const std::set<std::string> allowed = {
        "value_thresholds", "cost_thresholds", "cal_bands", "activity_ranking",
        "include_calldata", "gas_schedule",    "jobs",      "price_url"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!allowed.contains(it.key())) {
            throw ConfigError("unknown field '" + it.key() + "' in config");
        }
    }
    if (doc.contains("value_thresholds")) {
        const auto& vt = doc.at("value_thresholds");
        c.value_thresholds.low_max = decimal_from_json(vt.at("low_max"), "value low_max");
        c.value_thresholds.medium_max = decimal_from_json(vt.at("medium_max"), "value medium_max");
        if (!(c.value_thresholds.low_max < c.value_thresholds.medium_max)) {
            throw ConfigError("value thresholds must satisfy low_max < medium_max");
        }
    }
    if (doc.contains("cost_thresholds")) {
        const auto& ct = doc.at("cost_thresholds");
        std::string mode = ct.value("mode", "portfolio-relative");
        if (mode == "portfolio-relative") {
            c.cost_mode = CostMode::PortfolioRelative;
        } else if (mode == "absolute") {
            c.cost_mode = CostMode::Absolute;
            c.absolute_cost_thresholds.low_max = decimal_from_json(ct.at("low_max"), "cost low_max");
            c.absolute_cost_thresholds.medium_max =
                decimal_from_json(ct.at("medium_max"), "cost medium_max");
            if (!(c.absolute_cost_thresholds.low_max < c.absolute_cost_thresholds.medium_max)) {
                throw ConfigError("cost thresholds must satisfy low_max < medium_max");
            }
        } else {
            throw ConfigError("cost_thresholds.mode must be 'portfolio-relative' or 'absolute'");
        }
    }
    if (doc.contains("cal_bands")) {
        c.cal_bands.clear();
        for (const auto& entry : doc.at("cal_bands")) {
            CalBand band;
            band.min_rank = entry.at("min_rank").get<int>();
            band.max_rank = entry.at("max_rank").get<int>();
            band.score = decimal_from_json(entry.at("score"), "cal band score");
            if (band.min_rank < 1 || band.max_rank < band.min_rank) {
                throw ConfigError("cal band ranks must satisfy 1 <= min_rank <= max_rank");
            }
            if (band.score < Decimal::from_int(1) || band.score > Decimal::from_int(6)) {
                throw ConfigError("cal band score must lie within [1,6]");
            }
            c.cal_bands.push_back(std::move(band));
        }
        if (c.cal_bands.empty()) {
            throw ConfigError("cal_bands must not be empty");
        }
    }
    if (doc.contains("activity_ranking")) {
        c.activity_ranking = doc.at("activity_ranking").get<std::vector<std::string>>();
        if (c.activity_ranking.empty()) {
            throw ConfigError("activity_ranking must not be empty");
        }
    }
    if (doc.contains("include_calldata")) {
        c.include_calldata = doc.at("include_calldata").get<bool>();
    }
    if (doc.contains("gas_schedule")) {
        c.gas_schedule = GasSchedule::load(doc.at("gas_schedule"));
    }
    if (doc.contains("jobs")) {
        c.jobs = doc.at("jobs").get<int>();
        if (c.jobs < 0) {
            throw ConfigError("jobs must be non-negative");
        }
    }
    if (doc.contains("price_url")) {
        c.price_url = doc.at("price_url").get<std::string>();
    }
    return c;
}

AssessConfig AssessConfig::load_file(const std::filesystem::path& path) {
    return load(read_json_file(path, "config"));
}

std::vector<PortfolioEntry> load_portfolio(const nlohmann::json& doc,
                                           const std::filesystem::path& base_dir) {
    if (!doc.is_array()) {
        throw ConfigError("portfolio document must be a JSON array of contract entries");
    }
    static const std::set<std::string> allowed = {
        "name",        "loc",          "activity_category", "activity_rank",
        "lifespan_days", "init_code",  "runtime_code",      "runtime_len",
        "deploy_gas_override", "execution", "update",       "vectors"};
    std::vector<PortfolioEntry> out;
    std::set<std::string> names;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& entry = doc[i];
        auto fail = [i](const std::string& why) -> ConfigError {
            return ConfigError("portfolio entry " + std::to_string(i) + ": " + why);
        };
        if (!entry.is_object()) {
            throw fail("not an object");
        }
        for (auto it = entry.begin(); it != entry.end(); ++it) {
            if (!allowed.contains(it.key())) {
                throw fail("unknown field '" + it.key() + "'");
            }
        }
        PortfolioEntry pe;
        if (!entry.contains("name") || !entry.at("name").is_string()) {
            throw fail("missing 'name'");
        }
        pe.name = entry.at("name").get<std::string>();
        if (!names.insert(pe.name).second) {
            throw fail("duplicate contract name '" + pe.name + "'");
        }
        pe.loc = entry.value("loc", 0);
        pe.activity_category = entry.value("activity_category", std::string());
        if (entry.contains("activity_rank")) {
            pe.activity_rank = entry.at("activity_rank").get<int>();
        }
        if (!entry.contains("lifespan_days")) {
            throw fail("missing 'lifespan_days'");
        }
        pe.lifespan_days = entry.at("lifespan_days").get<int>();
        if (entry.contains("init_code")) {
            pe.init_code_path = base_dir / entry.at("init_code").get<std::string>();
        }
        if (entry.contains("runtime_code")) {
            pe.runtime_code_path = base_dir / entry.at("runtime_code").get<std::string>();
        }
        if (entry.contains("runtime_len")) {
            pe.runtime_len = entry.at("runtime_len").get<std::uint64_t>();
        }
        if (entry.contains("deploy_gas_override")) {
            pe.deploy_gas_override = entry.at("deploy_gas_override").get<std::uint64_t>();
        }
        if (entry.contains("execution")) {
            const auto& ex = entry.at("execution");
            std::string strategy = ex.at("strategy").get<std::string>();
            if (strategy == "zero") {
                pe.execution = ExecutionStrategy::zero();
            } else if (strategy == "static_sum") {
                pe.execution = ExecutionStrategy::static_sum();
            } else if (strategy == "provided") {
                if (!ex.contains("value")) {
                    throw fail("execution strategy 'provided' needs a 'value'");
                }
                if (ex.at("value").is_number_integer() && ex.at("value").get<std::int64_t>() < 0) {
                    throw fail("provided execution gas must not be negative");
                }
                pe.execution = ExecutionStrategy::provided(ex.at("value").get<std::uint64_t>());
            } else {
                throw fail("unknown execution strategy '" + strategy + "'");
            }
        }
        if (entry.contains("update")) {
            const auto& up = entry.at("update");
            std::string pattern = up.at("pattern").get<std::string>();
            if (pattern == "selfdestruct") {
                pe.update = UpdatePattern::Selfdestruct;
            } else if (pattern == "proxy") {
                pe.update = UpdatePattern::Proxy;
                if (up.contains("proxy_gas")) {
                    pe.proxy_gas = up.at("proxy_gas").get<std::uint64_t>();
                }
            } else {
                throw fail("unknown update pattern '" + pattern + "'");
            }
        }
        if (entry.contains("vectors")) {
            for (auto it = entry.at("vectors").begin(); it != entry.at("vectors").end(); ++it) {
                pe.vectors[it.key()] = it.value().get<std::string>();
            }
        }
        out.push_back(std::move(pe));
    }
    return out;
}

std::vector<PortfolioEntry> load_portfolio_file(const std::filesystem::path& path) {
    return load_portfolio(read_json_file(path, "portfolio"),
                          path.has_parent_path() ? path.parent_path()
                                                 : std::filesystem::path("."));
}

}  // namespace scdebt
