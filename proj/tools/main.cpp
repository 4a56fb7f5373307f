#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scdebt/catalog.hpp"
#include "scdebt/cwss.hpp"
#include "scdebt/debt.hpp"
#include "scdebt/evmgas.hpp"
#include "scdebt/pricing.hpp"
#include "scdebt/report.hpp"

namespace {

using namespace scdebt;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;  // lookup misses, partial assessment failures
constexpr int kExitUsage = 2;   // bad flags, malformed or unreadable inputs

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Catalog load_catalog_or_bundled(const std::string& path) {
    if (path.empty()) {
        return Catalog::bundled();
    }
    return Catalog::load_file(path);
}

cwss::WeightTable load_weights_or_bundled(const std::string& path) {
    if (path.empty()) {
        return cwss::WeightTable::bundled();
    }
    return cwss::WeightTable::load_file(path);
}

std::string env_or_empty(const char* name) {
    const char* value = std::getenv(name);
    return value ? value : "";
}

void print_vulnerability(const DesignVulnerability& v) {
    std::cout << v.id << "\n";
    std::cout << "  name:        " << v.name << "\n";
    std::cout << "  category:    " << category_display_name(v.category) << " ("
              << category_source(v.category) << ")\n";
    if (!v.secondary_categories.empty()) {
        std::cout << "  also under:  ";
        for (std::size_t i = 0; i < v.secondary_categories.size(); ++i) {
            if (i > 0) std::cout << ", ";
            std::cout << category_display_name(v.secondary_categories[i]);
        }
        std::cout << "\n";
    }
    std::cout << "  cwe:        ";
    for (int id : v.cwe_ids) std::cout << " CWE-" << id;
    std::cout << "\n";
    if (v.swc_id) {
        std::cout << "  swc:         SWC-" << *v.swc_id << "\n";
    }
    if (!v.description.empty()) {
        std::cout << "  about:       " << v.description << "\n";
    }
    if (!v.remediation_note.empty()) {
        std::cout << "  remediation: " << v.remediation_note << "\n";
    }
    if (!v.notes.empty()) {
        std::cout << "  notes:       " << v.notes << "\n";
    }
}

void print_row(const DesignVulnerability& v) {
    std::string cwes;
    for (std::size_t i = 0; i < v.cwe_ids.size(); ++i) {
        if (i > 0) cwes += ",";
        cwes += "CWE-" + std::to_string(v.cwe_ids[i]);
    }
    std::cout << v.id << "\t" << category_slug(v.category) << "\t" << cwes << "\t" << v.name
              << "\n";
}

struct CatalogArgs {
    std::string catalog_path;
    std::string list_category;
    bool list_requested = false;
    std::string show_slug;
    int cwe_id = 0;
    bool cwe_requested = false;
};

int cmd_catalog(const CatalogArgs& args) {
    Catalog catalog = load_catalog_or_bundled(args.catalog_path);
    if (args.list_requested) {
        std::vector<const DesignVulnerability*> rows;
        if (!args.list_category.empty()) {
            auto cat = category_from_slug(args.list_category);
            if (!cat) {
                std::cerr << "error: unknown category '" << args.list_category << "'\n";
                return kExitDomain;
            }
            rows = catalog.by_category(*cat);
        } else {
            for (const auto& v : catalog.vulnerabilities()) rows.push_back(&v);
            std::sort(rows.begin(), rows.end(),
                      [](const auto* a, const auto* b) { return a->id < b->id; });
        }
        for (const auto* v : rows) print_row(*v);
        return kExitOk;
    }
    if (!args.show_slug.empty()) {
        const DesignVulnerability* v = catalog.lookup(args.show_slug);
        if (!v) {
            std::cerr << "error: no catalog entry with id '" << args.show_slug << "'\n";
            return kExitDomain;
        }
        print_vulnerability(*v);
        return kExitOk;
    }
    if (args.cwe_requested) {
        auto rows = catalog.by_cwe(args.cwe_id);
        if (rows.empty()) {
            std::cerr << "error: no catalog entry maps to CWE-" << args.cwe_id << "\n";
            return kExitDomain;
        }
        for (const auto* v : rows) print_row(*v);
        return kExitOk;
    }
    throw UsageError("catalog needs one of: list, show, cwe");
}

struct QuoteArgs {
    std::string quote_path;
    std::string gas_price;
    std::string eth_usd;
    std::string price_url;
};

/// Flags beat the environment, which beats the config file.
PriceQuote resolve_quote(const QuoteArgs& args, std::vector<std::string>* warnings,
                         const std::string& config_url = "") {
    std::optional<PriceQuote> static_part;
    if (!args.quote_path.empty()) {
        static_part = load_quote_file(args.quote_path);
    } else if (!args.gas_price.empty() || !args.eth_usd.empty()) {
        if (args.gas_price.empty() || args.eth_usd.empty()) {
            throw UsageError("--gas-price and --eth-usd must be given together");
        }
        static_part = static_quote(Decimal::parse(args.gas_price), Decimal::parse(args.eth_usd));
    }
    std::string url = args.price_url;
    if (url.empty()) {
        url = env_or_empty("CONTRACT_DEBT_PRICE_URL");
    }
    if (url.empty()) {
        url = config_url;
    }
    if (!url.empty()) {
        QuoteSource source;
        source.url = url;
        source.fallback = static_part;
        return fetch_quote(source, warnings);
    }
    if (!static_part) {
        throw UsageError("no price source: pass --quote, --gas-price/--eth-usd or --price-url");
    }
    return *static_part;
}

struct GasArgs {
    std::string init_code_path;
    std::string runtime_code_path;
    std::int64_t runtime_len = -1;
    std::string execution = "static";
    std::int64_t execution_gas = -1;
    std::string update = "selfdestruct";
    std::int64_t proxy_gas = -1;
    std::string gas_schedule_path;
    bool include_calldata = false;
    bool strict = false;
    bool json = false;
    QuoteArgs quote;
};

int cmd_gas(const GasArgs& args) {
    ContractBytecode code;
    if (!args.init_code_path.empty()) {
        code.init_code = evm::parse_hex_file(args.init_code_path);
    }
    if (!args.runtime_code_path.empty()) {
        code.runtime_code = evm::parse_hex_file(args.runtime_code_path);
    }
    if (args.runtime_len >= 0) {
        code.runtime_len_override = static_cast<std::uint64_t>(args.runtime_len);
    }
    if (code.init_code.empty() && !code.runtime_len()) {
        throw UsageError("pass --init-code, --runtime-code or --runtime-len");
    }

    GasSchedule schedule = args.gas_schedule_path.empty()
                               ? GasSchedule::defaults()
                               : GasSchedule::load_file(args.gas_schedule_path);

    EstimationOptions opts;
    opts.include_calldata = args.include_calldata;
    opts.strict = args.strict;
    if (args.execution == "zero") {
        opts.execution = ExecutionStrategy::zero();
    } else if (args.execution == "static") {
        opts.execution = ExecutionStrategy::static_sum();
    } else if (args.execution == "provided") {
        if (args.execution_gas < 0) {
            throw UsageError("--execution provided needs a non-negative --execution-gas");
        }
        opts.execution = ExecutionStrategy::provided(static_cast<std::uint64_t>(args.execution_gas));
    } else {
        throw UsageError("--execution must be zero, static or provided");
    }
    if (args.update == "selfdestruct") {
        opts.update = UpdatePattern::Selfdestruct;
    } else if (args.update == "proxy") {
        opts.update = UpdatePattern::Proxy;
        if (args.proxy_gas < 0) {
            throw UsageError("--update proxy needs a non-negative --proxy-gas");
        }
        opts.proxy_gas = static_cast<std::uint64_t>(args.proxy_gas);
    } else {
        throw UsageError("--update must be selfdestruct or proxy");
    }

    std::vector<std::string> warnings;
    PriceQuote quote = resolve_quote(args.quote, &warnings);
    PrincipalEstimate est = principal(code, schedule, opts, quote);

    if (args.json) {
        nlohmann::json doc{
            {"deploy_gas", est.deploy_gas},
            {"update_gas", est.update_gas},
            {"total_gas", est.total_gas},
            {"breakdown",
             {{"create", est.breakdown.create},
              {"transaction", est.breakdown.transaction},
              {"codedeposit", est.breakdown.codedeposit},
              {"calldata", est.breakdown.calldata},
              {"execution", est.breakdown.execution},
              {"unknown_opcodes", est.breakdown.unknown_opcode_count}}},
            {"fee_eth", est.fee_eth.to_fixed(8)},
            {"fee_usd", est.fee_usd.to_fixed(2)},
            {"quote",
             {{"gas_price_gwei", quote.gas_price_gwei.to_string()},
              {"eth_usd", quote.eth_usd.to_string()},
              {"source", quote.source}}},
            {"warnings", est.breakdown.warnings},
        };
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "Deployment gas\n";
        std::cout << "  create:       " << est.breakdown.create << "\n";
        std::cout << "  transaction:  " << est.breakdown.transaction << "\n";
        std::cout << "  codedeposit:  " << est.breakdown.codedeposit << "\n";
        std::cout << "  calldata:     " << est.breakdown.calldata << "\n";
        std::cout << "  execution:    " << est.breakdown.execution
                  << (opts.execution.kind == ExecutionStrategy::Kind::StaticSum
                          ? " (static lower bound)"
                          : "")
                  << "\n";
        std::cout << "  deploy total: " << est.deploy_gas << "\n";
        std::cout << "Update (" << args.update << "): " << est.update_gas << "\n";
        std::cout << "Total gas: " << est.total_gas << "\n";
        std::cout << "Fee: " << est.fee_eth.to_fixed(8) << " ETH = $" << est.fee_usd.to_fixed(2)
                  << " (gas price " << quote.gas_price_gwei.to_string() << " Gwei, ETH/USD "
                  << quote.eth_usd.to_string() << ")\n";
        for (const auto& w : est.breakdown.warnings) {
            std::cout << "warning: " << w << "\n";
        }
    }
    for (const auto& w : warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    return kExitOk;
}

struct ScoreArgs {
    std::string vector_string;
    std::string weights_path;
    std::string catalog_path;
    bool suggest = false;
    std::string finding_slug;
    int tools = 1;
    bool json = false;
};

int cmd_score(const ScoreArgs& args) {
    cwss::WeightTable weights = load_weights_or_bundled(args.weights_path);
    if (args.suggest) {
        if (args.finding_slug.empty()) {
            throw UsageError("--suggest needs --finding <slug>");
        }
        Catalog catalog = load_catalog_or_bundled(args.catalog_path);
        const DesignVulnerability* vuln = catalog.lookup(args.finding_slug);
        if (!vuln) {
            std::cerr << "error: no catalog entry with id '" << args.finding_slug << "'\n";
            return kExitDomain;
        }
        NormalizedFinding nf;
        nf.vulnerability_id = vuln->id;
        nf.category = vuln->category;
        nf.cwe_ids = vuln->cwe_ids;
        for (int i = 0; i < std::max(args.tools, 0); ++i) {
            nf.reporting_tools.push_back("tool" + std::to_string(i + 1));
        }
        cwss::CwssVector vec = cwss::suggest_vector(nf, ContractProfile{});
        std::cout << cwss::render_vector(vec) << "\n";
        return kExitOk;
    }
    if (args.vector_string.empty()) {
        throw UsageError("pass --vector or --suggest");
    }
    cwss::CwssVector vec;
    try {
        vec = cwss::parse_vector(args.vector_string, weights);
    } catch (const cwss::CwssError& e) {
        throw UsageError(e.what());
    }
    cwss::CwssScore s = cwss::score(vec, weights);
    if (args.json) {
        nlohmann::json doc{
            {"base", s.base_subscore.to_fixed(1)},
            {"attack_surface", s.attack_surface_subscore.to_fixed(3)},
            {"environmental", s.environmental_subscore.to_fixed(3)},
            {"total", s.total.to_fixed(1)},
            {"vector", s.vector_string},
        };
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "Vector:         " << s.vector_string << "\n";
        std::cout << "Base finding:   " << s.base_subscore.to_fixed(1) << "\n";
        std::cout << "Attack surface: " << s.attack_surface_subscore.to_fixed(3) << "\n";
        std::cout << "Environmental:  " << s.environmental_subscore.to_fixed(3) << "\n";
        std::cout << "Total:          " << s.total.to_fixed(1) << "\n";
    }
    return kExitOk;
}

struct AssessArgs {
    std::string portfolio_path;
    std::vector<std::string> findings_paths;
    std::string manual_path;
    std::string config_path;
    std::string catalog_path;
    std::string weights_path;
    std::string out_dir;
    std::string format = "json";
    int jobs = 0;
    QuoteArgs quote;
};

int cmd_assess(const AssessArgs& args) {
    std::string config_path = args.config_path;
    if (config_path.empty()) {
        config_path = env_or_empty("CONTRACT_DEBT_CONFIG");
    }
    AssessConfig config =
        config_path.empty() ? AssessConfig::defaults() : AssessConfig::load_file(config_path);
    if (args.jobs > 0) {
        config.jobs = args.jobs;
    }

    Catalog catalog = load_catalog_or_bundled(args.catalog_path);
    cwss::WeightTable weights = load_weights_or_bundled(args.weights_path);

    AssessInputs inputs;
    inputs.portfolio_name = std::filesystem::path(args.portfolio_path).stem().string();
    inputs.portfolio = load_portfolio_file(args.portfolio_path);
    for (const auto& path : args.findings_paths) {
        auto findings = parse_findings_file(path);
        inputs.findings.insert(inputs.findings.end(), findings.begin(), findings.end());
    }
    if (!args.manual_path.empty()) {
        std::ifstream in(args.manual_path);
        if (!in) {
            throw UsageError("cannot open manual findings file: " + args.manual_path);
        }
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::parse_error& e) {
            throw UsageError("manual findings file is not valid JSON: " + std::string(e.what()));
        }
        inputs.manual_doc = std::move(doc);
    }
    inputs.quote = resolve_quote(args.quote, &inputs.warnings, config.price_url);

    DebtAssessment assessment = assess(inputs, catalog, weights, config);

    if (!args.out_dir.empty()) {
        std::filesystem::create_directories(args.out_dir);
        auto write = [&](const char* name, const std::string& content) {
            std::filesystem::path path = std::filesystem::path(args.out_dir) / name;
            std::ofstream out(path, std::ios::binary);
            if (!out) {
                throw UsageError("cannot write " + path.string());
            }
            out << content;
        };
        write("assessment.json", render_json(assessment));
        write("assessment.md", render_markdown(assessment));
        write("scatter.csv", render_scatter_csv(assessment));
        std::cout << "wrote assessment.json, assessment.md, scatter.csv to " << args.out_dir
                  << "\n";
    } else {
        if (args.format == "json") {
            std::cout << render_json(assessment);
        } else if (args.format == "md") {
            std::cout << render_markdown(assessment);
        } else if (args.format == "csv") {
            std::cout << render_scatter_csv(assessment);
        } else {
            throw UsageError("--format must be json, md or csv");
        }
    }
    for (const auto& e : assessment.errors) {
        std::cerr << "error: " << e.contract << ": " << e.message << "\n";
    }
    return assessment.errors.empty() ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Assess security technical debt in smart contracts"};
    app.require_subcommand(1);

    CatalogArgs catalog_args;
    CLI::App* catalog_cmd = app.add_subcommand("catalog", "Query the design-vulnerability catalog");
    catalog_cmd->require_subcommand(1);
    catalog_cmd->add_option("--catalog", catalog_args.catalog_path, "Catalog file override");
    CLI::App* list_cmd = catalog_cmd->add_subcommand("list", "List catalog entries");
    list_cmd->add_option("--category", catalog_args.list_category, "Filter by category slug");
    list_cmd->callback([&] { catalog_args.list_requested = true; });
    CLI::App* show_cmd = catalog_cmd->add_subcommand("show", "Show one entry");
    show_cmd->add_option("slug", catalog_args.show_slug, "Catalog entry id")->required();
    CLI::App* cwe_cmd = catalog_cmd->add_subcommand("cwe", "List entries mapped to a CWE id");
    cwe_cmd->add_option("id", catalog_args.cwe_id, "CWE id")->required();
    cwe_cmd->callback([&] { catalog_args.cwe_requested = true; });

    GasArgs gas_args;
    CLI::App* gas_cmd = app.add_subcommand("gas", "Estimate redeployment cost (debt principal)");
    gas_cmd->add_option("--init-code", gas_args.init_code_path, "Deployment bytecode hex file");
    gas_cmd->add_option("--runtime-code", gas_args.runtime_code_path, "Runtime bytecode hex file");
    gas_cmd->add_option("--runtime-len", gas_args.runtime_len, "Runtime code length in bytes");
    gas_cmd->add_option("--execution", gas_args.execution,
                        "Execution cost strategy: zero, static, provided");
    gas_cmd->add_option("--execution-gas", gas_args.execution_gas,
                        "Measured execution gas (with --execution provided)");
    gas_cmd->add_option("--update", gas_args.update, "Update pattern: selfdestruct or proxy");
    gas_cmd->add_option("--proxy-gas", gas_args.proxy_gas, "Proxy address-update gas");
    gas_cmd->add_option("--gas-schedule", gas_args.gas_schedule_path, "Gas schedule override file");
    gas_cmd->add_flag("--include-calldata", gas_args.include_calldata,
                      "Charge intrinsic calldata gas for the init code");
    gas_cmd->add_flag("--strict", gas_args.strict, "Fail when the runtime length is unknown");
    gas_cmd->add_flag("--json", gas_args.json, "Machine-readable output");
    gas_cmd->add_option("--quote", gas_args.quote.quote_path, "Quote file");
    gas_cmd->add_option("--gas-price", gas_args.quote.gas_price, "Gas price in Gwei");
    gas_cmd->add_option("--eth-usd", gas_args.quote.eth_usd, "ETH price in USD");
    gas_cmd->add_option("--price-url", gas_args.quote.price_url, "Price feed URL");

    ScoreArgs score_args;
    CLI::App* score_cmd = app.add_subcommand("score", "Score a weakness vector");
    score_cmd->add_option("--vector", score_args.vector_string, "16-factor vector string");
    score_cmd->add_option("--weights", score_args.weights_path, "Weight table override");
    score_cmd->add_option("--catalog", score_args.catalog_path, "Catalog file override");
    score_cmd->add_flag("--suggest", score_args.suggest, "Suggest a vector for a finding");
    score_cmd->add_option("--finding", score_args.finding_slug, "Catalog slug (with --suggest)");
    score_cmd->add_option("--tools", score_args.tools, "How many tools reported it");
    score_cmd->add_flag("--json", score_args.json, "Machine-readable output");

    AssessArgs assess_args;
    CLI::App* assess_cmd = app.add_subcommand("assess", "Run the full debt assessment pipeline");
    assess_cmd->add_option("--portfolio", assess_args.portfolio_path, "Portfolio document")
        ->required();
    assess_cmd->add_option("--findings", assess_args.findings_paths,
                           "Findings file (repeatable)");
    assess_cmd->add_option("--manual", assess_args.manual_path, "Manual findings file");
    assess_cmd->add_option("--config", assess_args.config_path,
                           "Config file (or CONTRACT_DEBT_CONFIG)");
    assess_cmd->add_option("--catalog", assess_args.catalog_path, "Catalog file override");
    assess_cmd->add_option("--weights", assess_args.weights_path, "Weight table override");
    assess_cmd->add_option("--out", assess_args.out_dir, "Output directory for reports");
    assess_cmd->add_option("--format", assess_args.format,
                           "Stdout format when --out is absent: json, md, csv");
    assess_cmd->add_option("--jobs", assess_args.jobs, "Parallel contract evaluations");
    assess_cmd->add_option("--quote", assess_args.quote.quote_path, "Quote file");
    assess_cmd->add_option("--gas-price", assess_args.quote.gas_price, "Gas price in Gwei");
    assess_cmd->add_option("--eth-usd", assess_args.quote.eth_usd, "ETH price in USD");
    assess_cmd->add_option("--price-url", assess_args.quote.price_url, "Price feed URL");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(catalog_cmd)) return cmd_catalog(catalog_args);
        if (app.got_subcommand(gas_cmd)) return cmd_gas(gas_args);
        if (app.got_subcommand(score_cmd)) return cmd_score(score_args);
        if (app.got_subcommand(assess_cmd)) return cmd_assess(assess_args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        // Unreadable or malformed inputs are usage errors for CI purposes.
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
