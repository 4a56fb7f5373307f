#include "scdebt/report.hpp"

#include <algorithm>
#include <sstream>

namespace scdebt {

namespace {

int severity_rank(Severity s) {
    switch (s) {
        case Severity::Low: return 0;
        case Severity::Medium: return 1;
        case Severity::High: return 2;
        case Severity::Critical: return 3;
    }
    return 0;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

std::string cwe_list(const std::vector<int>& ids) {
    std::vector<std::string> parts;
    parts.reserve(ids.size());
    for (int id : ids) {
        parts.push_back("CWE-" + std::to_string(id));
    }
    return join(parts, ", ");
}

nlohmann::json quote_json(const PriceQuote& quote) {
    // The wall-clock timestamp stays out of reports so identical inputs
    // render byte-identical output.
    return nlohmann::json{
        {"gas_price_gwei", quote.gas_price_gwei.to_string()},
        {"eth_usd", quote.eth_usd.to_string()},
        {"source", quote.source},
    };
}

nlohmann::json item_json(const DebtItem& item) {
    nlohmann::json principal{
        {"deploy_gas", item.principal.deploy_gas},
        {"update_gas", item.principal.update_gas},
        {"total_gas", item.principal.total_gas},
        {"fee_eth", item.principal.fee_eth.to_fixed(8)},
        {"fee_usd", item.principal.fee_usd.to_fixed(2)},
        {"breakdown",
         {{"create", item.principal.breakdown.create},
          {"transaction", item.principal.breakdown.transaction},
          {"codedeposit", item.principal.breakdown.codedeposit},
          {"calldata", item.principal.breakdown.calldata},
          {"execution", item.principal.breakdown.execution}}},
    };
    return nlohmann::json{
        {"contract", item.finding.contract_name},
        {"vulnerability", item.finding.vulnerability_id},
        {"category", std::string(category_slug(item.finding.category))},
        {"cwe_ids", item.finding.cwe_ids},
        {"principal", std::move(principal)},
        {"file", item.finding.file},
        {"line_start", item.finding.line_start},
        {"line_end", item.finding.line_end},
        {"reporting_tools", item.finding.reporting_tools},
        {"cwss",
         {{"base", item.cwss.base_subscore.to_fixed(1)},
          {"attack_surface", item.cwss.attack_surface_subscore.to_fixed(3)},
          {"environmental", item.cwss.environmental_subscore.to_fixed(3)},
          {"total", item.cwss.total.to_fixed(1)},
          {"vector", item.cwss.vector_string},
          {"vector_source", item.cwss.suggested ? "suggested" : "user"}}},
        {"cal", item.cal.to_string()},
        {"cls", item.cls.to_string()},
        {"interest", item.interest.to_fixed(1)},
        {"value_band", std::string(band_name(item.value_band))},
        {"cost_band", std::string(band_name(item.cost_band))},
        {"severity", std::string(severity_name(item.severity))},
    };
}

}  // namespace

std::string render_json(const DebtAssessment& a) {
    nlohmann::json doc;
    doc["portfolio"] = a.portfolio_name;
    doc["quote"] = quote_json(a.quote);
    doc["value_thresholds"] = {
        {"low_max", a.value_thresholds.low_max.to_fixed(1)},
        {"medium_max", a.value_thresholds.medium_max.to_fixed(1)},
    };
    doc["cost_thresholds"] = {
        {"mode", a.cost_mode == CostMode::Absolute ? "absolute" : "portfolio-relative"},
        {"low_max", a.cost_thresholds.low_max.to_fixed(2)},
        {"medium_max", a.cost_thresholds.medium_max.to_fixed(2)},
    };
    doc["items"] = nlohmann::json::array();
    for (const auto& item : a.items) {
        doc["items"].push_back(item_json(item));
    }
    doc["totals"] = {
        {"total_gas", a.total_gas},
        {"total_fee_eth", a.total_fee_eth.to_fixed(8)},
        {"total_fee_usd", a.total_fee_usd.to_fixed(2)},
        {"max_interest", a.max_interest.to_fixed(1)},
        {"contracts_assessed", a.scatter.size()},
        {"items", a.items.size()},
    };
    doc["scatter"] = nlohmann::json::array();
    for (const auto& p : a.scatter) {
        doc["scatter"].push_back({
            {"contract", p.contract},
            {"cost_usd", p.cost_usd.to_fixed(2)},
            {"interest", p.interest.to_fixed(1)},
            {"severity", std::string(severity_name(p.severity))},
        });
    }
    doc["unmapped"] = nlohmann::json::array();
    for (const auto& f : a.unmapped) {
        doc["unmapped"].push_back({
            {"tool", f.tool},
            {"tool_code", f.tool_code},
            {"contract", f.contract_name},
            {"file", f.file},
            {"line_start", f.line_start},
            {"line_end", f.line_end},
        });
    }
    doc["errors"] = nlohmann::json::array();
    for (const auto& e : a.errors) {
        doc["errors"].push_back({{"contract", e.contract}, {"message", e.message}});
    }
    doc["warnings"] = a.warnings;
    return doc.dump(2) + "\n";
}

std::string render_markdown(const DebtAssessment& a) {
    std::ostringstream out;
    out << "# Security debt assessment: " << a.portfolio_name << "\n\n";
    out << "Quote: gas price " << a.quote.gas_price_gwei.to_string() << " Gwei, ETH/USD "
        << a.quote.eth_usd.to_fixed(2) << " (" << a.quote.source << ")\n\n";
    out << "Cost bands (USD): Low <= " << a.cost_thresholds.low_max.to_fixed(2) << " < Medium <= "
        << a.cost_thresholds.medium_max.to_fixed(2) << " < High\n";
    out << "Value bands: Low <= " << a.value_thresholds.low_max.to_fixed(1) << " < Medium <= "
        << a.value_thresholds.medium_max.to_fixed(1) << " < High\n\n";

    out << "## Summary\n\n";
    if (a.items.empty()) {
        out << "No debt items.\n\n";
    } else {
        std::vector<const DebtItem*> sorted;
        for (const auto& item : a.items) sorted.push_back(&item);
        std::sort(sorted.begin(), sorted.end(), [](const DebtItem* x, const DebtItem* y) {
            int rx = severity_rank(x->severity), ry = severity_rank(y->severity);
            if (rx != ry) return rx > ry;
            int c = x->interest.compare(y->interest);
            if (c != 0) return c > 0;
            if (x->finding.contract_name != y->finding.contract_name) {
                return x->finding.contract_name < y->finding.contract_name;
            }
            return x->finding.vulnerability_id < y->finding.vulnerability_id;
        });
        out << "| Contract | Vulnerability | Severity | Interest | Cost (USD) |\n";
        out << "|---|---|---|---|---|\n";
        for (const DebtItem* item : sorted) {
            out << "| " << item->finding.contract_name << " | "
                << item->finding.vulnerability_id << " | " << severity_name(item->severity)
                << " | " << item->interest.to_fixed(1) << " | "
                << item->principal.fee_usd.to_fixed(2) << " |\n";
        }
        out << "\n";
    }

    std::string current;
    for (const auto& item : a.items) {
        if (item.finding.contract_name != current) {
            current = item.finding.contract_name;
            out << "## " << current << "\n\n";
            out << "Principal: " << item.principal.total_gas << " gas = "
                << item.principal.fee_eth.to_fixed(8) << " ETH = $"
                << item.principal.fee_usd.to_fixed(2) << "\n\n";
            out << "| Component | Gas |\n|---|---|\n";
            out << "| create | " << item.principal.breakdown.create << " |\n";
            out << "| transaction | " << item.principal.breakdown.transaction << " |\n";
            out << "| codedeposit | " << item.principal.breakdown.codedeposit << " |\n";
            out << "| calldata | " << item.principal.breakdown.calldata << " |\n";
            out << "| execution | " << item.principal.breakdown.execution << " |\n";
            out << "| update | " << item.principal.update_gas << " |\n\n";
            out << "| Vulnerability | Category | CWEs | Tools |\n|---|---|---|---|\n";
            for (const auto& other : a.items) {
                if (other.finding.contract_name != current) continue;
                out << "| " << other.finding.vulnerability_id << " | "
                    << category_display_name(other.finding.category) << " | "
                    << cwe_list(other.finding.cwe_ids) << " | "
                    << join(other.finding.reporting_tools, ", ") << " |\n";
            }
            out << "\n";
        }
        out << "Interest (" << item.finding.vulnerability_id << "): "
            << item.cwss.total.to_fixed(1) << " × " << item.cal.to_string() << " × "
            << item.cls.to_string() << " = " << item.interest.to_fixed(1) << " (value band "
            << band_name(item.value_band) << ")\n";
        out << "Severity: **" << severity_name(item.severity) << "** (cost "
            << band_name(item.cost_band) << ", value " << band_name(item.value_band) << ")\n\n";
    }

    if (!a.unmapped.empty()) {
        out << "## Unmapped findings\n\n";
        out << "| Tool | Code | Contract | Lines |\n|---|---|---|---|\n";
        for (const auto& f : a.unmapped) {
            out << "| " << f.tool << " | " << f.tool_code << " | " << f.contract_name << " | "
                << f.line_start << "-" << f.line_end << " |\n";
        }
        out << "\n";
    }
    if (!a.errors.empty()) {
        out << "## Errors\n\n";
        for (const auto& e : a.errors) {
            out << "- " << e.contract << ": " << e.message << "\n";
        }
        out << "\n";
    }
    if (!a.warnings.empty()) {
        out << "## Warnings\n\n";
        for (const auto& w : a.warnings) {
            out << "- " << w << "\n";
        }
        out << "\n";
    }
    return out.str();
}

std::string render_scatter_csv(const DebtAssessment& a) {
    std::ostringstream out;
    out << "contract,cost_usd,interest,severity\n";
    for (const auto& p : a.scatter) {
        out << p.contract << "," << p.cost_usd.to_fixed(2) << "," << p.interest.to_fixed(1)
            << "," << severity_name(p.severity) << "\n";
    }
    return out.str();
}

}  // namespace scdebt
