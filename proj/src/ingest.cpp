#include "scdebt/ingest.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>

namespace scdebt {

namespace {

constexpr std::array<std::pair<Confidence, std::string_view>, 4> kConfidenceNames{{
    {Confidence::High, "High"},
    {Confidence::Medium, "Medium"},
    {Confidence::Low, "Low"},
    {Confidence::Unknown, "Unknown"},
}};

int confidence_rank(Confidence c) {
    switch (c) {
        case Confidence::High: return 3;
        case Confidence::Medium: return 2;
        case Confidence::Low: return 1;
        case Confidence::Unknown: return 0;
    }
    return 0;
}

Finding parse_record(const nlohmann::json& record, std::size_t index) {
    auto fail = [index](const std::string& why) -> IngestError {
        return IngestError("findings record " + std::to_string(index) + ": " + why);
    };
    if (!record.is_object()) {
        throw fail("not an object");
    }
    static const std::set<std::string> allowed = {"tool",       "tool_code", "vulnerability_id",
                                                  "contract",   "file",      "line_start",
                                                  "line_end",   "confidence", "message"};
    for (auto it = record.begin(); it != record.end(); ++it) {
        if (!allowed.contains(it.key())) {
            throw fail("unknown field '" + it.key() + "'");
        }
    }
    Finding f;
    if (!record.contains("tool") || !record.at("tool").is_string() ||
        record.at("tool").get<std::string>().empty()) {
        throw fail("missing or empty 'tool'");
    }
    f.tool = record.at("tool").get<std::string>();
    f.tool_code = record.value("tool_code", std::string());
    if (record.contains("vulnerability_id") && !record.at("vulnerability_id").is_null()) {
        f.vulnerability_id = record.at("vulnerability_id").get<std::string>();
    }
    if (!record.contains("contract") || !record.at("contract").is_string()) {
        throw fail("missing 'contract'");
    }
    f.contract_name = record.at("contract").get<std::string>();
    if (!record.contains("file") || !record.at("file").is_string()) {
        throw fail("missing 'file'");
    }
    f.file = record.at("file").get<std::string>();
    if (!record.contains("line_start") || !record.contains("line_end")) {
        throw fail("missing 'line_start'/'line_end'");
    }
    f.line_start = record.at("line_start").get<int>();
    f.line_end = record.at("line_end").get<int>();
    if (f.line_start < 1 || f.line_end < 1) {
        throw fail("line numbers must be positive");
    }
    if (f.line_start > f.line_end) {
        throw fail("line_start exceeds line_end");
    }
    if (record.contains("confidence")) {
        auto conf = confidence_from_name(record.at("confidence").get<std::string>());
        if (!conf) {
            throw fail("unknown confidence '" + record.at("confidence").get<std::string>() + "'");
        }
        f.confidence = *conf;
    }
    f.message = record.value("message", std::string());
    return f;
}

NormalizedFinding seed_from(const Finding& f, const DesignVulnerability& vuln) {
    NormalizedFinding nf;
    nf.vulnerability_id = vuln.id;
    nf.category = vuln.category;
    nf.cwe_ids = vuln.cwe_ids;
    nf.contract_name = f.contract_name;
    nf.file = f.file;
    nf.line_start = f.line_start;
    nf.line_end = f.line_end;
    nf.confidence = f.confidence;
    nf.message = f.message;
    nf.reporting_tools = {f.tool};
    nf.merged_count = 1;
    return nf;
}

void fold_into(NormalizedFinding& into, const NormalizedFinding& other) {
    into.line_start = std::min(into.line_start, other.line_start);
    into.line_end = std::max(into.line_end, other.line_end);
    if (confidence_rank(other.confidence) > confidence_rank(into.confidence)) {
        into.confidence = other.confidence;
    }
    if (into.message.empty()) {
        into.message = other.message;
    }
    for (const auto& tool : other.reporting_tools) {
        if (std::find(into.reporting_tools.begin(), into.reporting_tools.end(), tool) ==
            into.reporting_tools.end()) {
            into.reporting_tools.push_back(tool);
        }
    }
    into.merged_count += other.merged_count;
}

/// Merges overlap chains within one (contract, vulnerability) bucket. Sorting
/// by line_start first makes the fold independent of input order.
std::vector<NormalizedFinding> merge_bucket(std::vector<NormalizedFinding> bucket) {
    std::sort(bucket.begin(), bucket.end(), [](const auto& a, const auto& b) {
        if (a.line_start != b.line_start) return a.line_start < b.line_start;
        return a.line_end < b.line_end;
    });
    std::vector<NormalizedFinding> out;
    for (auto& nf : bucket) {
        if (!out.empty() && nf.line_start <= out.back().line_end) {
            fold_into(out.back(), nf);
        } else {
            out.push_back(std::move(nf));
        }
    }
    for (auto& nf : out) {
        std::sort(nf.reporting_tools.begin(), nf.reporting_tools.end());
    }
    return out;
}

std::vector<NormalizedFinding> merge_all(std::vector<NormalizedFinding> raw) {
    std::map<std::pair<std::string, std::string>, std::vector<NormalizedFinding>> buckets;
    for (auto& nf : raw) {
        buckets[{nf.contract_name, nf.vulnerability_id}].push_back(std::move(nf));
    }
    std::vector<NormalizedFinding> out;
    for (auto& [key, bucket] : buckets) {
        for (auto& merged : merge_bucket(std::move(bucket))) {
            out.push_back(std::move(merged));
        }
    }
    return out;
}

}  // namespace

std::string_view confidence_name(Confidence c) {
    for (const auto& [value, name] : kConfidenceNames) {
        if (value == c) return name;
    }
    return "Unknown";
}

std::optional<Confidence> confidence_from_name(std::string_view name) {
    for (const auto& [value, n] : kConfidenceNames) {
        if (n == name) return value;
    }
    return std::nullopt;
}

std::vector<Finding> parse_findings(const nlohmann::json& doc) {
    if (!doc.is_array()) {
        throw IngestError("findings document must be a JSON array");
    }
    std::vector<Finding> out;
    out.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        out.push_back(parse_record(doc[i], i));
    }
    return out;
}

std::vector<Finding> parse_findings_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IngestError("cannot open findings file: " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw IngestError("findings file " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_findings(doc);
}

NormalizeResult normalize(const std::vector<Finding>& findings, const Catalog& catalog) {
    NormalizeResult result;
    std::vector<NormalizedFinding> resolved;
    for (const auto& f : findings) {
        std::optional<std::string> slug = f.vulnerability_id;
        if (!slug) {
            slug = catalog.resolve_alias(f.tool, f.tool_code);
        }
        const DesignVulnerability* vuln = slug ? catalog.lookup(*slug) : nullptr;
        if (!vuln) {
            result.unmapped.push_back(f);
            continue;
        }
        resolved.push_back(seed_from(f, *vuln));
    }
    result.findings = merge_all(std::move(resolved));
    return result;
}

std::vector<NormalizedFinding> merge_manual(const std::vector<NormalizedFinding>& auto_findings,
                                            const nlohmann::json& manual_doc,
                                            const Catalog& catalog) {
    std::vector<Finding> manual = parse_findings(manual_doc);
    std::vector<NormalizedFinding> combined = auto_findings;
    for (std::size_t i = 0; i < manual.size(); ++i) {
        Finding f = manual[i];
        if (f.tool.empty()) {
            f.tool = "manual";
        }
        if (!f.vulnerability_id) {
            throw IngestError("manual record " + std::to_string(i) +
                              " must carry a vulnerability_id");
        }
        const DesignVulnerability* vuln = catalog.lookup(*f.vulnerability_id);
        if (!vuln) {
            throw IngestError("manual record " + std::to_string(i) +
                              " names unknown vulnerability '" + *f.vulnerability_id + "'");
        }
        combined.push_back(seed_from(f, *vuln));
    }
    return merge_all(std::move(combined));
}

}  // namespace scdebt
