#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scdebt/catalog.hpp"

namespace scdebt {

class IngestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Confidence { High, Medium, Low, Unknown };

std::string_view confidence_name(Confidence c);
std::optional<Confidence> confidence_from_name(std::string_view name);

/// One raw report from a scanner (or from manual analysis, tool == "manual").
struct Finding {
    std::string tool;
    std::string tool_code;
    std::optional<std::string> vulnerability_id;  // pre-resolved slug, wins over alias lookup
    std::string contract_name;
    std::string file;
    int line_start = 1;
    int line_end = 1;
    Confidence confidence = Confidence::Unknown;
    std::string message;
};

/// A finding joined to the catalog, after cross-tool dedup.
struct NormalizedFinding {
    std::string vulnerability_id;
    DesignFlawCategory category = DesignFlawCategory::DenialOfService;
    std::vector<int> cwe_ids;
    std::string contract_name;
    std::string file;
    int line_start = 1;
    int line_end = 1;
    Confidence confidence = Confidence::Unknown;  // strongest among merged reports
    std::string message;
    std::vector<std::string> reporting_tools;  // sorted, duplicate-free
    std::size_t merged_count = 1;              // raw findings folded into this record
};

struct NormalizeResult {
    std::vector<NormalizedFinding> findings;
    std::vector<Finding> unmapped;  // could not be joined to the catalog; never dropped
};

/// Parses a findings JSON array. Malformed records throw with their index.
std::vector<Finding> parse_findings(const nlohmann::json& doc);
std::vector<Finding> parse_findings_file(const std::filesystem::path& path);

/// Resolves findings against the catalog and merges duplicates: records with
/// the same (contract, vulnerability) whose line ranges overlap collapse into
/// one, taking the widest span and the union of reporting tools. Order of the
/// input does not affect the result.
NormalizeResult normalize(const std::vector<Finding>& findings, const Catalog& catalog);

/// Folds manual findings into an already-normalized set. Manual records carry
/// explicit vulnerability ids; an id that does not resolve is an error.
std::vector<NormalizedFinding> merge_manual(const std::vector<NormalizedFinding>& auto_findings,
                                            const nlohmann::json& manual_doc,
                                            const Catalog& catalog);

}  // namespace scdebt
