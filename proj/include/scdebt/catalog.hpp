#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace scdebt {

class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The ten impact-based design-flaw categories. Six come from the DASP
/// taxonomy, two from the OWASP Top 10 and two from object-oriented design
/// flaw catalogs.
enum class DesignFlawCategory {
    FrontRunning,
    TimeManipulation,
    DenialOfService,
    ArithmeticIssues,
    BadRandomness,
    BrokenAccessControl,
    SensitiveDataExposure,
    KnownVulnerableComponents,
    ImproperInheritance,
    ModularityViolation,
};

inline constexpr int kCategoryCount = 10;

std::string_view category_slug(DesignFlawCategory cat);
std::string_view category_display_name(DesignFlawCategory cat);
/// Taxonomy the category comes from: "DASP", "OWASP-10" or "OO-design-flaws".
std::string_view category_source(DesignFlawCategory cat);
std::optional<DesignFlawCategory> category_from_slug(std::string_view slug);
const std::vector<DesignFlawCategory>& all_categories();

/// One catalog entry: a named design vulnerability, its CWE mapping and its
/// primary (plus optional secondary) design-flaw categories.
struct DesignVulnerability {
    std::string id;  // lowercase slug, unique catalog key
    std::string name;
    std::string description;
    DesignFlawCategory category = DesignFlawCategory::DenialOfService;
    std::vector<DesignFlawCategory> secondary_categories;
    std::vector<int> cwe_ids;  // non-empty
    std::optional<int> swc_id;
    std::string remediation_note;
    std::string notes;  // records known discrepancies in the source mapping

    bool has_category(DesignFlawCategory cat) const;
};

/// Maps a scanner's native detector id onto a catalog slug.
struct ToolAlias {
    std::string tool;
    std::string tool_code;
    std::string vulnerability_id;
};

/// Category metadata as carried by the catalog document.
struct CategoryInfo {
    DesignFlawCategory category;
    std::string source;
    std::string description;
};

/// Immutable registry of design vulnerabilities, CWE mappings and scanner
/// aliases. Safe to share across threads after load.
class Catalog {
public:
    static Catalog load(const nlohmann::json& doc);
    static Catalog load_text(std::string_view json_text);
    static Catalog load_file(const std::filesystem::path& path);

    /// The catalog bundled with the library (also shipped as a data file so
    /// it can be edited and passed back in without a rebuild).
    static const Catalog& bundled();

    const DesignVulnerability* lookup(std::string_view id) const;
    std::vector<const DesignVulnerability*> by_category(DesignFlawCategory cat) const;
    std::vector<const DesignVulnerability*> by_cwe(int cwe_id) const;
    std::optional<std::string> resolve_alias(std::string_view tool,
                                             std::string_view tool_code) const;

    const std::vector<DesignVulnerability>& vulnerabilities() const { return vulns_; }
    const std::vector<CategoryInfo>& categories() const { return categories_; }
    const std::vector<ToolAlias>& aliases() const { return aliases_; }

private:
    std::vector<DesignVulnerability> vulns_;
    std::vector<CategoryInfo> categories_;
    std::vector<ToolAlias> aliases_;
    std::map<std::string, std::size_t, std::less<>> by_id_;
    std::map<std::pair<std::string, std::string>, std::string> alias_index_;
};

}  // namespace scdebt
