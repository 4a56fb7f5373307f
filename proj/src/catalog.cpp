#include "scdebt/catalog.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>

#include "scdebt/bundled_data.hpp"

namespace scdebt {

namespace {

struct CategoryMeta {
    DesignFlawCategory cat;
    std::string_view slug;
    std::string_view display;
    std::string_view source;
};

constexpr std::array<CategoryMeta, kCategoryCount> kCategoryMeta{{
    {DesignFlawCategory::FrontRunning, "front-running", "Front-Running", "DASP"},
    {DesignFlawCategory::TimeManipulation, "time-manipulation", "Time Manipulation", "DASP"},
    {DesignFlawCategory::DenialOfService, "denial-of-service", "Denial of Service", "DASP"},
    {DesignFlawCategory::ArithmeticIssues, "arithmetic-issues", "Arithmetic Issues", "DASP"},
    {DesignFlawCategory::BadRandomness, "bad-randomness", "Bad Randomness", "DASP"},
    {DesignFlawCategory::BrokenAccessControl, "broken-access-control", "Broken Access Control",
     "DASP"},
    {DesignFlawCategory::SensitiveDataExposure, "sensitive-data-exposure",
     "Sensitive Data Exposure", "OWASP-10"},
    {DesignFlawCategory::KnownVulnerableComponents, "known-vulnerable-components",
     "Using Components with Known Vulnerabilities", "OWASP-10"},
    {DesignFlawCategory::ImproperInheritance, "improper-inheritance", "Improper Inheritance",
     "OO-design-flaws"},
    {DesignFlawCategory::ModularityViolation, "modularity-violation", "Modularity Violation",
     "OO-design-flaws"},
}};

const CategoryMeta& meta_for(DesignFlawCategory cat) {
    for (const auto& m : kCategoryMeta) {
        if (m.cat == cat) return m;
    }
    throw CatalogError("unknown category enum value");
}

bool is_slug(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!(std::islower(static_cast<unsigned char>(c)) ||
              std::isdigit(static_cast<unsigned char>(c)) || c == '-')) {
            return false;
        }
    }
    return true;
}

void reject_unknown_fields(const nlohmann::json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.contains(it.key())) {
            throw CatalogError("unknown field '" + it.key() + "' in " + where);
        }
    }
}

DesignFlawCategory parse_category(const nlohmann::json& value, const std::string& where) {
    if (!value.is_string()) {
        throw CatalogError("category must be a string in " + where);
    }
    auto cat = category_from_slug(value.get<std::string>());
    if (!cat) {
        throw CatalogError("unknown category '" + value.get<std::string>() + "' in " + where);
    }
    return *cat;
}

}  // namespace

std::string_view category_slug(DesignFlawCategory cat) { return meta_for(cat).slug; }
std::string_view category_display_name(DesignFlawCategory cat) { return meta_for(cat).display; }
std::string_view category_source(DesignFlawCategory cat) { return meta_for(cat).source; }

std::optional<DesignFlawCategory> category_from_slug(std::string_view slug) {
    for (const auto& m : kCategoryMeta) {
        if (m.slug == slug) return m.cat;
    }
    return std::nullopt;
}

const std::vector<DesignFlawCategory>& all_categories() {
    static const std::vector<DesignFlawCategory> cats = [] {
        std::vector<DesignFlawCategory> v;
        for (const auto& m : kCategoryMeta) v.push_back(m.cat);
        return v;
    }();
    return cats;
}

bool DesignVulnerability::has_category(DesignFlawCategory cat) const {
    if (category == cat) return true;
    return std::find(secondary_categories.begin(), secondary_categories.end(), cat) !=
           secondary_categories.end();
}

Catalog Catalog::load(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw CatalogError("catalog document must be a JSON object");
    }
    reject_unknown_fields(doc, {"categories", "vulnerabilities", "aliases"}, "catalog document");

    Catalog cat;

    if (doc.contains("categories")) {
        const auto& arr = doc.at("categories");
        if (!arr.is_array()) throw CatalogError("'categories' must be an array");
        std::set<DesignFlawCategory> seen;
        for (const auto& entry : arr) {
            reject_unknown_fields(entry, {"name", "source", "description"}, "category entry");
            if (!entry.contains("name")) throw CatalogError("category entry missing 'name'");
            auto c = parse_category(entry.at("name"), "category entry");
            if (seen.contains(c)) {
                throw CatalogError("duplicate category '" +
                                   std::string(category_slug(c)) + "'");
            }
            seen.insert(c);
            CategoryInfo info;
            info.category = c;
            info.source = entry.value("source", std::string());
            info.description = entry.value("description", std::string());
            if (!info.source.empty() && info.source != category_source(c)) {
                throw CatalogError("category '" + std::string(category_slug(c)) +
                                   "' carries source '" + info.source + "', expected '" +
                                   std::string(category_source(c)) + "'");
            }
            cat.categories_.push_back(std::move(info));
        }
        if (!cat.categories_.empty() && cat.categories_.size() != kCategoryCount) {
            throw CatalogError("catalog must list all ten categories or none");
        }
    }

    if (doc.contains("vulnerabilities")) {
        const auto& arr = doc.at("vulnerabilities");
        if (!arr.is_array()) throw CatalogError("'vulnerabilities' must be an array");
        for (const auto& entry : arr) {
            reject_unknown_fields(entry,
                                  {"id", "name", "description", "category",
                                   "secondary_categories", "cwe_ids", "swc_id",
                                   "remediation_note", "notes"},
                                  "vulnerability entry");
            DesignVulnerability v;
            if (!entry.contains("id") || !entry.at("id").is_string()) {
                throw CatalogError("vulnerability entry missing string 'id'");
            }
            v.id = entry.at("id").get<std::string>();
            if (!is_slug(v.id)) {
                throw CatalogError("vulnerability id '" + v.id +
                                   "' is not a lowercase hyphen slug");
            }
            if (cat.by_id_.contains(v.id)) {
                throw CatalogError("duplicate vulnerability id '" + v.id + "'");
            }
            if (!entry.contains("name")) {
                throw CatalogError("vulnerability '" + v.id + "' missing 'name'");
            }
            v.name = entry.at("name").get<std::string>();
            v.description = entry.value("description", std::string());
            if (!entry.contains("category")) {
                throw CatalogError("vulnerability '" + v.id + "' missing 'category'");
            }
            v.category = parse_category(entry.at("category"), "vulnerability '" + v.id + "'");
            if (entry.contains("secondary_categories")) {
                for (const auto& sc : entry.at("secondary_categories")) {
                    v.secondary_categories.push_back(
                        parse_category(sc, "vulnerability '" + v.id + "'"));
                }
            }
            if (!entry.contains("cwe_ids") || !entry.at("cwe_ids").is_array() ||
                entry.at("cwe_ids").empty()) {
                throw CatalogError("vulnerability '" + v.id +
                                   "' must list at least one CWE id");
            }
            for (const auto& w : entry.at("cwe_ids")) {
                if (!w.is_number_integer() || w.get<int>() <= 0) {
                    throw CatalogError("vulnerability '" + v.id +
                                       "' has a non-positive CWE id");
                }
                v.cwe_ids.push_back(w.get<int>());
            }
            if (entry.contains("swc_id") && !entry.at("swc_id").is_null()) {
                int swc = entry.at("swc_id").get<int>();
                if (swc <= 0) {
                    throw CatalogError("vulnerability '" + v.id + "' has a non-positive SWC id");
                }
                v.swc_id = swc;
            }
            v.remediation_note = entry.value("remediation_note", std::string());
            v.notes = entry.value("notes", std::string());
            cat.by_id_.emplace(v.id, cat.vulns_.size());
            cat.vulns_.push_back(std::move(v));
        }
    }

    if (doc.contains("aliases")) {
        const auto& arr = doc.at("aliases");
        if (!arr.is_array()) throw CatalogError("'aliases' must be an array");
        for (const auto& entry : arr) {
            reject_unknown_fields(entry, {"tool", "tool_code", "vulnerability_id"},
                                  "alias entry");
            ToolAlias alias;
            alias.tool = entry.at("tool").get<std::string>();
            alias.tool_code = entry.at("tool_code").get<std::string>();
            alias.vulnerability_id = entry.at("vulnerability_id").get<std::string>();
            if (!cat.by_id_.contains(alias.vulnerability_id)) {
                throw CatalogError("alias (" + alias.tool + ", " + alias.tool_code +
                                   ") points at unknown vulnerability '" +
                                   alias.vulnerability_id + "'");
            }
            auto key = std::make_pair(alias.tool, alias.tool_code);
            if (cat.alias_index_.contains(key)) {
                throw CatalogError("duplicate alias (" + alias.tool + ", " + alias.tool_code +
                                   ")");
            }
            cat.alias_index_.emplace(std::move(key), alias.vulnerability_id);
            cat.aliases_.push_back(std::move(alias));
        }
    }

    return cat;
}

Catalog Catalog::load_text(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw CatalogError(std::string("catalog is not valid JSON: ") + e.what());
    }
    return load(doc);
}

Catalog Catalog::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw CatalogError("cannot open catalog file: " + path.string());
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_text(text);
}

const Catalog& Catalog::bundled() {
    static const Catalog cat = Catalog::load_text(bundled::kCatalogJson);
    return cat;
}

const DesignVulnerability* Catalog::lookup(std::string_view id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return nullptr;
    return &vulns_[it->second];
}

std::vector<const DesignVulnerability*> Catalog::by_category(DesignFlawCategory cat) const {
    std::vector<const DesignVulnerability*> out;
    for (const auto& v : vulns_) {
        if (v.has_category(cat)) out.push_back(&v);
    }
    std::sort(out.begin(), out.end(),
              [](const auto* a, const auto* b) { return a->id < b->id; });
    return out;
}

std::vector<const DesignVulnerability*> Catalog::by_cwe(int cwe_id) const {
    std::vector<const DesignVulnerability*> out;
    for (const auto& v : vulns_) {
        if (std::find(v.cwe_ids.begin(), v.cwe_ids.end(), cwe_id) != v.cwe_ids.end()) {
            out.push_back(&v);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto* a, const auto* b) { return a->id < b->id; });
    return out;
}

std::optional<std::string> Catalog::resolve_alias(std::string_view tool,
                                                  std::string_view tool_code) const {
    auto it = alias_index_.find(std::make_pair(std::string(tool), std::string(tool_code)));
    if (it == alias_index_.end()) return std::nullopt;
    return it->second;
}

}  // namespace scdebt
