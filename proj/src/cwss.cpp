#include "scdebt/cwss.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "scdebt/bundled_data.hpp"

namespace scdebt::cwss {

namespace {

struct FactorMeta {
    Factor factor;
    std::string_view abbrev;
    std::string_view name;
};

constexpr std::array<FactorMeta, kFactorCount> kFactorMeta{{
    {Factor::TechnicalImpact, "TI", "technical_impact"},
    {Factor::AcquiredPrivilege, "AP", "acquired_privilege"},
    {Factor::AcquiredPrivilegeLayer, "AL", "acquired_privilege_layer"},
    {Factor::InternalControlEffectiveness, "IC", "internal_control_effectiveness"},
    {Factor::FindingConfidence, "FC", "finding_confidence"},
    {Factor::RequiredPrivilege, "RP", "required_privilege"},
    {Factor::RequiredPrivilegeLayer, "RL", "required_privilege_layer"},
    {Factor::AccessVector, "AV", "access_vector"},
    {Factor::AuthenticationStrength, "AS", "authentication_strength"},
    {Factor::LevelOfInteraction, "IN", "level_of_interaction"},
    {Factor::DeploymentScope, "SC", "deployment_scope"},
    {Factor::BusinessImpact, "BI", "business_impact"},
    {Factor::LikelihoodOfDiscovery, "DI", "likelihood_of_discovery"},
    {Factor::LikelihoodOfExploit, "EX", "likelihood_of_exploit"},
    {Factor::ExternalControlEffectiveness, "EC", "external_control_effectiveness"},
    {Factor::Prevalence, "P", "prevalence"},
}};

Decimal decimal_from_json(const nlohmann::json& node, const std::string& where) {
    try {
        if (node.is_string()) {
            return Decimal::parse(node.get<std::string>());
        }
        if (node.is_number()) {
            return Decimal::parse(node.dump());
        }
    } catch (const DecimalError& e) {
        throw CwssError(where + ": " + e.what());
    }
    throw CwssError(where + ": weight must be a number");
}

/// Per-category impact seeds for suggested vectors. Derived from what each
/// flaw class typically costs the contract and its operator when exploited.
struct ImpactSeed {
    DesignFlawCategory category;
    std::string_view technical;
    std::string_view business;
};

constexpr std::array<ImpactSeed, kCategoryCount> kImpactSeeds{{
    {DesignFlawCategory::FrontRunning, "M", "H"},
    {DesignFlawCategory::TimeManipulation, "M", "M"},
    {DesignFlawCategory::DenialOfService, "H", "M"},
    {DesignFlawCategory::ArithmeticIssues, "H", "H"},
    {DesignFlawCategory::BadRandomness, "M", "H"},
    {DesignFlawCategory::BrokenAccessControl, "H", "H"},
    {DesignFlawCategory::SensitiveDataExposure, "M", "M"},
    {DesignFlawCategory::KnownVulnerableComponents, "M", "M"},
    {DesignFlawCategory::ImproperInheritance, "H", "H"},
    {DesignFlawCategory::ModularityViolation, "L", "L"},
}};

}  // namespace

std::string_view factor_abbrev(Factor f) {
    return kFactorMeta[static_cast<int>(f)].abbrev;
}

std::string_view factor_name(Factor f) {
    return kFactorMeta[static_cast<int>(f)].name;
}

std::optional<Factor> factor_from_abbrev(std::string_view abbrev) {
    for (const auto& m : kFactorMeta) {
        if (m.abbrev == abbrev) return m.factor;
    }
    return std::nullopt;
}

std::optional<Factor> factor_from_name(std::string_view name) {
    for (const auto& m : kFactorMeta) {
        if (m.name == name) return m.factor;
    }
    return std::nullopt;
}

WeightTable WeightTable::load(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("factors") || !doc.at("factors").is_array()) {
        throw CwssError("weight table document must carry a 'factors' array");
    }
    WeightTable table;
    std::set<Factor> seen;
    for (const auto& entry : doc.at("factors")) {
        if (!entry.contains("name")) {
            throw CwssError("weight table factor entry missing 'name'");
        }
        std::string name = entry.at("name").get<std::string>();
        auto factor = factor_from_name(name);
        if (!factor) {
            throw CwssError("unknown factor '" + name + "' in weight table");
        }
        if (seen.contains(*factor)) {
            throw CwssError("duplicate factor '" + name + "' in weight table");
        }
        seen.insert(*factor);
        if (entry.contains("abbrev") &&
            entry.at("abbrev").get<std::string>() != factor_abbrev(*factor)) {
            throw CwssError("factor '" + name + "' abbreviation mismatch");
        }
        if (!entry.contains("codes") || !entry.at("codes").is_array() ||
            entry.at("codes").empty()) {
            throw CwssError("factor '" + name + "' lists no codes");
        }
        std::vector<CodeWeight> codes;
        std::set<std::string> code_names;
        for (const auto& code_entry : entry.at("codes")) {
            CodeWeight cw;
            cw.code = code_entry.at("code").get<std::string>();
            cw.label = code_entry.value("label", std::string());
            cw.weight = decimal_from_json(code_entry.at("weight"),
                                          "factor '" + name + "' code '" + cw.code + "'");
            if (cw.weight.is_negative() || cw.weight > Decimal::from_int(1)) {
                throw CwssError("factor '" + name + "' code '" + cw.code +
                                "' weight outside [0,1]");
            }
            if (!code_names.insert(cw.code).second) {
                throw CwssError("factor '" + name + "' duplicates code '" + cw.code + "'");
            }
            codes.push_back(std::move(cw));
        }
        table.codes_[static_cast<int>(*factor)] = std::move(codes);
    }
    for (const auto& m : kFactorMeta) {
        if (!seen.contains(m.factor)) {
            throw CwssError("weight table missing factor '" + std::string(m.name) + "'");
        }
    }
    return table;
}

WeightTable WeightTable::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw CwssError("cannot open weight table file: " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw CwssError(std::string("weight table is not valid JSON: ") + e.what());
    }
    return load(doc);
}

const WeightTable& WeightTable::bundled() {
    static const WeightTable table =
        WeightTable::load(nlohmann::json::parse(bundled::kCwssWeightsJson));
    return table;
}

std::optional<Decimal> WeightTable::weight(Factor f, std::string_view code) const {
    for (const auto& cw : codes_[static_cast<int>(f)]) {
        if (cw.code == code) return cw.weight;
    }
    return std::nullopt;
}

const std::vector<CodeWeight>& WeightTable::codes(Factor f) const {
    return codes_[static_cast<int>(f)];
}

CwssVector parse_vector(std::string_view text, const WeightTable& table) {
    CwssVector v;
    std::array<bool, kFactorCount> filled{};
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('/', pos);
        std::string_view pair =
            text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        if (pair.empty()) {
            throw CwssError("empty factor entry at position " + std::to_string(pos));
        }
        std::size_t colon = pair.find(':');
        if (colon == std::string_view::npos) {
            throw CwssError("expected FACTOR:CODE at position " + std::to_string(pos));
        }
        std::string_view abbrev = pair.substr(0, colon);
        std::string_view code = pair.substr(colon + 1);
        auto factor = factor_from_abbrev(abbrev);
        if (!factor) {
            throw CwssError("unknown factor '" + std::string(abbrev) + "' at position " +
                            std::to_string(pos));
        }
        if (filled[static_cast<int>(*factor)]) {
            throw CwssError("factor '" + std::string(abbrev) + "' appears twice");
        }
        if (!table.weight(*factor, code)) {
            throw CwssError("unknown code '" + std::string(code) + "' for factor '" +
                            std::string(abbrev) + "' at position " + std::to_string(pos));
        }
        v.set(*factor, std::string(code));
        filled[static_cast<int>(*factor)] = true;
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    for (int i = 0; i < kFactorCount; ++i) {
        if (!filled[i]) {
            throw CwssError("vector is missing factor '" +
                            std::string(factor_abbrev(static_cast<Factor>(i))) + "'");
        }
    }
    return v;
}

std::string render_vector(const CwssVector& v) {
    std::string out;
    for (int i = 0; i < kFactorCount; ++i) {
        if (i > 0) out.push_back('/');
        out += factor_abbrev(static_cast<Factor>(i));
        out.push_back(':');
        out += v.codes[i];
    }
    return out;
}

CwssScore score(const CwssVector& v, const WeightTable& table) {
    std::array<Decimal, kFactorCount> w;
    for (int i = 0; i < kFactorCount; ++i) {
        auto factor = static_cast<Factor>(i);
        auto weight = table.weight(factor, v.codes[i]);
        if (!weight) {
            throw CwssError("vector carries unknown code '" + v.codes[i] + "' for factor '" +
                            std::string(factor_abbrev(factor)) + "'");
        }
        w[i] = *weight;
    }
    auto wf = [&](Factor f) { return w[static_cast<int>(f)]; };
    const Decimal zero;

    // Base finding: [10*TI + 5*(AP+AL) + 5*FC] * f(TI) * IC * 4, in [0,100].
    Decimal base;
    if (wf(Factor::TechnicalImpact) != zero) {
        Decimal inner = Decimal::from_int(10) * wf(Factor::TechnicalImpact) +
                        Decimal::from_int(5) * (wf(Factor::AcquiredPrivilege) +
                                                wf(Factor::AcquiredPrivilegeLayer)) +
                        Decimal::from_int(5) * wf(Factor::FindingConfidence);
        base = inner * wf(Factor::InternalControlEffectiveness) * Decimal::from_int(4);
    }

    // Attack surface: [20*(RP+RL+AV) + 20*SC + 15*IN + 5*AS] / 100, in [0,1].
    Decimal surface_sum = Decimal::from_int(20) * (wf(Factor::RequiredPrivilege) +
                                                   wf(Factor::RequiredPrivilegeLayer) +
                                                   wf(Factor::AccessVector)) +
                          Decimal::from_int(20) * wf(Factor::DeploymentScope) +
                          Decimal::from_int(15) * wf(Factor::LevelOfInteraction) +
                          Decimal::from_int(5) * wf(Factor::AuthenticationStrength);
    Decimal attack_surface = surface_sum.shift_right(2);

    // Environmental: [10*BI + 3*DI + 4*EX + 3*P] * f(BI) * EC / 20, in [0,1].
    Decimal environmental;
    if (wf(Factor::BusinessImpact) != zero) {
        Decimal env_sum = Decimal::from_int(10) * wf(Factor::BusinessImpact) +
                          Decimal::from_int(3) * wf(Factor::LikelihoodOfDiscovery) +
                          Decimal::from_int(4) * wf(Factor::LikelihoodOfExploit) +
                          Decimal::from_int(3) * wf(Factor::Prevalence);
        // Dividing by 20 = multiplying by 5 and shifting two digits; exact.
        environmental =
            (env_sum * wf(Factor::ExternalControlEffectiveness) * Decimal::from_int(5))
                .shift_right(2);
    }

    CwssScore s;
    s.base_subscore = base;
    s.attack_surface_subscore = attack_surface;
    s.environmental_subscore = environmental;
    s.total = base * attack_surface * environmental;
    const Decimal hundred = Decimal::from_int(100);
    if (s.total > hundred) {
        s.total = hundred;
    }
    if (s.total.is_negative()) {
        s.total = Decimal();
    }
    s.vector_string = render_vector(v);
    return s;
}

CwssVector suggest_vector(const NormalizedFinding& finding, const ContractProfile& profile) {
    (void)profile;  // reserved; impact seeds are category-driven for now
    CwssVector v;
    for (int i = 0; i < kFactorCount; ++i) {
        v.codes[i] = "D";
    }
    for (const auto& seed : kImpactSeeds) {
        if (seed.category == finding.category) {
            v.set(Factor::TechnicalImpact, std::string(seed.technical));
            v.set(Factor::BusinessImpact, std::string(seed.business));
            break;
        }
    }
    if (finding.reporting_tools.size() >= 2) {
        // Independent tool agreement: treat the finding as proven and easy
        // to discover.
        v.set(Factor::FindingConfidence, "T");
        v.set(Factor::LikelihoodOfDiscovery, "H");
    } else {
        switch (finding.confidence) {
            case Confidence::High: v.set(Factor::FindingConfidence, "T"); break;
            case Confidence::Medium: v.set(Factor::FindingConfidence, "LT"); break;
            case Confidence::Low:
            case Confidence::Unknown: v.set(Factor::FindingConfidence, "D"); break;
        }
    }
    return v;
}

std::string bucket_impact_code(const std::array<int, 4>& subfactor_scores) {
    int sum = 0;
    for (int s : subfactor_scores) {
        if (s < 0 || s > 9) {
            throw CwssError("impact sub-factor scores must be within 0..9");
        }
        sum += s;
    }
    // Compare the sum against 4*boundary to avoid fractions.
    if (sum < 12) return "L";
    if (sum < 24) return "M";
    return "H";
}

}  // namespace scdebt::cwss
