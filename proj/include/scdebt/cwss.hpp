#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scdebt/decimal.hpp"
#include "scdebt/ingest.hpp"
#include "scdebt/profile.hpp"

namespace scdebt::cwss {

class CwssError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The 16 scoring factors of the targeted method, in canonical render order.
enum class Factor {
    TechnicalImpact = 0,
    AcquiredPrivilege,
    AcquiredPrivilegeLayer,
    InternalControlEffectiveness,
    FindingConfidence,
    RequiredPrivilege,
    RequiredPrivilegeLayer,
    AccessVector,
    AuthenticationStrength,
    LevelOfInteraction,
    DeploymentScope,
    BusinessImpact,
    LikelihoodOfDiscovery,
    LikelihoodOfExploit,
    ExternalControlEffectiveness,
    Prevalence,
};

inline constexpr int kFactorCount = 16;

std::string_view factor_abbrev(Factor f);
std::string_view factor_name(Factor f);
std::optional<Factor> factor_from_abbrev(std::string_view abbrev);
std::optional<Factor> factor_from_name(std::string_view name);

struct CodeWeight {
    std::string code;
    std::string label;
    Decimal weight;  // in [0,1]
};

/// Factor/code -> weight table, normally loaded from the bundled data file
/// (transcribed from the published scoring standard) but overridable.
class WeightTable {
public:
    static WeightTable load(const nlohmann::json& doc);
    static WeightTable load_file(const std::filesystem::path& path);
    static const WeightTable& bundled();

    std::optional<Decimal> weight(Factor f, std::string_view code) const;
    const std::vector<CodeWeight>& codes(Factor f) const;

private:
    std::array<std::vector<CodeWeight>, kFactorCount> codes_;
};

/// A full 16-factor vector; codes_[i] holds the code for Factor(i).
struct CwssVector {
    std::array<std::string, kFactorCount> codes;

    const std::string& code(Factor f) const { return codes[static_cast<int>(f)]; }
    void set(Factor f, std::string code_value) { codes[static_cast<int>(f)] = std::move(code_value); }
};

struct CwssScore {
    Decimal base_subscore;           // [0,100]
    Decimal attack_surface_subscore; // [0,1]
    Decimal environmental_subscore;  // [0,1]
    Decimal total;                   // [0,100]
    std::string vector_string;
    bool suggested = false;  // vector came from suggest_vector, not the user
};

/// Parses "TI:H/AP:A/.../P:NA". All 16 factors required, order-insensitive,
/// duplicates rejected; errors name the offending factor or position.
CwssVector parse_vector(std::string_view text, const WeightTable& table);

/// Canonical render: standard factor order, '/'-separated.
std::string render_vector(const CwssVector& v);

/// Targeted-method score: base(0-100) x attack-surface(0-1) x
/// environmental(0-1). A zero technical-impact weight zeroes the base
/// subscore; a zero business-impact weight zeroes the environmental one.
CwssScore score(const CwssVector& v, const WeightTable& table);

/// Seeds a starting vector from the finding's category and how many tools
/// agreed on it. Advisory only; user-supplied vectors always win.
CwssVector suggest_vector(const NormalizedFinding& finding, const ContractProfile& profile);

/// Averages four 0-9 sub-factor scores into an impact code ('L'/'M'/'H'),
/// the worksheet style used to pick technical/business impact levels.
/// Buckets: average < 3 -> L, < 6 -> M, else H.
std::string bucket_impact_code(const std::array<int, 4>& subfactor_scores);

}  // namespace scdebt::cwss
