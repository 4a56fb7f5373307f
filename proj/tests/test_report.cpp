#include <doctest.h>

#include "scdebt/report.hpp"

using namespace scdebt;

namespace {

const char* kWorkedVector =
    "TI:H/AP:A/AL:A/IC:N/FC:LT/RP:N/RL:A/AV:I/AS:M/IN:T/SC:A/BI:H/DI:H/EX:H/EC:L/P:W";

DebtAssessment worked_assessment() {
    AssessInputs inputs;
    inputs.portfolio_name = "worked";

    PortfolioEntry ceo;
    ceo.name = "CEOThrone";
    ceo.activity_category = "games";
    ceo.lifespan_days = 600;
    ceo.deploy_gas_override = 892200;
    ceo.vectors["variable-shadowing"] = kWorkedVector;
    inputs.portfolio.push_back(std::move(ceo));

    PortfolioEntry filler;
    filler.name = "BigOne";
    filler.activity_category = "storage";
    filler.lifespan_days = 100;
    filler.deploy_gas_override = 1586270;
    inputs.portfolio.push_back(std::move(filler));

    Finding shadow;
    shadow.tool = "slither";
    shadow.tool_code = "shadowing-state";
    shadow.contract_name = "CEOThrone";
    shadow.file = "CEOThrone.sol";
    shadow.line_start = 14;
    shadow.line_end = 16;
    inputs.findings.push_back(shadow);

    Finding big;
    big.tool = "slither";
    big.tool_code = "suicidal";
    big.contract_name = "BigOne";
    big.file = "BigOne.sol";
    big.line_start = 1;
    big.line_end = 2;
    inputs.findings.push_back(big);

    Finding stray;
    stray.tool = "oddball";
    stray.tool_code = "whatever";
    stray.contract_name = "CEOThrone";
    stray.file = "CEOThrone.sol";
    stray.line_start = 1;
    stray.line_end = 1;
    inputs.findings.push_back(stray);

    inputs.quote = static_quote(Decimal::parse("126"), Decimal::parse("500"));
    return assess(inputs, Catalog::bundled(), cwss::WeightTable::bundled(),
                  AssessConfig::defaults());
}

}  // namespace

TEST_CASE("render_json is canonical and carries the worked values") {
    DebtAssessment a = worked_assessment();
    std::string text = render_json(a);
    CHECK(render_json(a) == text);  // byte-stable

    auto doc = nlohmann::json::parse(text);
    bool found = false;
    for (const auto& item : doc.at("items")) {
        if (item.at("contract") == "CEOThrone") {
            found = true;
            CHECK(item.at("interest") == "228.9");
            CHECK(item.at("severity") == "High");  // cost Medium x value High
            CHECK(item.at("cwss").at("total") == "76.3");
            CHECK(item.at("cwss").at("vector_source") == "user");
            CHECK(item.at("principal").at("total_gas") == 897200);
            CHECK(item.at("principal").at("fee_usd") == "56.52");
        }
    }
    CHECK(found);
    CHECK(doc.at("unmapped").size() == 1);

    // Canonical form sorts keys.
    std::vector<std::string> keys;
    for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
    CHECK(std::is_sorted(keys.begin(), keys.end()));
}

TEST_CASE("render_json of an empty assessment is a valid document") {
    DebtAssessment empty;
    empty.portfolio_name = "empty";
    auto doc = nlohmann::json::parse(render_json(empty));
    CHECK(doc.at("items").is_array());
    CHECK(doc.at("items").empty());
}

TEST_CASE("render_markdown carries the derivation line and sections") {
    DebtAssessment a = worked_assessment();
    std::string md = render_markdown(a);
    CHECK(md.find("76.3 × 6 × 0.5 = 228.9") != std::string::npos);
    CHECK(md.find("## CEOThrone") != std::string::npos);
    CHECK(md.find("## Unmapped findings") != std::string::npos);
    CHECK(md.find("oddball") != std::string::npos);
    CHECK(md.find("State Variable Shadowing") == std::string::npos);  // tables use slugs
    CHECK(md.find("variable-shadowing") != std::string::npos);

    // Severity sorts the summary: the CEOThrone item (High) precedes the
    // BigOne item (Medium at most).
    auto high_pos = md.find("| CEOThrone | variable-shadowing | High");
    auto other_pos = md.find("| BigOne |");
    REQUIRE(high_pos != std::string::npos);
    REQUIRE(other_pos != std::string::npos);
    CHECK(high_pos < other_pos);
}

TEST_CASE("render_scatter_csv emits one row per contract") {
    DebtAssessment a = worked_assessment();
    std::string csv = render_scatter_csv(a);
    CHECK(csv.rfind("contract,cost_usd,interest,severity\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 contracts

    DebtAssessment empty;
    CHECK(render_scatter_csv(empty) == "contract,cost_usd,interest,severity\n");

    DebtAssessment ten;
    for (int i = 0; i < 10; ++i) {
        ScatterPoint p;
        p.contract = "c" + std::to_string(i);
        p.cost_usd = Decimal::parse("10.5");
        p.interest = Decimal::parse("123.45");
        ten.scatter.push_back(std::move(p));
    }
    std::string ten_csv = render_scatter_csv(ten);
    CHECK(std::count(ten_csv.begin(), ten_csv.end(), '\n') == 11);
    CHECK(ten_csv.find("c0,10.50,123.5,Low\n") != std::string::npos);
}

TEST_CASE("renderers share one assessment and do not recompute") {
    DebtAssessment a = worked_assessment();
    // Mutate a rendered-from field: every renderer must reflect it verbatim.
    a.items[0].interest = Decimal::parse("1.23");
    CHECK(render_json(a).find("1.2") != std::string::npos);
    CHECK(render_markdown(a).find("1.2") != std::string::npos);
}
