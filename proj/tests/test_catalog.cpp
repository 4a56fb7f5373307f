#include <doctest.h>

#include <algorithm>
#include <set>

#include "scdebt/catalog.hpp"

using namespace scdebt;

namespace {

std::vector<std::string> ids(const std::vector<const DesignVulnerability*>& vulns) {
    std::vector<std::string> out;
    for (const auto* v : vulns) out.push_back(v->id);
    return out;
}

}  // namespace

TEST_CASE("bundled catalog covers the full taxonomy") {
    const Catalog& cat = Catalog::bundled();
    CHECK(cat.categories().size() == kCategoryCount);
    CHECK(cat.vulnerabilities().size() >= 20);
    for (auto c : all_categories()) {
        CHECK(!cat.by_category(c).empty());
    }
    int dasp = 0, owasp = 0, oo = 0;
    for (const auto& info : cat.categories()) {
        if (info.source == "DASP") ++dasp;
        if (info.source == "OWASP-10") ++owasp;
        if (info.source == "OO-design-flaws") ++oo;
    }
    CHECK(dasp == 6);
    CHECK(owasp == 2);
    CHECK(oo == 2);
}

TEST_CASE("duplicate vulnerability ids are rejected with the offending id") {
    nlohmann::json doc = {
        {"vulnerabilities",
         {{{"id", "costly-loop"},
           {"name", "Costly loop"},
           {"category", "denial-of-service"},
           {"cwe_ids", {400}}},
          {{"id", "costly-loop"},
           {"name", "Costly loop again"},
           {"category", "denial-of-service"},
           {"cwe_ids", {400}}}}},
    };
    CHECK_THROWS_WITH_AS(Catalog::load(doc), doctest::Contains("costly-loop"), CatalogError);
}

TEST_CASE("empty document loads as an empty catalog") {
    Catalog cat = Catalog::load(nlohmann::json::object());
    CHECK(cat.vulnerabilities().empty());
    CHECK(cat.lookup("anything") == nullptr);
    CHECK(cat.by_cwe(400).empty());
}

TEST_CASE("lookup by slug") {
    const Catalog& cat = Catalog::bundled();
    const auto* sd = cat.lookup("reachable-selfdestruct");
    REQUIRE(sd != nullptr);
    CHECK(std::count(sd->cwe_ids.begin(), sd->cwe_ids.end(), 28) == 1);
    CHECK(sd->category == DesignFlawCategory::DenialOfService);

    const auto* loop = cat.lookup("costly-loop");
    REQUIRE(loop != nullptr);
    CHECK(std::count(loop->cwe_ids.begin(), loop->cwe_ids.end(), 400) == 1);

    CHECK(cat.lookup("no-such-slug") == nullptr);
}

TEST_CASE("by_category returns all entries in stable slug order") {
    const Catalog& cat = Catalog::bundled();
    auto dos = ids(cat.by_category(DesignFlawCategory::DenialOfService));
    for (const char* expected :
         {"exception-handling-problem", "non-validated-arguments", "dos-by-external-call",
          "gas-upper-bound", "costly-loop", "reachable-selfdestruct"}) {
        CHECK(std::count(dos.begin(), dos.end(), expected) == 1);
    }
    CHECK(std::is_sorted(dos.begin(), dos.end()));

    auto tm = ids(cat.by_category(DesignFlawCategory::TimeManipulation));
    CHECK(std::count(tm.begin(), tm.end(), "timestamp-dependence") == 1);
}

TEST_CASE("by_cwe") {
    const Catalog& cat = Catalog::bundled();
    auto w703 = ids(cat.by_cwe(703));
    CHECK(w703 == std::vector<std::string>{"dos-by-external-call", "exception-handling-problem"});
    auto w400 = ids(cat.by_cwe(400));
    CHECK(w400 == std::vector<std::string>{"costly-loop", "gas-upper-bound"});
    CHECK(cat.by_cwe(99999).empty());
}

TEST_CASE("alias resolution") {
    const Catalog& cat = Catalog::bundled();
    CHECK(cat.resolve_alias("slither", "suicidal") == "reachable-selfdestruct");
    // Reentrancy detectors resolve to the external-call entry.
    CHECK(cat.resolve_alias("mythril", "SWC-107") == "dos-by-external-call");
    CHECK(!cat.resolve_alias("unknown-tool", "x").has_value());
}

TEST_CASE("the bundled denial-of-service category carries exactly the six table rows") {
    const Catalog& cat = Catalog::bundled();
    auto dos = ids(cat.by_category(DesignFlawCategory::DenialOfService));
    CHECK(dos == std::vector<std::string>{"costly-loop", "dos-by-external-call",
                                          "exception-handling-problem", "gas-upper-bound",
                                          "non-validated-arguments", "reachable-selfdestruct"});
}

TEST_CASE("category containment properties") {
    const Catalog& cat = Catalog::bundled();
    for (const auto& v : cat.vulnerabilities()) {
        auto primary = ids(cat.by_category(v.category));
        CHECK(std::count(primary.begin(), primary.end(), v.id) == 1);
        for (auto sc : v.secondary_categories) {
            auto secondary = ids(cat.by_category(sc));
            CHECK(std::count(secondary.begin(), secondary.end(), v.id) == 1);
        }
        for (int w : v.cwe_ids) {
            auto by_w = ids(cat.by_cwe(w));
            CHECK(std::count(by_w.begin(), by_w.end(), v.id) == 1);
        }
    }
}

TEST_CASE("every alias resolves at load time") {
    const Catalog& cat = Catalog::bundled();
    for (const auto& alias : cat.aliases()) {
        CHECK(cat.lookup(alias.vulnerability_id) != nullptr);
    }
    nlohmann::json doc = {
        {"aliases",
         {{{"tool", "slither"}, {"tool_code", "x"}, {"vulnerability_id", "dangling"}}}},
    };
    CHECK_THROWS_WITH_AS(Catalog::load(doc), doctest::Contains("dangling"), CatalogError);
}

TEST_CASE("loading is deterministic") {
    nlohmann::json doc = {
        {"vulnerabilities",
         {{{"id", "a-vuln"},
           {"name", "A"},
           {"category", "front-running"},
           {"cwe_ids", {362}}}}},
    };
    Catalog c1 = Catalog::load(doc);
    Catalog c2 = Catalog::load(doc);
    CHECK(c1.vulnerabilities().size() == c2.vulnerabilities().size());
    CHECK(c1.vulnerabilities()[0].id == c2.vulnerabilities()[0].id);
}

TEST_CASE("schema violations carry context") {
    CHECK_THROWS_AS(Catalog::load(nlohmann::json{{"bogus", 1}}), CatalogError);
    nlohmann::json bad_field = {
        {"vulnerabilities",
         {{{"id", "x-y"},
           {"name", "X"},
           {"category", "front-running"},
           {"cwe_ids", {362}},
           {"surprise", true}}}},
    };
    CHECK_THROWS_WITH_AS(Catalog::load(bad_field), doctest::Contains("surprise"), CatalogError);
    nlohmann::json no_cwe = {
        {"vulnerabilities",
         {{{"id", "x-y"}, {"name", "X"}, {"category", "front-running"}, {"cwe_ids", nlohmann::json::array()}}}},
    };
    CHECK_THROWS_AS(Catalog::load(no_cwe), CatalogError);
    nlohmann::json bad_slug = {
        {"vulnerabilities",
         {{{"id", "Not A Slug"}, {"name", "X"}, {"category", "front-running"}, {"cwe_ids", {1}}}}},
    };
    CHECK_THROWS_AS(Catalog::load(bad_slug), CatalogError);
    nlohmann::json wrong_source = {
        {"categories", {{{"name", "front-running"}, {"source", "OWASP-10"}}}},
    };
    CHECK_THROWS_AS(Catalog::load(wrong_source), CatalogError);
}

TEST_CASE("table rows that flag the known CWE discrepancy") {
    const Catalog& cat = Catalog::bundled();
    const auto* sd = cat.lookup("reachable-selfdestruct");
    REQUIRE(sd != nullptr);
    CHECK(sd->notes.find("CWE-284") != std::string::npos);
}
