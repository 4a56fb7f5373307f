#include <doctest.h>

#include <atomic>
#include <thread>

#include <httplib.h>

#include "scdebt/pricing.hpp"

using namespace scdebt;

namespace {

struct TestServer {
    httplib::Server server;
    std::thread thread;
    int port = 0;
    std::atomic<int> hits{0};

    explicit TestServer(std::string body, int status = 200) {
        server.Get("/price", [this, body = std::move(body), status](const httplib::Request&,
                                                                    httplib::Response& res) {
            ++hits;
            res.status = status;
            res.set_content(body, "application/json");
        });
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }

    ~TestServer() {
        server.stop();
        thread.join();
    }

    std::string url() const { return "http://127.0.0.1:" + std::to_string(port) + "/price"; }
};

}  // namespace

TEST_CASE("static quotes validate their inputs") {
    PriceQuote q = static_quote(Decimal::parse("126"), Decimal::parse("500"));
    CHECK(q.gas_price_gwei.to_string() == "126");
    CHECK(q.eth_usd.to_string() == "500");
    CHECK(q.source == "static");

    PriceQuote zero = static_quote(Decimal::parse("0"), Decimal::parse("0"));
    CHECK(zero.gas_price_gwei.is_zero());

    CHECK_THROWS_AS(static_quote(Decimal::parse("-1"), Decimal::parse("500")), PricingError);
}

TEST_CASE("quote documents") {
    PriceQuote q = load_quote(nlohmann::json{{"gas_price_gwei", 126}, {"eth_usd", 500}});
    CHECK(q.gas_price_gwei.to_string() == "126");
    CHECK_THROWS_AS(load_quote(nlohmann::json{{"gas_price_gwei", 126}}), PricingError);
    CHECK_THROWS_AS(load_quote(nlohmann::json{{"gas_price_gwei", "1e3"}, {"eth_usd", 1}}),
                    scdebt::DecimalError);
}

TEST_CASE("fetch_quote reads configured fields from a JSON endpoint") {
    clear_quote_cache();
    TestServer server(R"({"fast": 126, "usd": 500})");
    QuoteSource source;
    source.url = server.url();
    source.gas_price_path = "fast";
    source.eth_usd_path = "usd";
    PriceQuote q = fetch_quote(source);
    CHECK(q.gas_price_gwei.to_string() == "126");
    CHECK(q.eth_usd.to_string() == "500");
    CHECK(q.source == server.url());
}

TEST_CASE("fetch_quote walks dotted paths") {
    clear_quote_cache();
    TestServer server(R"({"data": {"gas": {"standard": "88.5"}, "eth": {"usd": 1066}}})");
    QuoteSource source;
    source.url = server.url();
    source.gas_price_path = "data.gas.standard";
    source.eth_usd_path = "data.eth.usd";
    PriceQuote q = fetch_quote(source);
    CHECK(q.gas_price_gwei.to_string() == "88.5");
    CHECK(q.eth_usd.to_string() == "1066");
}

TEST_CASE("unreachable endpoints fall back to the static quote with a warning") {
    clear_quote_cache();
    QuoteSource source;
    source.url = "http://127.0.0.1:1/price";  // nothing listens here
    source.timeout_ms = 200;
    source.fallback = static_quote(Decimal::parse("126"), Decimal::parse("500"));
    std::vector<std::string> warnings;
    PriceQuote q = fetch_quote(source, &warnings);
    CHECK(q.gas_price_gwei.to_string() == "126");
    CHECK(q.source == "static");
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("fallback") != std::string::npos);
}

TEST_CASE("malformed responses fall back or fail loudly") {
    clear_quote_cache();
    TestServer bad(R"(not json)");
    QuoteSource source;
    source.url = bad.url();
    source.gas_price_path = "fast";
    source.eth_usd_path = "usd";

    QuoteSource with_fallback = source;
    with_fallback.fallback = static_quote(Decimal::parse("50"), Decimal::parse("400"));
    std::vector<std::string> warnings;
    PriceQuote q = fetch_quote(with_fallback, &warnings);
    CHECK(q.gas_price_gwei.to_string() == "50");
    CHECK(!warnings.empty());

    clear_quote_cache();
    CHECK_THROWS_WITH_AS(fetch_quote(source), doctest::Contains("--quote"), PricingError);

    clear_quote_cache();
    TestServer missing(R"({"other": 1})");
    source.url = missing.url();
    CHECK_THROWS_AS(fetch_quote(source), PricingError);
}

TEST_CASE("cache keeps fetches within the TTL off the network") {
    clear_quote_cache();
    TestServer server(R"({"fast": 126, "usd": 500})");
    QuoteSource source;
    source.url = server.url();
    source.gas_price_path = "fast";
    source.eth_usd_path = "usd";
    source.cache_ttl_s = 60;
    (void)fetch_quote(source);
    (void)fetch_quote(source);
    (void)fetch_quote(source);
    CHECK(server.hits.load() == 1);

    clear_quote_cache();
    (void)fetch_quote(source);
    CHECK(server.hits.load() == 2);
}
