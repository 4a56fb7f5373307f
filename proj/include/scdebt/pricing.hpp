#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scdebt/decimal.hpp"

namespace scdebt {

class PricingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A gas-price / ETH-USD pair used for fiat conversion. Quotes are always
/// injected into assessments explicitly; the library never fetches on its own.
struct PriceQuote {
    Decimal gas_price_gwei;
    Decimal eth_usd;
    std::chrono::system_clock::time_point timestamp{};
    std::string source = "static";  // "static" or the url it was fetched from
};

/// Builds a quote from explicit values. Negative inputs are rejected.
PriceQuote static_quote(const Decimal& gas_price_gwei, const Decimal& eth_usd);

/// Reads a {"gas_price_gwei": ..., "eth_usd": ...} document.
PriceQuote load_quote(const nlohmann::json& doc);
PriceQuote load_quote_file(const std::filesystem::path& path);

/// Configuration for one generic JSON-over-HTTP price source.
struct QuoteSource {
    std::string url;
    std::string gas_price_path = "gas_price_gwei";  // dotted path into the response
    std::string eth_usd_path = "eth_usd";
    int timeout_ms = 5000;
    int cache_ttl_s = 60;
    std::optional<PriceQuote> fallback;
};

/// Fetches a quote with caching and fallback. Network or parse failures fall
/// back to the configured static quote (with a warning appended); with no
/// fallback configured they throw. Never blocks longer than the timeout.
PriceQuote fetch_quote(const QuoteSource& source, std::vector<std::string>* warnings = nullptr);

/// Drops all cached fetch results (test hook).
void clear_quote_cache();

}  // namespace scdebt
