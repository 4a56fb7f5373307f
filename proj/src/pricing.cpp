#include "scdebt/pricing.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <httplib.h>

namespace scdebt {

namespace {

Decimal non_negative_decimal(const Decimal& v, const char* what) {
    if (v.is_negative()) {
        throw PricingError(std::string(what) + " must not be negative");
    }
    return v;
}

/// JSON numbers go through their shortest text form so 126 or 0.85 stay
/// exact; exponent-form values are rejected by Decimal::parse.
Decimal decimal_from_json(const nlohmann::json& node, const char* what) {
    if (node.is_string()) {
        return Decimal::parse(node.get<std::string>());
    }
    if (node.is_number()) {
        return Decimal::parse(node.dump());
    }
    throw PricingError(std::string(what) + " must be a number or numeric string");
}

const nlohmann::json* walk_path(const nlohmann::json& doc, const std::string& dotted) {
    const nlohmann::json* node = &doc;
    std::istringstream parts(dotted);
    std::string key;
    while (std::getline(parts, key, '.')) {
        if (node->is_object() && node->contains(key)) {
            node = &node->at(key);
        } else if (node->is_array() && !key.empty() &&
                   key.find_first_not_of("0123456789") == std::string::npos) {
            std::size_t idx = std::stoul(key);
            if (idx >= node->size()) return nullptr;
            node = &(*node)[idx];
        } else {
            return nullptr;
        }
    }
    return node;
}

struct CacheEntry {
    PriceQuote quote;
    std::chrono::steady_clock::time_point expires;
};

std::mutex g_cache_mutex;
std::map<std::string, CacheEntry> g_cache;

struct SplitUrl {
    std::string host_port;  // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw PricingError("price url must include a scheme: " + url);
    }
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return {url, "/"};
    }
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

PriceQuote static_quote(const Decimal& gas_price_gwei, const Decimal& eth_usd) {
    PriceQuote q;
    q.gas_price_gwei = non_negative_decimal(gas_price_gwei, "gas price");
    q.eth_usd = non_negative_decimal(eth_usd, "ETH/USD price");
    q.timestamp = std::chrono::system_clock::now();
    q.source = "static";
    return q;
}

PriceQuote load_quote(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("gas_price_gwei") || !doc.contains("eth_usd")) {
        throw PricingError("quote document needs 'gas_price_gwei' and 'eth_usd'");
    }
    return static_quote(decimal_from_json(doc.at("gas_price_gwei"), "gas_price_gwei"),
                        decimal_from_json(doc.at("eth_usd"), "eth_usd"));
}

PriceQuote load_quote_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw PricingError("cannot open quote file: " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw PricingError(std::string("quote file is not valid JSON: ") + e.what());
    }
    return load_quote(doc);
}

void clear_quote_cache() {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_cache.clear();
}

PriceQuote fetch_quote(const QuoteSource& source, std::vector<std::string>* warnings) {
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(source.url);
        if (it != g_cache.end() && std::chrono::steady_clock::now() < it->second.expires) {
            return it->second.quote;
        }
    }

    auto fail = [&](const std::string& why) -> PriceQuote {
        if (source.fallback) {
            if (warnings) {
                warnings->push_back("price fetch from " + source.url + " failed (" + why +
                                    "); using static fallback quote");
            }
            return *source.fallback;
        }
        throw PricingError("price fetch failed (" + why +
                           ") and no static fallback is configured; supply --quote");
    };

    try {
        SplitUrl parts = split_url(source.url);
        httplib::Client client(parts.host_port);
        client.set_connection_timeout(0, source.timeout_ms * 1000);
        client.set_read_timeout(0, source.timeout_ms * 1000);
        auto res = client.Get(parts.path);
        if (!res) {
            return fail("no response");
        }
        if (res->status != 200) {
            return fail("HTTP status " + std::to_string(res->status));
        }
        nlohmann::json doc = nlohmann::json::parse(res->body);
        const nlohmann::json* gas = walk_path(doc, source.gas_price_path);
        const nlohmann::json* usd = walk_path(doc, source.eth_usd_path);
        if (!gas || !usd) {
            return fail("response missing configured fields");
        }
        PriceQuote q;
        q.gas_price_gwei = non_negative_decimal(decimal_from_json(*gas, "gas price"), "gas price");
        q.eth_usd = non_negative_decimal(decimal_from_json(*usd, "ETH/USD price"), "ETH/USD price");
        q.timestamp = std::chrono::system_clock::now();
        q.source = source.url;
        if (source.cache_ttl_s > 0) {
            std::lock_guard<std::mutex> lock(g_cache_mutex);
            g_cache[source.url] = CacheEntry{
                q, std::chrono::steady_clock::now() + std::chrono::seconds(source.cache_ttl_s)};
        }
        return q;
    } catch (const PricingError&) {
        throw;
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

}  // namespace scdebt
