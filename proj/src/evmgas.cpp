#include "scdebt/evmgas.hpp"

#include <cctype>
#include <fstream>
#include <set>

namespace scdebt {

namespace evm {

std::vector<std::uint8_t> Instruction::padded_immediate() const {
    std::vector<std::uint8_t> out = immediate;
    out.resize(declared_immediate_len, 0);
    return out;
}

std::vector<Instruction> decode(std::span<const std::uint8_t> code) {
    std::vector<Instruction> out;
    std::size_t pos = 0;
    while (pos < code.size()) {
        const std::uint8_t op = code[pos];
        const OpcodeInfo& info = opcode_info(op);
        Instruction ins;
        ins.offset = pos;
        ins.opcode = op;
        ins.mnemonic = info.mnemonic;
        ins.declared_immediate_len = info.immediate_len;
        ins.base_gas = info.base_gas;
        ++pos;
        if (info.immediate_len > 0) {
            std::size_t avail = std::min<std::size_t>(info.immediate_len, code.size() - pos);
            ins.immediate.assign(code.begin() + pos, code.begin() + pos + avail);
            ins.truncated = avail < info.immediate_len;
            pos += avail;
        }
        out.push_back(std::move(ins));
    }
    return out;
}

std::vector<std::uint8_t> parse_hex(std::string_view text) {
    std::string compact;
    compact.reserve(text.size());
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            compact.push_back(c);
        }
    }
    std::string_view body = compact;
    if (body.starts_with("0x") || body.starts_with("0X")) {
        body.remove_prefix(2);
    }
    if (body.size() % 2 != 0) {
        throw GasError("hex bytecode has an odd number of digits");
    }
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    std::vector<std::uint8_t> out;
    out.reserve(body.size() / 2);
    for (std::size_t i = 0; i < body.size(); i += 2) {
        int hi = nibble(body[i]);
        int lo = nibble(body[i + 1]);
        if (hi < 0 || lo < 0) {
            throw GasError(std::string("invalid hex digit '") + body[i + (hi < 0 ? 0 : 1)] +
                           "' in bytecode");
        }
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

std::vector<std::uint8_t> parse_hex_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw GasError("cannot open bytecode file: " + path.string());
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_hex(text);
}

}  // namespace evm

GasSchedule GasSchedule::defaults() {
    GasSchedule s;
    for (int op = 0; op < 256; ++op) {
        s.opcode_base_cost[op] = evm::opcode_info(static_cast<std::uint8_t>(op)).base_gas;
    }
    return s;
}

GasSchedule GasSchedule::load(const nlohmann::json& doc) {
    GasSchedule s = defaults();
    if (!doc.is_object()) {
        throw GasError("gas schedule document must be a JSON object");
    }
    auto take = [&](const char* key, std::uint64_t& field) {
        if (doc.contains(key)) {
            const auto& v = doc.at(key);
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
                throw GasError(std::string("gas schedule field '") + key +
                               "' must be a non-negative integer");
            }
            field = v.get<std::uint64_t>();
        }
    };
    take("g_create", s.g_create);
    take("g_transaction", s.g_transaction);
    take("g_codedeposit_per_byte", s.g_codedeposit_per_byte);
    take("g_selfdestruct", s.g_selfdestruct);
    take("g_txdata_zero", s.g_txdata_zero);
    take("g_txdata_nonzero", s.g_txdata_nonzero);
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        static const std::set<std::string> known = {
            "g_create", "g_transaction", "g_codedeposit_per_byte", "g_selfdestruct",
            "g_txdata_zero", "g_txdata_nonzero", "opcode_base_cost"};
        if (!known.contains(it.key())) {
            throw GasError("unknown field '" + it.key() + "' in gas schedule");
        }
    }
    if (doc.contains("opcode_base_cost")) {
        const auto& costs = doc.at("opcode_base_cost");
        if (!costs.is_object()) {
            throw GasError("'opcode_base_cost' must map opcode names or 0xNN keys to gas");
        }
        for (auto it = costs.begin(); it != costs.end(); ++it) {
            int op = -1;
            const std::string& key = it.key();
            if (key.starts_with("0x") || key.starts_with("0X")) {
                op = std::stoi(key.substr(2), nullptr, 16);
            } else {
                for (int i = 0; i < 256; ++i) {
                    if (evm::opcode_info(static_cast<std::uint8_t>(i)).defined &&
                        evm::opcode_info(static_cast<std::uint8_t>(i)).mnemonic == key) {
                        op = i;
                        break;
                    }
                }
            }
            if (op < 0 || op > 255) {
                throw GasError("unknown opcode '" + key + "' in gas schedule");
            }
            if (it.value().is_null()) {
                s.opcode_base_cost[op] = std::nullopt;
            } else {
                s.opcode_base_cost[op] = it.value().get<std::uint64_t>();
            }
        }
    }
    return s;
}

GasSchedule GasSchedule::load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw GasError("cannot open gas schedule file: " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw GasError(std::string("gas schedule is not valid JSON: ") + e.what());
    }
    return load(doc);
}

std::optional<std::uint64_t> ContractBytecode::runtime_len() const {
    if (runtime_code) {
        return runtime_code->size();
    }
    return runtime_len_override;
}

std::uint64_t execution_cost(std::span<const evm::Instruction> instructions,
                             const ExecutionStrategy& strategy, const GasSchedule& schedule,
                             std::size_t* unknown_opcode_count) {
    if (unknown_opcode_count) {
        *unknown_opcode_count = 0;
    }
    switch (strategy.kind) {
        case ExecutionStrategy::Kind::Zero:
            return 0;
        case ExecutionStrategy::Kind::Provided:
            return strategy.provided_value;
        case ExecutionStrategy::Kind::StaticSum: {
            std::uint64_t total = 0;
            for (const auto& ins : instructions) {
                const auto& cost = schedule.opcode_base_cost[ins.opcode];
                if (cost) {
                    total += *cost;
                } else if (unknown_opcode_count) {
                    ++*unknown_opcode_count;
                }
            }
            return total;
        }
    }
    throw GasError("unreachable execution strategy");
}

GasBreakdown deployment_gas(const ContractBytecode& code, const GasSchedule& schedule,
                            const EstimationOptions& opts) {
    if (code.init_code.empty() && !code.runtime_len()) {
        throw GasError("nothing to estimate: no init code and no runtime length");
    }
    GasBreakdown b;
    b.create = schedule.g_create;
    b.transaction = schedule.g_transaction;

    auto runtime_len = code.runtime_len();
    if (runtime_len) {
        b.codedeposit = schedule.g_codedeposit_per_byte * *runtime_len;
    } else if (opts.strict) {
        throw GasError("runtime length unavailable; pass runtime code or a length override");
    } else {
        b.warnings.push_back("runtime length unknown; code-deposit gas assumed 0");
    }

    if (opts.include_calldata) {
        for (std::uint8_t byte : code.init_code) {
            b.calldata += byte == 0 ? schedule.g_txdata_zero : schedule.g_txdata_nonzero;
        }
    }

    if (opts.execution.kind == ExecutionStrategy::Kind::StaticSum) {
        auto instructions = evm::decode(code.init_code);
        b.execution =
            execution_cost(instructions, opts.execution, schedule, &b.unknown_opcode_count);
        if (b.unknown_opcode_count > 0) {
            b.warnings.push_back(std::to_string(b.unknown_opcode_count) +
                                 " opcode(s) without a static cost contributed 0 gas");
        }
    } else {
        b.execution = execution_cost({}, opts.execution, schedule, nullptr);
    }
    return b;
}

std::uint64_t update_gas(UpdatePattern pattern, const GasSchedule& schedule,
                         std::optional<std::uint64_t> proxy_gas) {
    switch (pattern) {
        case UpdatePattern::Selfdestruct:
            return schedule.g_selfdestruct;
        case UpdatePattern::Proxy:
            if (!proxy_gas) {
                throw GasError("proxy update pattern requires a configured gas figure");
            }
            return *proxy_gas;
    }
    throw GasError("unreachable update pattern");
}

Decimal gas_to_eth(std::uint64_t gas, const Decimal& gas_price_gwei) {
    // 1 Gwei = 10^-9 ETH; shifting keeps the product exact.
    return (Decimal::from_uint(gas) * gas_price_gwei).shift_right(9);
}

PrincipalEstimate principal(const ContractBytecode& code, const GasSchedule& schedule,
                            const EstimationOptions& opts, const PriceQuote& quote) {
    PrincipalEstimate est;
    est.breakdown = deployment_gas(code, schedule, opts);
    est.deploy_gas = est.breakdown.total();
    est.update_gas = update_gas(opts.update, schedule, opts.proxy_gas);
    est.total_gas = est.deploy_gas + est.update_gas;
    est.fee_eth = gas_to_eth(est.total_gas, quote.gas_price_gwei);
    est.fee_usd = est.fee_eth * quote.eth_usd;
    est.quote_used = quote;
    return est;
}

}  // namespace scdebt
