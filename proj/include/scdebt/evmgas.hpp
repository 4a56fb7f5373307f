#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scdebt/decimal.hpp"
#include "scdebt/pricing.hpp"

namespace scdebt {

class GasError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace evm {

/// Static description of one opcode byte.
struct OpcodeInfo {
    std::string_view mnemonic;
    std::uint8_t immediate_len = 0;          // PUSH1..PUSH32 carry 1..32 bytes
    std::optional<std::uint64_t> base_gas;   // nullopt: cost is dynamic/undefined
    bool defined = false;
};

/// Table entry for an opcode byte; undefined bytes come back as the INVALID
/// sentinel with defined=false.
const OpcodeInfo& opcode_info(std::uint8_t opcode);

struct Instruction {
    std::size_t offset = 0;
    std::uint8_t opcode = 0;
    std::string_view mnemonic;
    std::vector<std::uint8_t> immediate;     // bytes actually consumed
    std::uint8_t declared_immediate_len = 0; // n for PUSHn
    bool truncated = false;                  // PUSH immediate ran past end of code
    std::optional<std::uint64_t> base_gas;

    /// The immediate zero-padded to its declared length, as the VM would see it.
    std::vector<std::uint8_t> padded_immediate() const;
};

/// Linear-sweep disassembly. Total: never throws, consumes every input byte,
/// and sum(1 + immediate.size()) over the result equals code.size().
std::vector<Instruction> decode(std::span<const std::uint8_t> code);

/// Hex decoding for bytecode inputs: optional 0x prefix, whitespace tolerated.
std::vector<std::uint8_t> parse_hex(std::string_view text);
std::vector<std::uint8_t> parse_hex_file(const std::filesystem::path& path);

}  // namespace evm

/// Gas constants used to price a deployment. Defaults follow the yellow-paper
/// fee schedule; every field can be overridden from a JSON document.
struct GasSchedule {
    std::uint64_t g_create = 32000;
    std::uint64_t g_transaction = 21000;
    std::uint64_t g_codedeposit_per_byte = 200;
    std::uint64_t g_selfdestruct = 5000;
    std::uint64_t g_txdata_zero = 4;
    std::uint64_t g_txdata_nonzero = 68;
    /// Per-opcode static base cost; nullopt marks dynamic/undefined cost.
    std::array<std::optional<std::uint64_t>, 256> opcode_base_cost{};

    static GasSchedule defaults();
    /// Partial override: fields present in the document replace defaults.
    static GasSchedule load(const nlohmann::json& doc);
    static GasSchedule load_file(const std::filesystem::path& path);
};

struct ContractBytecode {
    std::vector<std::uint8_t> init_code;
    std::optional<std::vector<std::uint8_t>> runtime_code;
    std::optional<std::uint64_t> runtime_len_override;

    /// runtime_code length if present, else the override if present.
    std::optional<std::uint64_t> runtime_len() const;
};

enum class UpdatePattern { Selfdestruct, Proxy };

struct ExecutionStrategy {
    enum class Kind { Zero, StaticSum, Provided };
    Kind kind = Kind::Zero;
    std::uint64_t provided_value = 0;

    static ExecutionStrategy zero() { return {Kind::Zero, 0}; }
    static ExecutionStrategy static_sum() { return {Kind::StaticSum, 0}; }
    static ExecutionStrategy provided(std::uint64_t gas) { return {Kind::Provided, gas}; }
};

struct EstimationOptions {
    ExecutionStrategy execution = ExecutionStrategy::static_sum();
    bool include_calldata = false;  // intrinsic data gas is off in the default cost model
    bool strict = false;            // missing runtime length: error instead of warn
    UpdatePattern update = UpdatePattern::Selfdestruct;
    std::optional<std::uint64_t> proxy_gas;
};

/// Component breakdown of the deployment cost. Components sum exactly to the
/// deploy total; all arithmetic is integral.
struct GasBreakdown {
    std::uint64_t create = 0;
    std::uint64_t transaction = 0;
    std::uint64_t codedeposit = 0;
    std::uint64_t calldata = 0;
    std::uint64_t execution = 0;
    std::size_t unknown_opcode_count = 0;  // opcodes that contributed 0 to static_sum
    std::vector<std::string> warnings;

    std::uint64_t total() const {
        return create + transaction + codedeposit + calldata + execution;
    }
};

/// Debt principal: deploy gas plus update-pattern gas, converted to fiat
/// with exact decimal arithmetic.
struct PrincipalEstimate {
    std::uint64_t deploy_gas = 0;
    std::uint64_t update_gas = 0;
    std::uint64_t total_gas = 0;
    GasBreakdown breakdown;
    Decimal fee_eth;
    Decimal fee_usd;
    PriceQuote quote_used;
};

std::uint64_t execution_cost(std::span<const evm::Instruction> instructions,
                             const ExecutionStrategy& strategy, const GasSchedule& schedule,
                             std::size_t* unknown_opcode_count = nullptr);

GasBreakdown deployment_gas(const ContractBytecode& code, const GasSchedule& schedule,
                            const EstimationOptions& opts);

std::uint64_t update_gas(UpdatePattern pattern, const GasSchedule& schedule,
                         std::optional<std::uint64_t> proxy_gas = std::nullopt);

PrincipalEstimate principal(const ContractBytecode& code, const GasSchedule& schedule,
                            const EstimationOptions& opts, const PriceQuote& quote);

/// Fiat conversion used by principal(): gas * gwei * 10^-9 -> ETH -> USD.
Decimal gas_to_eth(std::uint64_t gas, const Decimal& gas_price_gwei);

}  // namespace scdebt
