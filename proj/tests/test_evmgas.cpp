#include <doctest.h>

#include <random>

#include "scdebt/evmgas.hpp"

using namespace scdebt;

TEST_CASE("decode basics") {
    std::vector<std::uint8_t> push{0x60, 0x01};
    auto ins = evm::decode(push);
    REQUIRE(ins.size() == 1);
    CHECK(ins[0].mnemonic == "PUSH1");
    CHECK(ins[0].offset == 0);
    CHECK(ins[0].immediate == std::vector<std::uint8_t>{0x01});
    CHECK(!ins[0].truncated);
    CHECK(ins[0].base_gas == 3);

    CHECK(evm::decode({}).empty());
}

TEST_CASE("decode flags truncated push immediates and pads them on demand") {
    std::vector<std::uint8_t> cut{0x60};
    auto ins = evm::decode(cut);
    REQUIRE(ins.size() == 1);
    CHECK(ins[0].truncated);
    CHECK(ins[0].immediate.empty());
    CHECK(ins[0].declared_immediate_len == 1);
    CHECK(ins[0].padded_immediate() == std::vector<std::uint8_t>{0x00});

    std::vector<std::uint8_t> cut3{0x01, 0x62, 0xaa};  // ADD then PUSH3 with 1 of 3 bytes
    auto ins3 = evm::decode(cut3);
    REQUIRE(ins3.size() == 2);
    CHECK(ins3[1].truncated);
    CHECK(ins3[1].padded_immediate() == std::vector<std::uint8_t>{0xaa, 0x00, 0x00});
}

TEST_CASE("decode consumes every byte exactly once") {
    std::mt19937 rng(42);
    for (int round = 0; round < 500; ++round) {
        std::uniform_int_distribution<int> len_dist(0, 300);
        std::uniform_int_distribution<int> byte_dist(0, 255);
        std::vector<std::uint8_t> code(len_dist(rng));
        for (auto& b : code) b = static_cast<std::uint8_t>(byte_dist(rng));
        auto ins = evm::decode(code);
        std::size_t consumed = 0;
        std::size_t expected_offset = 0;
        for (const auto& i : ins) {
            CHECK(i.offset == expected_offset);
            consumed += 1 + i.immediate.size();
            expected_offset = i.offset + 1 + i.immediate.size();
        }
        CHECK(consumed == code.size());
    }
}

TEST_CASE("undefined opcodes come back as INVALID") {
    std::vector<std::uint8_t> weird{0x0c, 0xef, 0x21};
    auto ins = evm::decode(weird);
    REQUIRE(ins.size() == 3);
    for (const auto& i : ins) {
        CHECK(i.mnemonic == "INVALID");
        CHECK(!i.base_gas.has_value());
    }
}

TEST_CASE("parse_hex tolerates prefix and whitespace") {
    CHECK(evm::parse_hex("0x6001") == std::vector<std::uint8_t>{0x60, 0x01});
    CHECK(evm::parse_hex("60 01\n") == std::vector<std::uint8_t>{0x60, 0x01});
    CHECK(evm::parse_hex("") == std::vector<std::uint8_t>{});
    CHECK_THROWS_AS(evm::parse_hex("0x600"), GasError);
    CHECK_THROWS_AS(evm::parse_hex("zz"), GasError);
}

TEST_CASE("deployment gas composition") {
    GasSchedule s = GasSchedule::defaults();
    EstimationOptions opts;
    opts.execution = ExecutionStrategy::zero();

    ContractBytecode hundred;
    hundred.runtime_len_override = 100;
    auto b = deployment_gas(hundred, s, opts);
    CHECK(b.create == 32000);
    CHECK(b.transaction == 21000);
    CHECK(b.codedeposit == 20000);
    CHECK(b.calldata == 0);
    CHECK(b.execution == 0);
    CHECK(b.total() == 73000);

    ContractBytecode empty;
    empty.runtime_len_override = 0;
    CHECK(deployment_gas(empty, s, opts).total() == 53000);
    CHECK(deployment_gas(empty, s, opts).warnings.empty());
}

TEST_CASE("missing runtime length warns or errors per strictness") {
    GasSchedule s = GasSchedule::defaults();
    ContractBytecode code;
    code.init_code = {0x60, 0x01};

    EstimationOptions lax;
    lax.execution = ExecutionStrategy::zero();
    auto b = deployment_gas(code, s, lax);
    CHECK(b.codedeposit == 0);
    REQUIRE(b.warnings.size() == 1);

    EstimationOptions strict = lax;
    strict.strict = true;
    CHECK_THROWS_AS(deployment_gas(code, s, strict), GasError);

    ContractBytecode nothing;
    CHECK_THROWS_AS(deployment_gas(nothing, s, lax), GasError);
}

TEST_CASE("execution cost strategies") {
    GasSchedule s = GasSchedule::defaults();
    std::vector<std::uint8_t> code{0x60, 0x01, 0x60, 0x02, 0x01};  // PUSH1 1, PUSH1 2, ADD
    auto ins = evm::decode(code);

    CHECK(execution_cost(ins, ExecutionStrategy::zero(), s) == 0);
    CHECK(execution_cost(ins, ExecutionStrategy::static_sum(), s) == 9);
    CHECK(execution_cost(ins, ExecutionStrategy::provided(5321), s) == 5321);

    // Unknown-cost opcodes contribute nothing but are counted.
    std::vector<std::uint8_t> with_sstore{0x60, 0x01, 0x55};
    auto ins2 = evm::decode(with_sstore);
    std::size_t unknown = 0;
    CHECK(execution_cost(ins2, ExecutionStrategy::static_sum(), s, &unknown) == 3);
    CHECK(unknown == 1);
}

TEST_CASE("update pattern gas") {
    GasSchedule s = GasSchedule::defaults();
    CHECK(update_gas(UpdatePattern::Selfdestruct, s) == 5000);
    CHECK(update_gas(UpdatePattern::Proxy, s, 26000) == 26000);
    CHECK_THROWS_AS(update_gas(UpdatePattern::Proxy, s), GasError);

    GasSchedule cheap = s;
    cheap.g_selfdestruct = 0;
    CHECK(update_gas(UpdatePattern::Selfdestruct, cheap) == 0);
}

TEST_CASE("principal converts gas to exact fiat") {
    GasSchedule s = GasSchedule::defaults();
    ContractBytecode code;
    code.init_code = evm::parse_hex_file(std::string(SCDEBT_FIXTURE_DIR) +
                                         "/bytecode/CEOThrone.init.hex");
    code.runtime_code = evm::parse_hex_file(std::string(SCDEBT_FIXTURE_DIR) +
                                            "/bytecode/CEOThrone.runtime.hex");
    EstimationOptions opts;
    opts.execution = ExecutionStrategy::static_sum();
    PriceQuote quote = static_quote(Decimal::parse("126"), Decimal::parse("500"));
    auto est = principal(code, s, opts, quote);
    CHECK(est.deploy_gas == 892200);
    CHECK(est.update_gas == 5000);
    CHECK(est.total_gas == 897200);
    CHECK(est.fee_eth.to_fixed(8) == "0.11304720");
    CHECK(est.fee_usd.to_fixed(2) == "56.52");
    CHECK(est.breakdown.create + est.breakdown.transaction + est.breakdown.codedeposit +
              est.breakdown.calldata + est.breakdown.execution ==
          est.deploy_gas);

    PriceQuote zero_price = static_quote(Decimal::parse("0"), Decimal::parse("500"));
    auto free_est = principal(code, s, opts, zero_price);
    CHECK(free_est.fee_usd.is_zero());
    CHECK(free_est.total_gas == est.total_gas);
}

TEST_CASE("zero gas means zero fees") {
    CHECK(gas_to_eth(0, Decimal::parse("126")).is_zero());
    CHECK(gas_to_eth(78000, Decimal::parse("0")).is_zero());
    CHECK(gas_to_eth(78000, Decimal::parse("126")).to_fixed(8) == "0.00982800");
}

TEST_CASE("calldata pricing when enabled") {
    GasSchedule s = GasSchedule::defaults();
    ContractBytecode code;
    code.init_code = {0x00, 0x01};
    code.runtime_len_override = 0;
    EstimationOptions opts;
    opts.execution = ExecutionStrategy::zero();
    opts.include_calldata = true;
    auto b = deployment_gas(code, s, opts);
    CHECK(b.calldata == 4 + 68);
}

TEST_CASE("gas monotonicity") {
    GasSchedule s = GasSchedule::defaults();
    EstimationOptions opts;
    opts.execution = ExecutionStrategy::zero();
    std::uint64_t previous = 0;
    for (std::uint64_t len : {0u, 1u, 10u, 100u, 1000u, 100000u}) {
        ContractBytecode code;
        code.runtime_len_override = len;
        auto total = deployment_gas(code, s, opts).total();
        CHECK(total >= previous);
        previous = total;
    }

    std::vector<std::uint8_t> code;
    std::uint64_t prev_exec = 0;
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> byte_dist(0, 255);
    for (int i = 0; i < 200; ++i) {
        code.push_back(static_cast<std::uint8_t>(byte_dist(rng)));
        auto ins = evm::decode(code);
        auto exec = execution_cost(ins, ExecutionStrategy::static_sum(), s);
        CHECK(exec >= prev_exec);
        prev_exec = exec;
    }
}

TEST_CASE("gas schedule overrides") {
    auto s = GasSchedule::load(nlohmann::json{{"g_selfdestruct", 0}, {"g_create", 31000}});
    CHECK(s.g_selfdestruct == 0);
    CHECK(s.g_create == 31000);
    CHECK(s.g_transaction == 21000);

    auto with_op = GasSchedule::load(nlohmann::json{{"opcode_base_cost", {{"SSTORE", 20000}}}});
    CHECK(with_op.opcode_base_cost[0x55] == 20000);
    auto by_byte = GasSchedule::load(nlohmann::json{{"opcode_base_cost", {{"0x01", 5}}}});
    CHECK(by_byte.opcode_base_cost[0x01] == 5);

    CHECK_THROWS_AS(GasSchedule::load(nlohmann::json{{"bogus", 1}}), GasError);
    CHECK_THROWS_AS(GasSchedule::load(nlohmann::json{{"opcode_base_cost", {{"NOPE", 1}}}}),
                    GasError);
}
