#include "scdebt/evmgas.hpp"

namespace scdebt::evm {

namespace {

// Static base costs per the yellow-paper fee schedule (Istanbul revision).
// Dynamic components (memory expansion, storage, copy words, call value
// transfer) are deliberately excluded: the static sum is a lower bound.
// Opcodes whose cost is entirely dynamic carry no base (SSTORE, INVALID).
struct Row {
    std::uint8_t op;
    std::string_view name;
    std::uint8_t imm;
    int gas;  // -1: defined opcode without a static base cost
};

constexpr int kNoBase = -1;

constexpr Row kRows[] = {
    {0x00, "STOP", 0, 0},
    {0x01, "ADD", 0, 3},
    {0x02, "MUL", 0, 5},
    {0x03, "SUB", 0, 3},
    {0x04, "DIV", 0, 5},
    {0x05, "SDIV", 0, 5},
    {0x06, "MOD", 0, 5},
    {0x07, "SMOD", 0, 5},
    {0x08, "ADDMOD", 0, 8},
    {0x09, "MULMOD", 0, 8},
    {0x0a, "EXP", 0, 10},
    {0x0b, "SIGNEXTEND", 0, 5},
    {0x10, "LT", 0, 3},
    {0x11, "GT", 0, 3},
    {0x12, "SLT", 0, 3},
    {0x13, "SGT", 0, 3},
    {0x14, "EQ", 0, 3},
    {0x15, "ISZERO", 0, 3},
    {0x16, "AND", 0, 3},
    {0x17, "OR", 0, 3},
    {0x18, "XOR", 0, 3},
    {0x19, "NOT", 0, 3},
    {0x1a, "BYTE", 0, 3},
    {0x1b, "SHL", 0, 3},
    {0x1c, "SHR", 0, 3},
    {0x1d, "SAR", 0, 3},
    {0x20, "KECCAK256", 0, 30},
    {0x30, "ADDRESS", 0, 2},
    {0x31, "BALANCE", 0, 700},
    {0x32, "ORIGIN", 0, 2},
    {0x33, "CALLER", 0, 2},
    {0x34, "CALLVALUE", 0, 2},
    {0x35, "CALLDATALOAD", 0, 3},
    {0x36, "CALLDATASIZE", 0, 2},
    {0x37, "CALLDATACOPY", 0, 3},
    {0x38, "CODESIZE", 0, 2},
    {0x39, "CODECOPY", 0, 3},
    {0x3a, "GASPRICE", 0, 2},
    {0x3b, "EXTCODESIZE", 0, 700},
    {0x3c, "EXTCODECOPY", 0, 700},
    {0x3d, "RETURNDATASIZE", 0, 2},
    {0x3e, "RETURNDATACOPY", 0, 3},
    {0x3f, "EXTCODEHASH", 0, 700},
    {0x40, "BLOCKHASH", 0, 20},
    {0x41, "COINBASE", 0, 2},
    {0x42, "TIMESTAMP", 0, 2},
    {0x43, "NUMBER", 0, 2},
    {0x44, "DIFFICULTY", 0, 2},
    {0x45, "GASLIMIT", 0, 2},
    {0x46, "CHAINID", 0, 2},
    {0x47, "SELFBALANCE", 0, 5},
    {0x50, "POP", 0, 2},
    {0x51, "MLOAD", 0, 3},
    {0x52, "MSTORE", 0, 3},
    {0x53, "MSTORE8", 0, 3},
    {0x54, "SLOAD", 0, 800},
    {0x55, "SSTORE", 0, kNoBase},
    {0x56, "JUMP", 0, 8},
    {0x57, "JUMPI", 0, 10},
    {0x58, "PC", 0, 2},
    {0x59, "MSIZE", 0, 2},
    {0x5a, "GAS", 0, 2},
    {0x5b, "JUMPDEST", 0, 1},
    {0xa0, "LOG0", 0, 375},
    {0xa1, "LOG1", 0, 750},
    {0xa2, "LOG2", 0, 1125},
    {0xa3, "LOG3", 0, 1500},
    {0xa4, "LOG4", 0, 1875},
    {0xf0, "CREATE", 0, 32000},
    {0xf1, "CALL", 0, 700},
    {0xf2, "CALLCODE", 0, 700},
    {0xf3, "RETURN", 0, 0},
    {0xf4, "DELEGATECALL", 0, 700},
    {0xf5, "CREATE2", 0, 32000},
    {0xfa, "STATICCALL", 0, 700},
    {0xfd, "REVERT", 0, 0},
    {0xfe, "INVALID", 0, kNoBase},
    {0xff, "SELFDESTRUCT", 0, 5000},
};

constexpr std::string_view kPushNames[] = {
    "PUSH1",  "PUSH2",  "PUSH3",  "PUSH4",  "PUSH5",  "PUSH6",  "PUSH7",  "PUSH8",
    "PUSH9",  "PUSH10", "PUSH11", "PUSH12", "PUSH13", "PUSH14", "PUSH15", "PUSH16",
    "PUSH17", "PUSH18", "PUSH19", "PUSH20", "PUSH21", "PUSH22", "PUSH23", "PUSH24",
    "PUSH25", "PUSH26", "PUSH27", "PUSH28", "PUSH29", "PUSH30", "PUSH31", "PUSH32",
};

constexpr std::string_view kDupNames[] = {
    "DUP1",  "DUP2",  "DUP3",  "DUP4",  "DUP5",  "DUP6",  "DUP7",  "DUP8",
    "DUP9",  "DUP10", "DUP11", "DUP12", "DUP13", "DUP14", "DUP15", "DUP16",
};

constexpr std::string_view kSwapNames[] = {
    "SWAP1",  "SWAP2",  "SWAP3",  "SWAP4",  "SWAP5",  "SWAP6",  "SWAP7",  "SWAP8",
    "SWAP9",  "SWAP10", "SWAP11", "SWAP12", "SWAP13", "SWAP14", "SWAP15", "SWAP16",
};

std::array<OpcodeInfo, 256> build_table() {
    std::array<OpcodeInfo, 256> table;
    for (int i = 0; i < 256; ++i) {
        table[i] = OpcodeInfo{"INVALID", 0, std::nullopt, false};
    }
    for (const Row& r : kRows) {
        table[r.op] = OpcodeInfo{
            r.name, r.imm,
            r.gas >= 0 ? std::optional<std::uint64_t>(static_cast<std::uint64_t>(r.gas))
                       : std::nullopt,
            true};
    }
    for (int n = 0; n < 32; ++n) {
        table[0x60 + n] = OpcodeInfo{kPushNames[n], static_cast<std::uint8_t>(n + 1), 3, true};
    }
    for (int n = 0; n < 16; ++n) {
        table[0x80 + n] = OpcodeInfo{kDupNames[n], 0, 3, true};
        table[0x90 + n] = OpcodeInfo{kSwapNames[n], 0, 3, true};
    }
    return table;
}

const std::array<OpcodeInfo, 256>& table() {
    static const std::array<OpcodeInfo, 256> t = build_table();
    return t;
}

}  // namespace

const OpcodeInfo& opcode_info(std::uint8_t opcode) { return table()[opcode]; }

}  // namespace scdebt::evm
