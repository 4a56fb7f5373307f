#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace scdebt {

class DecimalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact base-10 fixed-point number (mantissa * 10^-scale).
///
/// All fiat and score arithmetic in this project goes through Decimal so
/// that cents and one-decimal scores come out exact; gas quantities stay in
/// plain unsigned integers. Multiplication and addition are exact (the scale
/// grows as needed); rounding happens only in to_fixed().
class Decimal {
public:
    Decimal() = default;

    static Decimal from_int(std::int64_t value);
    static Decimal from_uint(std::uint64_t value);

    /// Parses "123", "-4.50", ".5". Exponents ("1e9") are rejected.
    static Decimal parse(std::string_view text);

    Decimal operator+(const Decimal& rhs) const;
    Decimal operator-(const Decimal& rhs) const;
    Decimal operator*(const Decimal& rhs) const;

    /// Moves the decimal point left by n digits (exact multiply by 10^-n).
    Decimal shift_right(unsigned n) const;

    int compare(const Decimal& rhs) const;
    bool operator==(const Decimal& rhs) const { return compare(rhs) == 0; }
    bool operator!=(const Decimal& rhs) const { return compare(rhs) != 0; }
    bool operator<(const Decimal& rhs) const { return compare(rhs) < 0; }
    bool operator<=(const Decimal& rhs) const { return compare(rhs) <= 0; }
    bool operator>(const Decimal& rhs) const { return compare(rhs) > 0; }
    bool operator>=(const Decimal& rhs) const { return compare(rhs) >= 0; }

    bool is_zero() const { return mant_ == 0; }
    bool is_negative() const { return mant_ < 0; }

    /// Rounds (half away from zero) to dp fractional digits.
    Decimal round_to(unsigned dp) const;

    /// Divides by a small positive integer, rounding (half away from zero)
    /// at dp fractional digits.
    Decimal div_round(std::uint32_t divisor, unsigned dp) const;

    /// Fixed-point rendering with exactly dp fractional digits, e.g.
    /// to_fixed(2) -> "56.52", to_fixed(8) -> "0.11304720".
    std::string to_fixed(unsigned dp) const;

    /// Shortest exact rendering: "6", "0.5", "228.9".
    std::string to_string() const;

    /// Lossy; for diagnostics and property checks only.
    double to_double() const;

private:
    Decimal(__int128 mantissa, std::uint32_t scale);
    void normalize();

    __int128 mant_ = 0;
    std::uint32_t scale_ = 0;
};

}  // namespace scdebt
