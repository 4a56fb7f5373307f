#include "scdebt/decimal.hpp"

#include <algorithm>
#include <cctype>

namespace scdebt {

namespace {

// ~38 significant digits fit in __int128; leave headroom for carries.
constexpr std::uint32_t kMaxScale = 36;

__int128 pow10_i128(unsigned n) {
    __int128 p = 1;
    for (unsigned i = 0; i < n; ++i) {
        p *= 10;
    }
    return p;
}

__int128 checked_mul(__int128 a, __int128 b) {
    __int128 out;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw DecimalError("decimal overflow in multiplication");
    }
    return out;
}

__int128 checked_add(__int128 a, __int128 b) {
    __int128 out;
    if (__builtin_add_overflow(a, b, &out)) {
        throw DecimalError("decimal overflow in addition");
    }
    return out;
}

std::string i128_to_string(__int128 v) {
    if (v == 0) {
        return "0";
    }
    bool neg = v < 0;
    // Negate digit by digit to avoid overflow on INT128_MIN (never reached
    // here, but cheap to do right).
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                              : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) {
        digits.push_back('-');
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

}  // namespace

Decimal::Decimal(__int128 mantissa, std::uint32_t scale) : mant_(mantissa), scale_(scale) {
    normalize();
}

void Decimal::normalize() {
    while (scale_ > 0 && mant_ % 10 == 0) {
        mant_ /= 10;
        --scale_;
    }
    if (mant_ == 0) {
        scale_ = 0;
    }
}

Decimal Decimal::from_int(std::int64_t value) {
    return Decimal(static_cast<__int128>(value), 0);
}

Decimal Decimal::from_uint(std::uint64_t value) {
    return Decimal(static_cast<__int128>(value), 0);
}

Decimal Decimal::parse(std::string_view text) {
    if (text.empty()) {
        throw DecimalError("empty decimal literal");
    }
    std::size_t pos = 0;
    bool neg = false;
    if (text[pos] == '+' || text[pos] == '-') {
        neg = text[pos] == '-';
        ++pos;
    }
    __int128 mant = 0;
    std::uint32_t scale = 0;
    bool seen_dot = false;
    bool seen_digit = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '.') {
            if (seen_dot) {
                throw DecimalError("malformed decimal literal: " + std::string(text));
            }
            seen_dot = true;
            continue;
        }
        if (c == 'e' || c == 'E') {
            throw DecimalError("exponent notation is not accepted: " + std::string(text));
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw DecimalError("malformed decimal literal: " + std::string(text));
        }
        if (scale >= kMaxScale) {
            throw DecimalError("decimal literal has too many digits: " + std::string(text));
        }
        mant = checked_add(checked_mul(mant, 10), c - '0');
        if (seen_dot) {
            ++scale;
        }
        seen_digit = true;
    }
    if (!seen_digit) {
        throw DecimalError("malformed decimal literal: " + std::string(text));
    }
    return Decimal(neg ? -mant : mant, scale);
}

Decimal Decimal::operator+(const Decimal& rhs) const {
    std::uint32_t scale = std::max(scale_, rhs.scale_);
    __int128 a = checked_mul(mant_, pow10_i128(scale - scale_));
    __int128 b = checked_mul(rhs.mant_, pow10_i128(scale - rhs.scale_));
    return Decimal(checked_add(a, b), scale);
}

Decimal Decimal::operator-(const Decimal& rhs) const {
    return *this + Decimal(-rhs.mant_, rhs.scale_);
}

Decimal Decimal::operator*(const Decimal& rhs) const {
    std::uint32_t scale = scale_ + rhs.scale_;
    if (scale > kMaxScale) {
        throw DecimalError("decimal scale overflow in multiplication");
    }
    return Decimal(checked_mul(mant_, rhs.mant_), scale);
}

Decimal Decimal::shift_right(unsigned n) const {
    if (scale_ + n > kMaxScale) {
        throw DecimalError("decimal scale overflow in shift");
    }
    return Decimal(mant_, scale_ + n);
}

int Decimal::compare(const Decimal& rhs) const {
    std::uint32_t scale = std::max(scale_, rhs.scale_);
    __int128 a = checked_mul(mant_, pow10_i128(scale - scale_));
    __int128 b = checked_mul(rhs.mant_, pow10_i128(scale - rhs.scale_));
    if (a < b) return -1;
    if (a > b) return 1;
    return 0;
}

Decimal Decimal::round_to(unsigned dp) const {
    if (scale_ <= dp) {
        return *this;
    }
    __int128 divisor = pow10_i128(scale_ - dp);
    __int128 q = mant_ / divisor;
    __int128 r = mant_ % divisor;
    if (r < 0) r = -r;
    if (r * 2 >= divisor) {
        q += mant_ < 0 ? -1 : 1;
    }
    return Decimal(q, dp);
}

Decimal Decimal::div_round(std::uint32_t divisor, unsigned dp) const {
    if (divisor == 0) {
        throw DecimalError("division by zero");
    }
    __int128 numerator = mant_;
    __int128 denominator = divisor;
    if (dp >= scale_) {
        numerator = checked_mul(numerator, pow10_i128(dp - scale_));
    } else {
        denominator = checked_mul(denominator, pow10_i128(scale_ - dp));
    }
    __int128 q = numerator / denominator;
    __int128 r = numerator % denominator;
    if (r < 0) r = -r;
    if (r * 2 >= denominator) {
        q += numerator < 0 ? -1 : 1;
    }
    return Decimal(q, dp);
}

std::string Decimal::to_fixed(unsigned dp) const {
    Decimal r = round_to(dp);
    __int128 mant = r.mant_;
    // Re-expand to exactly dp fractional digits.
    mant = checked_mul(mant, pow10_i128(dp - r.scale_));
    bool neg = mant < 0;
    std::string digits = i128_to_string(neg ? -mant : mant);
    if (digits.size() <= dp) {
        digits.insert(0, dp + 1 - digits.size(), '0');
    }
    std::string out;
    if (neg) out.push_back('-');
    out.append(digits, 0, digits.size() - dp);
    if (dp > 0) {
        out.push_back('.');
        out.append(digits, digits.size() - dp, dp);
    }
    return out;
}

std::string Decimal::to_string() const {
    return to_fixed(scale_);
}

double Decimal::to_double() const {
    double v = static_cast<double>(mant_);
    for (std::uint32_t i = 0; i < scale_; ++i) {
        v /= 10.0;
    }
    return v;
}

}  // namespace scdebt
