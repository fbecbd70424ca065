#include "medlat/decimal.h"

#include "medlat/error.h"

#include <cstdlib>

namespace medlat {

Decimal2 Decimal2::ratio(std::int64_t num, std::int64_t den, std::int64_t scale) {
    if (den <= 0 || num < 0) throw Error("InvalidArgument", "ratio requires num >= 0, den > 0");
    // floor((200 * scale * num + den) / (2 * den)) == round-half-up(100 * scale * num / den)
    const __int128 n = static_cast<__int128>(num) * scale * 200 + den;
    const __int128 d = static_cast<__int128>(den) * 2;
    return from_hundredths(static_cast<std::int64_t>(n / d));
}

Decimal2 Decimal2::parse(std::string_view s) {
    if (s.empty()) throw Error("InvalidDecimal", "empty decimal");
    bool negative = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        negative = s[0] == '-';
        ++i;
    }
    std::int64_t whole = 0;
    std::int64_t frac = 0;
    int frac_digits = 0;
    bool round_up = false;
    bool seen_digit = false;
    bool in_frac = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '.' && !in_frac) {
            in_frac = true;
            continue;
        }
        if (c < '0' || c > '9') throw Error("InvalidDecimal", "not a decimal: '" + std::string(s) + "'");
        seen_digit = true;
        if (!in_frac) {
            whole = whole * 10 + (c - '0');
        } else if (frac_digits < 2) {
            frac = frac * 10 + (c - '0');
            ++frac_digits;
        } else if (frac_digits == 2) {
            round_up = c >= '5';
            ++frac_digits;
        }
    }
    if (!seen_digit) throw Error("InvalidDecimal", "not a decimal: '" + std::string(s) + "'");
    while (frac_digits < 2) {
        frac *= 10;
        ++frac_digits;
    }
    std::int64_t h = whole * 100 + frac + (round_up ? 1 : 0);
    return from_hundredths(negative ? -h : h);
}

std::string Decimal2::str() const {
    const std::int64_t a = std::llabs(hundredths_);
    std::string out = hundredths_ < 0 ? "-" : "";
    out += std::to_string(a / 100);
    out += '.';
    out += static_cast<char>('0' + (a % 100) / 10);
    out += static_cast<char>('0' + a % 10);
    return out;
}

} // namespace medlat
