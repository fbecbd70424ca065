#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace medlat {

// A non-negative-or-negative decimal with exactly two fractional digits, stored
// as an integer count of hundredths. Used for averages and accuracy
// percentages so that rounding and printing are exact.
class Decimal2 {
public:
    constexpr Decimal2() = default;

    static constexpr Decimal2 from_hundredths(std::int64_t h) {
        Decimal2 d;
        d.hundredths_ = h;
        return d;
    }

    // scale * num / den rounded half-up to two decimals; num, den >= 0, den > 0.
    static Decimal2 ratio(std::int64_t num, std::int64_t den, std::int64_t scale = 1);

    // Parses "27.12", "96.1", "-3", "0.005" (extra digits rounded half-up).
    static Decimal2 parse(std::string_view s);

    constexpr std::int64_t hundredths() const { return hundredths_; }
    double value() const { return static_cast<double>(hundredths_) / 100.0; }
    std::string str() const;

    friend constexpr auto operator<=>(Decimal2, Decimal2) = default;

private:
    std::int64_t hundredths_ = 0;
};

} // namespace medlat
