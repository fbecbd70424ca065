#pragma once

#include <string>
#include <string_view>

namespace medlat {

// Where in a word a substring sits: initial = starts at index 0, final = ends
// at the last index, middle = neither. Rewrite rules may also be unanchored.
enum class Position { initial, middle, final, anywhere };

std::string to_string(Position p);
Position parse_position(std::string_view s);

// A positional gold-vs-predicted substring discrepancy, e.g. "u:v" initial.
// Either side may be empty, not both.
struct ConfusionPattern {
    std::string gold_sub;
    std::string pred_sub;
    Position position = Position::initial;
    long count = 1;

    std::string pattern() const { return gold_sub + ":" + pred_sub; }

    bool operator==(const ConfusionPattern&) const = default;
};

} // namespace medlat
