#include "medlat/position.h"

#include "medlat/error.h"

namespace medlat {

std::string to_string(Position p) {
    switch (p) {
    case Position::initial: return "initial";
    case Position::middle: return "middle";
    case Position::final: return "final";
    case Position::anywhere: return "anywhere";
    }
    return "anywhere";
}

Position parse_position(std::string_view s) {
    if (s == "initial") return Position::initial;
    if (s == "middle") return Position::middle;
    if (s == "final") return Position::final;
    if (s == "anywhere") return Position::anywhere;
    throw Error("InvalidPosition", "'" + std::string(s) + "'");
}

} // namespace medlat
