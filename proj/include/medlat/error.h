#pragma once

#include <stdexcept>
#include <string>

namespace medlat {

// Every domain failure carries the module-defined error name ("MalformedLine",
// "AlignmentMismatch", ...) so the CLI and bindings can surface it verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)), detail_(detail) {}

    const std::string& kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

    // Same error kind, detail prefixed with the given context (file path, genre, run id).
    Error annotated(const std::string& context) const { return Error(kind_, context + ": " + detail_); }

private:
    std::string kind_;
    std::string detail_;
};

} // namespace medlat
