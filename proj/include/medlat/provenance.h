#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace medlat {

// One training pass recorded on a model: which datasets it saw and whether it
// continued from an earlier model.
struct TrainingStage {
    std::vector<std::string> datasets;
    int epochs = 0;
    bool was_continued = false;
    std::uint64_t seed = 0;

    bool operator==(const TrainingStage&) const = default;
};

using ConfigMetadata = std::vector<std::pair<std::string, std::string>>;

} // namespace medlat
