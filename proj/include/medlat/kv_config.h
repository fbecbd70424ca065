#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace medlat {

// Minimal "key = value" file with optional [section] headers and '#' comments.
// Shared by the registry, scenario and CLI config files.
struct KvSection {
    std::string name; // empty for entries before the first header
    int line = 0;
    std::vector<std::pair<std::string, std::string>> entries;

    std::optional<std::string> get(const std::string& key) const;
};

struct KvFile {
    std::filesystem::path path;
    std::vector<KvSection> sections;

    const KvSection& root() const { return sections.front(); }
};

KvFile parse_kv(const std::string& text, const std::filesystem::path& origin = {});
KvFile read_kv(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace medlat
