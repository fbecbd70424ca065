#include "medlat/kv_config.h"

#include "medlat/error.h"
#include "medlat/text.h"

#include <fstream>
#include <sstream>

namespace medlat {

std::optional<std::string> KvSection::get(const std::string& key) const {
    // last assignment wins
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        if (it->first == key) return it->second;
    }
    return std::nullopt;
}

KvFile parse_kv(const std::string& text, const std::filesystem::path& origin) {
    KvFile file;
    file.path = origin;
    file.sections.push_back(KvSection{});
    int line_no = 0;
    for (const auto& raw : text::split(text, '\n')) {
        ++line_no;
        const auto line = text::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw Error("ConfigSyntax", origin.string() + ":" + std::to_string(line_no) + ": bad section header");
            }
            file.sections.push_back(KvSection{std::string(text::trim(line.substr(1, line.size() - 2))), line_no, {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error("ConfigSyntax", origin.string() + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = text::trim(line.substr(0, eq));
        if (key.empty()) {
            throw Error("ConfigSyntax", origin.string() + ":" + std::to_string(line_no) + ": empty key");
        }
        file.sections.back().entries.emplace_back(std::string(key), std::string(text::trim(line.substr(eq + 1))));
    }
    return file;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("IoError", "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("IoError", "cannot write " + path.string());
    out << content;
    if (!out) throw Error("IoError", "write failed for " + path.string());
}

KvFile read_kv(const std::filesystem::path& path) { return parse_kv(read_file(path), path); }

} // namespace medlat
