#include "medlat/text.h"

namespace medlat::text {

namespace {

std::size_t sequence_length(unsigned char lead) {
    if (lead < 0x80) return 1;
    if ((lead >> 5) == 0x6) return 2;
    if ((lead >> 4) == 0xE) return 3;
    if ((lead >> 3) == 0x1E) return 4;
    return 0;
}

} // namespace

std::u32string decode(std::string_view utf8) {
    std::u32string out;
    out.reserve(utf8.size());
    std::size_t i = 0;
    while (i < utf8.size()) {
        const auto lead = static_cast<unsigned char>(utf8[i]);
        const std::size_t len = sequence_length(lead);
        bool ok = len > 0 && i + len <= utf8.size();
        char32_t cp = 0;
        if (ok) {
            cp = len == 1 ? lead : lead & (0x7F >> len);
            for (std::size_t k = 1; k < len; ++k) {
                const auto cont = static_cast<unsigned char>(utf8[i + k]);
                if ((cont >> 6) != 0x2) {
                    ok = false;
                    break;
                }
                cp = (cp << 6) | (cont & 0x3F);
            }
        }
        if (!ok) {
            out.push_back(lead);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode(std::u32string_view cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) append_utf8(out, cp);
    return out;
}

char32_t to_lower(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 32;
    if (cp < 0xC0) return cp;
    if (cp <= 0xDE) return cp == 0xD7 ? cp : cp + 32;
    if (cp >= 0x100 && cp <= 0x137) return cp | 1;
    if (cp >= 0x139 && cp <= 0x148) return (cp & 1) ? cp + 1 : cp;
    if (cp >= 0x14A && cp <= 0x177) return cp | 1;
    if (cp == 0x178) return 0xFF;
    if (cp >= 0x179 && cp <= 0x17E) return (cp & 1) ? cp + 1 : cp;
    return cp;
}

char32_t to_upper(char32_t cp) {
    if (cp >= U'a' && cp <= U'z') return cp - 32;
    if (cp < 0xE0) return cp;
    if (cp <= 0xFE) return cp == 0xF7 ? cp : cp - 32;
    if (cp == 0xFF) return 0x178;
    if (cp >= 0x100 && cp <= 0x137) return cp & ~char32_t{1};
    if (cp >= 0x139 && cp <= 0x148) return (cp & 1) ? cp : cp - 1;
    if (cp >= 0x14A && cp <= 0x177) return cp & ~char32_t{1};
    if (cp >= 0x179 && cp <= 0x17E) return (cp & 1) ? cp : cp - 1;
    return cp;
}

bool is_upper(char32_t cp) { return to_lower(cp) != cp; }
bool is_lower(char32_t cp) { return to_upper(cp) != cp; }

std::string lowercase(std::string_view utf8) {
    std::u32string cps = decode(utf8);
    for (auto& c : cps) c = to_lower(c);
    return encode(cps);
}

std::string capitalize(std::string_view utf8) {
    std::u32string cps = decode(utf8);
    if (!cps.empty()) cps[0] = to_upper(cps[0]);
    return encode(cps);
}

bool starts_upper(std::string_view utf8) {
    const std::u32string cps = decode(utf8.substr(0, 4));
    return !cps.empty() && is_upper(cps[0]);
}

std::size_t length(std::string_view utf8) { return decode(utf8).size(); }

std::string prefix(std::string_view utf8, std::size_t n) {
    const std::u32string cps = decode(utf8);
    return encode(std::u32string_view(cps).substr(0, n));
}

std::string suffix(std::string_view utf8, std::size_t n) {
    const std::u32string cps = decode(utf8);
    if (n >= cps.size()) return encode(cps);
    return encode(std::u32string_view(cps).substr(cps.size() - n));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(s.substr(start));
            return parts;
        }
        parts.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    for (const auto& part : split(s, ',')) {
        const auto t = trim(part);
        if (!t.empty()) out.emplace_back(t);
    }
    return out;
}

} // namespace medlat::text
