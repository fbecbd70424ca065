#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace medlat::text {

// UTF-8 <-> code points. Invalid bytes decode as their Latin-1 value.
std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view cps);
void append_utf8(std::string& out, char32_t cp);

// Case mapping covers ASCII, Latin-1 Supplement and Latin Extended-A, which is
// all the Latin editions in practice use.
char32_t to_lower(char32_t cp);
char32_t to_upper(char32_t cp);
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);

std::string lowercase(std::string_view utf8);
// Uppercases the first code point only.
std::string capitalize(std::string_view utf8);
bool starts_upper(std::string_view utf8);

std::size_t length(std::string_view utf8);
std::string prefix(std::string_view utf8, std::size_t n);
std::string suffix(std::string_view utf8, std::size_t n);

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string_view trim(std::string_view s);

// Comma-separated list, entries trimmed, empty entries dropped.
std::vector<std::string> split_list(std::string_view s);

} // namespace medlat::text
