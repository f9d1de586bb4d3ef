#pragma once

// Small text helpers shared by the library sources. Not installed.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "keymine/error.hpp"

namespace keymine::detail {

/// Locale-independent fixed-point formatting.
inline std::string format_fixed(double value, int precision) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
    if (ec != std::errc{}) throw ConsistencyError("number formatting failed");
    return std::string(buf, end);
}

inline std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

/// Splits on runs of spaces, dropping empty pieces.
inline std::vector<std::string_view> split_words(std::string_view s) {
    std::vector<std::string_view> out;
    for (auto piece : split(s, ' ')) {
        piece = trim(piece);
        if (!piece.empty()) out.push_back(piece);
    }
    return out;
}

inline std::string_view chomp(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

}  // namespace keymine::detail
