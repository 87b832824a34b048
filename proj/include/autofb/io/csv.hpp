#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "autofb/errors.hpp"

namespace autofb::io {

namespace detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    return fields;
}

}  // namespace detail

// Reads a CSV of `columns` fields per row. A first row whose fields are
// non-numeric where numbers are expected is treated as a header and
// skipped; blank lines and #-comments are ignored.
inline std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                                      std::size_t columns,
                                                      std::size_t numeric_from) {
    std::ifstream in(path);
    if (!in) throw UnreadableFile("cannot open " + path.string());

    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        const std::string trimmed = detail::trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        auto fields = detail::split_csv_line(trimmed);
        if (fields.size() != columns)
            throw UnreadableFile(path.string() + ": expected " + std::to_string(columns) +
                                 " fields, got " + std::to_string(fields.size()) + " in '" +
                                 trimmed + "'");
        if (first) {
            first = false;
            char* end = nullptr;
            std::strtod(fields[numeric_from].c_str(), &end);
            const bool numeric = end && *end == '\0' && !fields[numeric_from].empty();
            if (!numeric) continue;  // header row
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

inline double parse_double(const std::string& s, const std::string& context) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (!end || *end != '\0' || s.empty())
        throw UnreadableFile(context + ": not a number: '" + s + "'");
    return v;
}

inline long parse_long(const std::string& s, const std::string& context) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (!end || *end != '\0' || s.empty())
        throw UnreadableFile(context + ": not an integer: '" + s + "'");
    return v;
}

}  // namespace autofb::io
