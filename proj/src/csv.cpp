/*
 * Copyright 2026 The Driftscope Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "driftscope/csv.hpp"

#include "driftscope/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace driftscope {

namespace {

// One logical CSV record; handles quoted fields and embedded newlines.
bool next_record(std::string_view text, std::size_t& pos, std::vector<std::string>& out) {
    out.clear();
    if (pos >= text.size()) return false;
    std::string field;
    bool in_quotes = false;
    bool any = false;
    while (pos < text.size()) {
        char c = text[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field.push_back('"');
                    ++pos;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            ++pos;
            continue;
        }
        if (c == '"') {
            in_quotes = true;
            any = true;
            ++pos;
        } else if (c == ',') {
            out.push_back(field);
            field.clear();
            any = true;
            ++pos;
        } else if (c == '\r' || c == '\n') {
            if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
            ++pos;
            break;
        } else {
            field.push_back(c);
            any = true;
            ++pos;
        }
    }
    if (!any && out.empty() && field.empty()) return false; // blank line at EOF
    out.push_back(field);
    return true;
}

} // namespace

std::optional<std::size_t> CsvTable::find_column(std::string_view name) const {
    const std::string wanted = normalize_key(name);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (normalize_key(columns[i]) == wanted) return i;
    }
    return std::nullopt;
}

std::size_t CsvTable::require_column(std::string_view name) const {
    if (auto idx = find_column(name)) return *idx;
    throw Error(ErrorCode::MissingColumn, "column '" + std::string(name) + "' not found in header");
}

CsvTable parse_csv(std::string_view text) {
    // Skip a UTF-8 BOM if present.
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    CsvTable table;
    std::size_t pos = 0;
    std::vector<std::string> record;
    if (!next_record(text, pos, record)) {
        throw Error(ErrorCode::IoError, "empty CSV input (no header row)");
    }
    for (auto& f : record) table.columns.push_back(trim(f));

    while (next_record(text, pos, record)) {
        bool all_empty = true;
        for (auto& f : record) {
            if (!trim(f).empty()) { all_empty = false; break; }
        }
        if (all_empty) continue;
        for (auto& f : record) f = trim(f);
        record.resize(table.columns.size());
        table.rows.push_back(record);
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

std::string to_csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line.push_back(',');
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n\r") != std::string::npos) {
            line.push_back('"');
            for (char c : f) {
                if (c == '"') line.push_back('"');
                line.push_back(c);
            }
            line.push_back('"');
        } else {
            line += f;
        }
    }
    line.push_back('\n');
    return line;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string normalize_key(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u)) out.push_back(static_cast<char>(std::tolower(u)));
    }
    return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(std::string(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return parts;
}

std::optional<double> parse_double(std::string_view s) {
    const std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<long> parse_int(std::string_view s) {
    const std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    long value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
    return value;
}

std::string format_double(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

} // namespace driftscope
