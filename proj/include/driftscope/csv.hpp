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

#ifndef DRIFTSCOPE_CSV_HPP
#define DRIFTSCOPE_CSV_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace driftscope {

/// In-memory CSV table. Header row is required; field order is preserved.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Case-insensitive lookup, ignoring whitespace and punctuation
    /// ('Actual.start.date' matches 'actual start date').
    std::optional<std::size_t> find_column(std::string_view name) const;

    /// Like find_column but throws MissingColumn.
    std::size_t require_column(std::string_view name) const;

    const std::string& cell(std::size_t row, std::size_t col) const { return rows[row][col]; }
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

/// Quotes fields containing separators; terminates lines with '\n'.
std::string to_csv_line(const std::vector<std::string>& fields);

// Text helpers shared by loaders and config parsing.
std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
/// Lowercase with everything but [a-z0-9] removed; used for header matching.
std::string normalize_key(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::optional<double> parse_double(std::string_view s);
std::optional<long> parse_int(std::string_view s);

/// snprintf-backed double formatting ("%.17g" round-trips exactly).
std::string format_double(double v, int precision = 17);

} // namespace driftscope

#endif
