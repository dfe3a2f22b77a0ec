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

#ifndef DRIFTSCOPE_INGEST_HPP
#define DRIFTSCOPE_INGEST_HPP

#include "driftscope/dataset.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace driftscope {

/// Structured loader diagnostic; serialized as JSON by the CLI.
struct Diagnostic {
    enum class Level { Warning, Info };
    Level level = Level::Warning;
    std::string code;
    std::string message;
    std::string record_id;
};

struct LoadResult {
    Dataset dataset;
    std::vector<Diagnostic> diagnostics;
    std::vector<std::string> dropped_record_ids;
};

/// NASA93 (COCOMO81 layout): 15 effort-multiplier columns, development mode,
/// KLOC, effort in calendar months, completion year. Each record gains
/// EAF = product of the multipliers; symbolic ratings (vl..xh) are mapped
/// through the published COCOMO81 multiplier values, numeric entries are
/// taken as-is. Model: ln(effort) ~ ln(kloc) + ln(eaf) + mode dummies
/// (reference 'organic'). A row count other than 93 is a warning, not fatal.
LoadResult load_nasa93(const std::filesystem::path& path);

/// Desharnais layout: adjusted function points, 3-level language, effort in
/// person-hours, two-digit completion year. Records with any missing field
/// ('?', empty, or the -1 sentinel) are dropped and reported. Model:
/// ln(effort) ~ ln(adjusted_fp) + language dummies (reference '1').
LoadResult load_desharnais(const std::filesystem::path& path);

/// Kitchenham layout: client code, project type, actual start date, duration
/// in days, effort, adjusted function points. Keeps client-2 projects;
/// completion date = start + duration. Model: ln(effort) ~ ln(size) + type
/// dummies (reference 'Development').
LoadResult load_kitchenham(const std::filesystem::path& path);

/// Declarative schema for load_generic. See the repo docs for the key-value
/// file format.
struct SchemaConfig {
    std::string name = "generic";
    std::string id_column;     // optional; row number when empty
    std::string effort_column; // required
    std::string size_column;   // required
    std::string time_column;   // required
    bool time_is_date = false; // year column vs full completion date
    bool log_effort = true;
    bool log_size = true;
    std::string effort_unit = "person-hours";
    struct Categorical {
        std::string column;
        std::string reference; // defaults to first level
        std::vector<std::string> levels; // empty: inferred in file order
    };
    std::vector<Categorical> categoricals;
    struct ExtraNumeric {
        std::string column;
        bool log_transform = false;
    };
    std::vector<ExtraNumeric> numerics;
};

SchemaConfig parse_schema_config(const std::filesystem::path& path);
SchemaConfig parse_schema_config_text(std::string_view text);

LoadResult load_generic(const std::filesystem::path& path, const SchemaConfig& config);

/// Dispatch by dataset family name: nasa93 | desharnais | kitchenham.
LoadResult load_named(std::string_view family, const std::filesystem::path& path);

} // namespace driftscope

#endif
