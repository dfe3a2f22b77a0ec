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

#include "driftscope/ingest.hpp"

#include "driftscope/csv.hpp"
#include "driftscope/error.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>

namespace driftscope {

namespace {

bool is_missing(std::string_view field) {
    const std::string t = trim(field);
    return t.empty() || t == "?" || t == "NA" || t == "na";
}

double require_positive(const std::string& field, std::string_view what, std::string_view row_id) {
    auto v = parse_double(field);
    if (!v) {
        throw Error(ErrorCode::NonPositiveValue, "row '" + std::string(row_id) + "': '" +
                                                     std::string(what) + "' is not numeric ('" +
                                                     field + "')");
    }
    if (!(*v > 0.0)) {
        throw Error(ErrorCode::NonPositiveValue, "row '" + std::string(row_id) + "': '" +
                                                     std::string(what) + "' must be positive (" +
                                                     field + ")");
    }
    return *v;
}

int require_year(const std::string& field, std::string_view row_id) {
    auto v = parse_int(field);
    if (!v) {
        throw Error(ErrorCode::BadYear,
                    "row '" + std::string(row_id) + "': bad completion year '" + field + "'");
    }
    int year = static_cast<int>(*v);
    if (year < 100) year += year >= 60 ? 1900 : 2000;
    return year;
}

// COCOMO81 effort-multiplier values per rating (Boehm 1981). Used only to
// turn symbolic ratings into the numeric product; the a/b calibration
// constants are intentionally absent (coefficients come from regression).
const std::map<std::string, std::map<std::string, double>>& cocomo81_multipliers() {
    static const std::map<std::string, std::map<std::string, double>> table = {
        {"rely", {{"vl", 0.75}, {"l", 0.88}, {"n", 1.00}, {"h", 1.15}, {"vh", 1.40}}},
        {"data", {{"l", 0.94}, {"n", 1.00}, {"h", 1.08}, {"vh", 1.16}}},
        {"cplx", {{"vl", 0.70}, {"l", 0.85}, {"n", 1.00}, {"h", 1.15}, {"vh", 1.30}, {"xh", 1.65}}},
        {"time", {{"n", 1.00}, {"h", 1.11}, {"vh", 1.30}, {"xh", 1.66}}},
        {"stor", {{"n", 1.00}, {"h", 1.06}, {"vh", 1.21}, {"xh", 1.56}}},
        {"virt", {{"l", 0.87}, {"n", 1.00}, {"h", 1.15}, {"vh", 1.30}}},
        {"turn", {{"l", 0.87}, {"n", 1.00}, {"h", 1.07}, {"vh", 1.15}}},
        {"acap", {{"vh", 0.71}, {"h", 0.86}, {"n", 1.00}, {"l", 1.19}, {"vl", 1.46}}},
        {"aexp", {{"vh", 0.82}, {"h", 0.91}, {"n", 1.00}, {"l", 1.13}, {"vl", 1.29}}},
        {"pcap", {{"vh", 0.70}, {"h", 0.86}, {"n", 1.00}, {"l", 1.17}, {"vl", 1.42}}},
        {"vexp", {{"h", 0.90}, {"n", 1.00}, {"l", 1.10}, {"vl", 1.21}}},
        {"lexp", {{"h", 0.95}, {"n", 1.00}, {"l", 1.07}, {"vl", 1.14}}},
        {"modp", {{"vh", 0.82}, {"h", 0.91}, {"n", 1.00}, {"l", 1.10}, {"vl", 1.24}}},
        {"tool", {{"vh", 0.83}, {"h", 0.91}, {"n", 1.00}, {"l", 1.10}, {"vl", 1.24}}},
        {"sced", {{"vh", 1.10}, {"h", 1.04}, {"n", 1.00}, {"l", 1.08}, {"vl", 1.23}}},
    };
    return table;
}

constexpr std::array<const char*, 15> kNasa93Drivers = {
    "rely", "data", "cplx", "time", "stor", "virt", "turn", "acap",
    "aexp", "pcap", "vexp", "lexp", "modp", "tool", "sced"};

double driver_value(const std::string& driver, const std::string& field, std::string_view row_id) {
    if (auto v = parse_double(field)) {
        if (!(*v > 0.0)) {
            throw Error(ErrorCode::NonPositiveValue,
                        "row '" + std::string(row_id) + "': multiplier '" + driver +
                            "' must be positive");
        }
        return *v;
    }
    const auto& table = cocomo81_multipliers().at(driver);
    const std::string rating = to_lower(trim(field));
    auto it = table.find(rating);
    if (it == table.end()) {
        throw Error(ErrorCode::UnknownRating, "row '" + std::string(row_id) + "': rating '" +
                                                  field + "' undefined for driver '" + driver +
                                                  "'");
    }
    return it->second;
}

std::string row_label(const CsvTable& table, std::size_t row,
                      std::optional<std::size_t> id_col) {
    if (id_col && !trim(table.cell(row, *id_col)).empty()) return trim(table.cell(row, *id_col));
    return std::to_string(row + 2); // 1-based file line, after the header
}

} // namespace

LoadResult load_nasa93(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    LoadResult result;

    const auto id_col = table.find_column("recordnumber");
    const std::size_t year_col = table.require_column("year");
    const std::size_t mode_col = table.require_column("mode");
    std::size_t kloc_col;
    if (auto c = table.find_column("equivphyskloc")) {
        kloc_col = *c;
    } else {
        kloc_col = table.require_column("kloc");
    }
    std::size_t effort_col;
    if (auto c = table.find_column("act_effort")) {
        effort_col = *c;
    } else {
        effort_col = table.require_column("effort");
    }
    std::array<std::size_t, 15> driver_cols{};
    for (std::size_t i = 0; i < kNasa93Drivers.size(); ++i) {
        driver_cols[i] = table.require_column(kNasa93Drivers[i]);
    }

    static const std::vector<std::string> kModes = {"organic", "semidetached", "embedded"};

    std::vector<ProjectRecord> records;
    for (std::size_t row = 0; row < table.rows.size(); ++row) {
        const std::string label = row_label(table, row, id_col);
        ProjectRecord rec;
        rec.id = label;
        rec.completion_year = require_year(table.cell(row, year_col), label);
        rec.size = require_positive(table.cell(row, kloc_col), "kloc", label);
        rec.effort = require_positive(table.cell(row, effort_col), "effort", label);

        const std::string mode = to_lower(trim(table.cell(row, mode_col)));
        if (std::find(kModes.begin(), kModes.end(), mode) == kModes.end()) {
            throw Error(ErrorCode::UnknownMode,
                        "row '" + label + "': unknown development mode '" + mode + "'");
        }
        rec.categoricals["mode"] = mode;

        double eaf = 1.0;
        for (std::size_t i = 0; i < kNasa93Drivers.size(); ++i) {
            eaf *= driver_value(kNasa93Drivers[i], table.cell(row, driver_cols[i]), label);
        }
        rec.numerics["eaf"] = eaf;
        records.push_back(std::move(rec));
    }

    if (records.size() != 93) {
        result.diagnostics.push_back({Diagnostic::Level::Warning, "RowCountMismatch",
                                      "expected 93 rows, loaded " +
                                          std::to_string(records.size()),
                                      ""});
    }

    ModelSpec spec;
    spec.response = {"effort", true};
    spec.terms.push_back(NumericTerm{"kloc", true});
    spec.terms.push_back(NumericTerm{"eaf", true});
    spec.terms.push_back(CategoricalTerm{"mode", "organic", kModes});

    // One calendar month of effort corresponds to 152 person-hours; recorded
    // as metadata only, never applied to the values.
    result.dataset = make_dataset("nasa93", std::move(records), std::move(spec),
                                  EffortUnit{"calendar-months", 152.0}, "kloc");
    return result;
}

LoadResult load_desharnais(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    LoadResult result;

    const auto id_col = table.find_column("project");
    const std::size_t year_col = table.require_column("yearend");
    const std::size_t effort_col = table.require_column("effort");
    std::size_t size_col;
    if (auto c = table.find_column("pointsajust")) {
        size_col = *c;
    } else if (auto c2 = table.find_column("pointsadjust")) {
        size_col = *c2;
    } else {
        size_col = table.require_column("adjusted_fp");
    }
    const std::size_t language_col = table.require_column("language");

    // The two experience attributes mark missing data with -1 in the CSV
    // distribution of this dataset.
    const auto teamexp_col = table.find_column("teamexp");
    const auto managerexp_col = table.find_column("managerexp");

    std::vector<ProjectRecord> records;
    std::vector<std::string> levels;
    for (std::size_t row = 0; row < table.rows.size(); ++row) {
        const std::string label = row_label(table, row, id_col);

        bool missing = false;
        for (std::size_t col = 0; col < table.columns.size(); ++col) {
            if (is_missing(table.cell(row, col))) {
                missing = true;
                break;
            }
        }
        for (auto exp_col : {teamexp_col, managerexp_col}) {
            if (exp_col) {
                auto v = parse_double(table.cell(row, *exp_col));
                if (v && *v < 0.0) missing = true;
            }
        }
        if (missing) {
            result.dropped_record_ids.push_back(label);
            continue;
        }

        ProjectRecord rec;
        rec.id = label;
        rec.completion_year = require_year(table.cell(row, year_col), label);
        rec.effort = require_positive(table.cell(row, effort_col), "effort", label);
        rec.size = require_positive(table.cell(row, size_col), "adjusted_fp", label);
        const std::string language = trim(table.cell(row, language_col));
        rec.categoricals["language"] = language;
        if (std::find(levels.begin(), levels.end(), language) == levels.end()) {
            levels.push_back(language);
        }
        records.push_back(std::move(rec));
    }
    std::sort(levels.begin(), levels.end());

    if (!result.dropped_record_ids.empty()) {
        std::string ids;
        for (const auto& id : result.dropped_record_ids) ids += (ids.empty() ? "" : ", ") + id;
        result.diagnostics.push_back({Diagnostic::Level::Info, "DroppedMissing",
                                      std::to_string(result.dropped_record_ids.size()) +
                                          " record(s) dropped for missing data: " + ids,
                                      ""});
    }

    ModelSpec spec;
    spec.response = {"effort", true};
    spec.terms.push_back(NumericTerm{"adjusted_fp", true});
    CategoricalTerm language_term{"language", "1", levels};
    if (std::find(levels.begin(), levels.end(), "1") == levels.end() && !levels.empty()) {
        language_term.reference_level = levels.front();
        result.diagnostics.push_back({Diagnostic::Level::Warning, "MissingReferenceLevel",
                                      "language level '1' absent; using '" + levels.front() +
                                          "' as reference",
                                      ""});
    }
    spec.terms.push_back(std::move(language_term));

    result.dataset = make_dataset("desharnais", std::move(records), std::move(spec),
                                  EffortUnit{"person-hours", 1.0}, "adjusted_fp");
    return result;
}

LoadResult load_kitchenham(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    LoadResult result;

    const auto id_col = table.find_column("id");
    const std::size_t client_col = table.require_column("client code");
    const std::size_t type_col = table.require_column("project type");
    const std::size_t start_col = table.require_column("actual start date");
    const std::size_t duration_col = table.require_column("actual duration");
    const std::size_t effort_col = table.require_column("actual effort");
    std::size_t size_col;
    if (auto c = table.find_column("adjusted function points")) {
        size_col = *c;
    } else {
        size_col = table.require_column("first estimate"); // degraded fallback
    }

    auto canonical_type = [](const std::string& raw) -> std::string {
        const std::string t = to_lower(trim(raw));
        if (t == "d" || t == "development") return "Development";
        if (t == "p" || t == "perfective") return "Perfective";
        return trim(raw);
    };

    std::vector<ProjectRecord> records;
    std::vector<std::string> levels;
    int development = 0, perfective = 0;
    for (std::size_t row = 0; row < table.rows.size(); ++row) {
        if (trim(table.cell(row, client_col)) != "2") continue;
        const std::string label = row_label(table, row, id_col);

        ProjectRecord rec;
        rec.id = label;
        rec.start_date = parse_date(table.cell(row, start_col));
        auto duration = parse_int(table.cell(row, duration_col));
        if (!duration || *duration < 0) {
            throw Error(ErrorCode::BadDate,
                        "row '" + label + "': bad duration '" + table.cell(row, duration_col) + "'");
        }
        rec.duration_days = static_cast<int>(*duration);
        if (*duration == 0) {
            result.diagnostics.push_back({Diagnostic::Level::Warning, "ZeroDuration",
                                          "completion date equals start date", label});
        }
        rec.completion_year = rec.start_date->plus_days(*rec.duration_days).year;
        rec.effort = require_positive(table.cell(row, effort_col), "effort", label);
        rec.size = require_positive(table.cell(row, size_col), "size", label);

        const std::string type = canonical_type(table.cell(row, type_col));
        rec.categoricals["type"] = type;
        if (type == "Development") ++development;
        if (type == "Perfective") ++perfective;
        if (std::find(levels.begin(), levels.end(), type) == levels.end()) levels.push_back(type);
        records.push_back(std::move(rec));
    }
    std::sort(levels.begin(), levels.end());

    result.diagnostics.push_back({Diagnostic::Level::Info, "ClientFilter",
                                  "kept " + std::to_string(records.size()) +
                                      " client-2 records (" + std::to_string(perfective) +
                                      " perfective, " + std::to_string(development) +
                                      " development)",
                                  ""});

    ModelSpec spec;
    spec.response = {"effort", true};
    spec.terms.push_back(NumericTerm{"size", true});
    CategoricalTerm type_term{"type", "Development", levels};
    if (std::find(levels.begin(), levels.end(), "Development") == levels.end() &&
        !levels.empty()) {
        type_term.reference_level = levels.front();
        result.diagnostics.push_back({Diagnostic::Level::Warning, "MissingReferenceLevel",
                                      "type 'Development' absent; using '" + levels.front() +
                                          "' as reference",
                                      ""});
    }
    spec.terms.push_back(std::move(type_term));

    result.dataset = make_dataset("kitchenham", std::move(records), std::move(spec),
                                  EffortUnit{"person-hours", 1.0}, "size");
    return result;
}

SchemaConfig parse_schema_config_text(std::string_view text) {
    SchemaConfig config;
    std::map<std::string, SchemaConfig::Categorical> categoricals;
    std::map<std::string, SchemaConfig::ExtraNumeric> numerics;

    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::ConfigMismatch,
                        "schema line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = to_lower(trim(stripped.substr(0, eq)));
        const std::string value = trim(stripped.substr(eq + 1));

        auto parse_bool = [&](const std::string& v) {
            const std::string t = to_lower(v);
            if (t == "true" || t == "yes" || t == "1") return true;
            if (t == "false" || t == "no" || t == "0") return false;
            throw Error(ErrorCode::ConfigMismatch,
                        "schema line " + std::to_string(line_no) + ": bad boolean '" + v + "'");
        };

        if (key == "name") {
            config.name = value;
        } else if (key == "id") {
            config.id_column = value;
        } else if (key == "effort") {
            config.effort_column = value;
        } else if (key == "size") {
            config.size_column = value;
        } else if (key == "time") {
            config.time_column = value;
        } else if (key == "time_kind") {
            const std::string t = to_lower(value);
            if (t == "year") {
                config.time_is_date = false;
            } else if (t == "date") {
                config.time_is_date = true;
            } else {
                throw Error(ErrorCode::ConfigMismatch, "time_kind must be 'year' or 'date'");
            }
        } else if (key == "log_effort") {
            config.log_effort = parse_bool(value);
        } else if (key == "log_size") {
            config.log_size = parse_bool(value);
        } else if (key == "effort_unit") {
            config.effort_unit = value;
        } else if (key.rfind("categorical.", 0) == 0) {
            const auto rest = key.substr(12);
            const auto dot = rest.rfind('.');
            if (dot == std::string::npos) {
                throw Error(ErrorCode::ConfigMismatch,
                            "expected categorical.<column>.levels or .reference");
            }
            const std::string column = rest.substr(0, dot);
            const std::string field = rest.substr(dot + 1);
            auto& cat = categoricals[column];
            cat.column = column;
            if (field == "levels") {
                cat.levels.clear();
                for (const auto& level : split(value, ',')) cat.levels.push_back(trim(level));
            } else if (field == "reference") {
                cat.reference = value;
            } else {
                throw Error(ErrorCode::ConfigMismatch,
                            "unknown categorical field '" + field + "'");
            }
        } else if (key.rfind("numeric.", 0) == 0) {
            const auto rest = key.substr(8);
            const auto dot = rest.rfind('.');
            if (dot == std::string::npos || rest.substr(dot + 1) != "log") {
                throw Error(ErrorCode::ConfigMismatch, "expected numeric.<column>.log");
            }
            const std::string column = rest.substr(0, dot);
            auto& num = numerics[column];
            num.column = column;
            num.log_transform = parse_bool(value);
        } else {
            throw Error(ErrorCode::ConfigMismatch, "unknown schema key '" + key + "'");
        }
    }

    if (config.effort_column.empty() || config.size_column.empty() || config.time_column.empty()) {
        throw Error(ErrorCode::ConfigMismatch,
                    "schema must name effort, size and time columns");
    }
    for (auto& [_, cat] : categoricals) config.categoricals.push_back(std::move(cat));
    for (auto& [_, num] : numerics) config.numerics.push_back(std::move(num));
    return config;
}

SchemaConfig parse_schema_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_schema_config_text(buf.str());
}

LoadResult load_generic(const std::filesystem::path& path, const SchemaConfig& config) {
    const CsvTable table = read_csv(path);
    LoadResult result;

    auto require_config_column = [&](const std::string& name) {
        auto col = table.find_column(name);
        if (!col) {
            throw Error(ErrorCode::ConfigMismatch,
                        "schema references column '" + name + "' absent from '" +
                            path.filename().string() + "'");
        }
        return *col;
    };

    std::optional<std::size_t> id_col;
    if (!config.id_column.empty()) id_col = require_config_column(config.id_column);
    const std::size_t effort_col = require_config_column(config.effort_column);
    const std::size_t size_col = require_config_column(config.size_column);
    const std::size_t time_col = require_config_column(config.time_column);
    std::vector<std::pair<std::size_t, const SchemaConfig::Categorical*>> cat_cols;
    for (const auto& cat : config.categoricals) {
        cat_cols.emplace_back(require_config_column(cat.column), &cat);
    }
    std::vector<std::pair<std::size_t, const SchemaConfig::ExtraNumeric*>> num_cols;
    for (const auto& num : config.numerics) {
        num_cols.emplace_back(require_config_column(num.column), &num);
    }

    std::vector<ProjectRecord> records;
    std::map<std::string, std::vector<std::string>> seen_levels;
    for (std::size_t row = 0; row < table.rows.size(); ++row) {
        const std::string label = row_label(table, row, id_col);
        ProjectRecord rec;
        rec.id = label;
        rec.effort = require_positive(table.cell(row, effort_col), config.effort_column, label);
        rec.size = require_positive(table.cell(row, size_col), config.size_column, label);
        if (config.time_is_date) {
            const Date date = parse_date(table.cell(row, time_col));
            rec.completion_year = date.year;
        } else {
            rec.completion_year = require_year(table.cell(row, time_col), label);
        }
        for (const auto& [col, cat] : cat_cols) {
            const std::string level = trim(table.cell(row, col));
            rec.categoricals[cat->column] = level;
            auto& levels = seen_levels[cat->column];
            if (std::find(levels.begin(), levels.end(), level) == levels.end()) {
                levels.push_back(level);
            }
        }
        for (const auto& [col, num] : num_cols) {
            auto v = parse_double(table.cell(row, col));
            if (!v) {
                throw Error(ErrorCode::NonPositiveValue, "row '" + label + "': '" + num->column +
                                                             "' is not numeric");
            }
            rec.numerics[num->column] = *v;
        }
        records.push_back(std::move(rec));
    }

    ModelSpec spec;
    spec.response = {"effort", config.log_effort};
    spec.terms.push_back(NumericTerm{"size", config.log_size});
    for (const auto& num : config.numerics) {
        spec.terms.push_back(NumericTerm{num.column, num.log_transform});
    }
    for (const auto& cat : config.categoricals) {
        CategoricalTerm term;
        term.name = cat.column;
        term.levels = cat.levels.empty() ? seen_levels[cat.column] : cat.levels;
        if (term.levels.empty()) {
            throw Error(ErrorCode::ConfigMismatch,
                        "categorical column '" + cat.column + "' has no levels");
        }
        term.reference_level = cat.reference.empty() ? term.levels.front() : cat.reference;
        spec.terms.push_back(std::move(term));
    }

    result.dataset = make_dataset(config.name, std::move(records), std::move(spec),
                                  EffortUnit{config.effort_unit, 1.0}, "size");
    return result;
}

LoadResult load_named(std::string_view family, const std::filesystem::path& path) {
    const std::string f = to_lower(family);
    if (f == "nasa93") return load_nasa93(path);
    if (f == "desharnais") return load_desharnais(path);
    if (f == "kitchenham") return load_kitchenham(path);
    throw Error(ErrorCode::ConfigMismatch, "unknown dataset family '" + std::string(family) + "'");
}

} // namespace driftscope
