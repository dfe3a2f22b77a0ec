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

#ifndef DRIFTSCOPE_DATASET_HPP
#define DRIFTSCOPE_DATASET_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace driftscope {

/// Proleptic Gregorian calendar date with day arithmetic.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    bool valid() const;
    /// Days since 1970-01-01 (negative before).
    long to_days() const;
    static Date from_days(long days);
    Date plus_days(long days) const { return from_days(to_days() + days); }

    auto operator<=>(const Date&) const = default;
    std::string to_string() const; // ISO yyyy-mm-dd
};

/// Accepts ISO yyyy-mm-dd, dd/mm/yyyy and d-Mon-yy(yy) forms; throws BadDate.
Date parse_date(std::string_view text);

/// One software project. effort/size are the modeled response and primary
/// size measure; additional attributes live in the categorical/numeric maps.
struct ProjectRecord {
    std::string id;
    int completion_year = 0;
    std::optional<Date> start_date;
    std::optional<int> duration_days;
    double effort = 0.0;
    double size = 0.0;
    std::map<std::string, std::string, std::less<>> categoricals;
    std::map<std::string, double, std::less<>> numerics;

    std::optional<Date> completion_date() const;
};

struct NumericTerm {
    std::string name;
    bool log_transform = true;
};

struct CategoricalTerm {
    std::string name;
    std::string reference_level;
    std::vector<std::string> levels; // ordered; includes reference
};

using Term = std::variant<NumericTerm, CategoricalTerm>;

/// Declarative regression formula: response transform plus predictor terms.
struct ModelSpec {
    struct Response {
        std::string name = "effort";
        bool log_transform = true;
    };
    Response response;
    std::vector<Term> terms;

    /// Explanatory-variable count after dummy expansion (levels-1 per
    /// categorical term), excluding the intercept.
    int predictor_count() const;
    const std::string& term_name(std::size_t i) const;
};

/// Unit tag for effort values. Conversion factors are metadata only and are
/// never applied implicitly.
struct EffortUnit {
    std::string name = "person-hours";
    double person_hours_equivalent = 1.0;
};

/// Named, validated, chronologically indexable collection of projects.
/// The oldest completion year maps to year index 1; indexing is gap
/// preserving, so calendar years without projects still consume a step.
struct Dataset {
    std::string name;
    std::vector<ProjectRecord> records;
    int origin_year = 0;
    ModelSpec spec;
    EffortUnit effort_unit;
    std::string size_name = "size"; // attribute name the `size` field carries

    int year_index(const ProjectRecord& r) const { return r.completion_year - origin_year + 1; }
    int year_index(int completion_year) const { return completion_year - origin_year + 1; }
    int max_year_index() const;
    bool has_start_dates() const;

    /// Resolve a term name to a record's numeric value ('effort', the size
    /// attribute, or an entry of `numerics`). Throws MissingColumn.
    double numeric_value(const ProjectRecord& r, std::string_view term) const;
    const std::string& categorical_value(const ProjectRecord& r, std::string_view term) const;
};

/// Validates record invariants (positive effort/size, plausible years,
/// start/duration consistency, spec terms present) and sets origin_year.
Dataset make_dataset(std::string name, std::vector<ProjectRecord> records, ModelSpec spec,
                     EffortUnit unit = {}, std::string size_name = "size");

} // namespace driftscope

#endif
