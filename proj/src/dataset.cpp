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

#include "driftscope/dataset.hpp"

#include "driftscope/csv.hpp"
#include "driftscope/error.hpp"

#include <algorithm>
#include <cstdio>

namespace driftscope {

namespace {

constexpr int kMinYear = 1960;
constexpr int kMaxYear = 2100;

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

} // namespace

bool Date::valid() const {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

// Howard Hinnant's civil-from-days / days-from-civil algorithms.
long Date::to_days() const {
    long y = year;
    if (month <= 2) --y;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

Date Date::from_days(long days) {
    days += 719468;
    const long era = (days >= 0 ? days : days - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long y = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

namespace {

int month_from_name(const std::string& name) {
    static constexpr const char* names[] = {"jan", "feb", "mar", "apr", "may", "jun",
                                            "jul", "aug", "sep", "oct", "nov", "dec"};
    const std::string key = to_lower(name).substr(0, 3);
    for (int i = 0; i < 12; ++i) {
        if (key == names[i]) return i + 1;
    }
    return 0;
}

} // namespace

Date parse_date(std::string_view text) {
    const std::string t = trim(text);
    auto fail = [&] { throw Error(ErrorCode::BadDate, "unparseable date '" + t + "'"); };

    std::vector<std::string> parts;
    if (t.find('-') != std::string::npos) {
        parts = split(t, '-');
    } else if (t.find('/') != std::string::npos) {
        parts = split(t, '/');
    } else {
        fail();
    }
    if (parts.size() != 3) fail();

    Date d;
    if (t.find('-') != std::string::npos && parts[0].size() == 4 && parse_int(parts[0])) {
        // ISO yyyy-mm-dd
        d.year = static_cast<int>(*parse_int(parts[0]));
        auto m = parse_int(parts[1]);
        auto dd = parse_int(parts[2]);
        if (!m || !dd) fail();
        d.month = static_cast<int>(*m);
        d.day = static_cast<int>(*dd);
    } else {
        // dd/mm/yyyy or d-Mon-yy
        auto dd = parse_int(parts[0]);
        if (!dd) fail();
        d.day = static_cast<int>(*dd);
        if (auto m = parse_int(parts[1])) {
            d.month = static_cast<int>(*m);
        } else {
            d.month = month_from_name(parts[1]);
            if (d.month == 0) fail();
        }
        auto y = parse_int(parts[2]);
        if (!y) fail();
        d.year = static_cast<int>(*y);
        if (d.year < 100) d.year += d.year >= 60 ? 1900 : 2000;
    }
    if (!d.valid()) fail();
    return d;
}

std::optional<Date> ProjectRecord::completion_date() const {
    if (!start_date || !duration_days) return std::nullopt;
    return start_date->plus_days(*duration_days);
}

int ModelSpec::predictor_count() const {
    int p = 0;
    for (const auto& term : terms) {
        if (std::holds_alternative<NumericTerm>(term)) {
            ++p;
        } else {
            const auto& cat = std::get<CategoricalTerm>(term);
            p += static_cast<int>(cat.levels.size()) - 1;
        }
    }
    return p;
}

const std::string& ModelSpec::term_name(std::size_t i) const {
    const Term& t = terms.at(i);
    if (const auto* n = std::get_if<NumericTerm>(&t)) return n->name;
    return std::get<CategoricalTerm>(t).name;
}

int Dataset::max_year_index() const {
    int max_year = origin_year;
    for (const auto& r : records) max_year = std::max(max_year, r.completion_year);
    return year_index(max_year);
}

bool Dataset::has_start_dates() const {
    if (records.empty()) return false;
    return std::all_of(records.begin(), records.end(),
                       [](const ProjectRecord& r) { return r.start_date.has_value(); });
}

double Dataset::numeric_value(const ProjectRecord& r, std::string_view term) const {
    if (term == "effort") return r.effort;
    if (term == size_name || term == "size") return r.size;
    auto it = r.numerics.find(term);
    if (it == r.numerics.end()) {
        throw Error(ErrorCode::MissingColumn,
                    "record '" + r.id + "' has no numeric attribute '" + std::string(term) + "'");
    }
    return it->second;
}

const std::string& Dataset::categorical_value(const ProjectRecord& r, std::string_view term) const {
    auto it = r.categoricals.find(term);
    if (it == r.categoricals.end()) {
        throw Error(ErrorCode::MissingColumn,
                    "record '" + r.id + "' has no categorical attribute '" + std::string(term) + "'");
    }
    return it->second;
}

Dataset make_dataset(std::string name, std::vector<ProjectRecord> records, ModelSpec spec,
                     EffortUnit unit, std::string size_name) {
    if (records.empty()) {
        throw Error(ErrorCode::InsufficientData, "dataset '" + name + "' has no records");
    }
    Dataset ds;
    ds.name = std::move(name);
    ds.spec = std::move(spec);
    ds.effort_unit = std::move(unit);
    ds.size_name = std::move(size_name);

    int origin = records.front().completion_year;
    for (const auto& r : records) {
        if (!(r.effort > 0.0)) {
            throw Error(ErrorCode::NonPositiveValue,
                        "record '" + r.id + "' effort must be positive (got " +
                            format_double(r.effort, 6) + ")");
        }
        if (!(r.size > 0.0)) {
            throw Error(ErrorCode::NonPositiveValue,
                        "record '" + r.id + "' size must be positive (got " +
                            format_double(r.size, 6) + ")");
        }
        if (r.completion_year < kMinYear || r.completion_year > kMaxYear) {
            throw Error(ErrorCode::BadYear, "record '" + r.id + "' completion year " +
                                                std::to_string(r.completion_year) +
                                                " outside [1960, 2100]");
        }
        if (r.start_date && r.duration_days) {
            if (*r.duration_days < 0) {
                throw Error(ErrorCode::BadDate, "record '" + r.id + "' has negative duration");
            }
            const Date done = r.start_date->plus_days(*r.duration_days);
            if (done.year != r.completion_year) {
                throw Error(ErrorCode::BadDate,
                            "record '" + r.id + "' start date + duration lands in " +
                                std::to_string(done.year) + ", not completion year " +
                                std::to_string(r.completion_year));
            }
        }
        origin = std::min(origin, r.completion_year);
    }
    ds.origin_year = origin;
    ds.records = std::move(records);

    // Every spec term must resolve in every record.
    for (const auto& term : ds.spec.terms) {
        if (const auto* cat = std::get_if<CategoricalTerm>(&term)) {
            if (std::find(cat->levels.begin(), cat->levels.end(), cat->reference_level) ==
                cat->levels.end()) {
                throw Error(ErrorCode::UnknownLevel,
                            "reference level '" + cat->reference_level + "' of term '" +
                                cat->name + "' is not among its levels");
            }
            for (const auto& r : ds.records) {
                const std::string& level = ds.categorical_value(r, cat->name);
                if (std::find(cat->levels.begin(), cat->levels.end(), level) ==
                    cat->levels.end()) {
                    throw Error(ErrorCode::UnknownLevel,
                                "record '" + r.id + "' has level '" + level +
                                    "' unknown to term '" + cat->name + "'");
                }
            }
        } else {
            const auto& num = std::get<NumericTerm>(term);
            for (const auto& r : ds.records) ds.numeric_value(r, num.name);
        }
    }
    return ds;
}

} // namespace driftscope
