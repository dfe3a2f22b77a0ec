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

#include "driftscope/synth.hpp"

#include "driftscope/csv.hpp"
#include "driftscope/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <random>

namespace driftscope {

namespace {

// Portable normal draws: mt19937_64 (algorithm fixed by the standard) plus
// an explicit Box-Muller transform. std::normal_distribution is not
// guaranteed to produce the same stream across standard libraries.
class PortableNormal {
public:
    explicit PortableNormal(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        // 53-bit mantissa in [0, 1).
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

double path_value(const std::vector<double>& path, int year_pos, int n_years) {
    if (path.empty()) throw Error(ErrorCode::BadSpec, "empty coefficient path");
    if (path.size() == 1) return path.front();
    if (static_cast<int>(path.size()) != n_years) {
        throw Error(ErrorCode::BadSpec, "coefficient path length " + std::to_string(path.size()) +
                                            " does not match n_years " + std::to_string(n_years));
    }
    return path[static_cast<std::size_t>(year_pos)];
}

bool path_constant(const std::vector<double>& path) {
    for (double v : path) {
        if (v != path.front()) return false;
    }
    return true;
}

void validate_common(const ProcessSpec& spec) {
    if (spec.n_years < 2) throw Error(ErrorCode::BadSpec, "need at least 2 years");
    if (spec.projects_per_year < 1) throw Error(ErrorCode::BadSpec, "need at least 1 project/year");
    if (spec.noise_sigma < 0.0) throw Error(ErrorCode::BadSpec, "noise_sigma must be >= 0");
    if (spec.size_log_sigma < 0.0) throw Error(ErrorCode::BadSpec, "size_log_sigma must be >= 0");
    if (spec.mix) {
        const auto& mix = *spec.mix;
        if (mix.levels.empty() || mix.levels.size() != mix.probabilities.size() ||
            mix.levels.size() != mix.log_effort_offsets.size()) {
            throw Error(ErrorCode::BadSpec, "categorical mix arrays must align");
        }
    }
}

Dataset generate(const ProcessSpec& spec) {
    validate_common(spec);
    PortableNormal rng(spec.seed);

    std::vector<ProjectRecord> records;
    records.reserve(static_cast<std::size_t>(spec.n_years) * spec.projects_per_year);
    int id = 0;
    for (int y = 0; y < spec.n_years; ++y) {
        const double b0 = path_value(spec.intercepts, y, spec.n_years);
        const double b1 = path_value(spec.slopes, y, spec.n_years);
        for (int k = 0; k < spec.projects_per_year; ++k) {
            ProjectRecord rec;
            rec.id = "p" + std::to_string(++id);
            rec.completion_year = spec.start_year + y;
            rec.size = std::exp(spec.size_log_median + spec.size_log_sigma * rng.normal());
            double log_effort = b0 + b1 * std::log(rec.size);
            if (spec.mix) {
                const auto& mix = *spec.mix;
                const double u = rng.uniform01();
                double acc = 0.0;
                std::size_t chosen = mix.levels.size() - 1;
                for (std::size_t i = 0; i < mix.levels.size(); ++i) {
                    acc += mix.probabilities[i];
                    if (u < acc) {
                        chosen = i;
                        break;
                    }
                }
                rec.categoricals[mix.name] = mix.levels[chosen];
                log_effort += mix.log_effort_offsets[chosen];
            }
            log_effort += spec.noise_sigma * rng.normal();
            rec.effort = std::exp(log_effort);
            records.push_back(std::move(rec));
        }
    }

    ModelSpec model;
    model.response = {"effort", true};
    model.terms.push_back(NumericTerm{"size", true});
    if (spec.mix) {
        const auto& mix = *spec.mix;
        CategoricalTerm term;
        term.name = mix.name;
        term.levels = mix.levels;
        term.reference_level =
            mix.reference_level.empty() ? mix.levels.front() : mix.reference_level;
        model.terms.push_back(std::move(term));
    }
    return make_dataset(spec.name, std::move(records), std::move(model),
                        EffortUnit{"person-hours", 1.0}, "size");
}

} // namespace

Dataset gen_stationary(const ProcessSpec& spec) {
    if (!path_constant(spec.intercepts) || !path_constant(spec.slopes)) {
        throw Error(ErrorCode::BadSpec, "stationary process requires constant coefficients");
    }
    return generate(spec);
}

Dataset gen_drifting(const ProcessSpec& spec) {
    if (path_constant(spec.intercepts) && path_constant(spec.slopes)) {
        throw Error(ErrorCode::BadSpec, "drifting process requires a non-constant path");
    }
    return generate(spec);
}

std::vector<double> ramp(double from, double to, int n_years) {
    if (n_years < 2) throw Error(ErrorCode::BadSpec, "ramp needs at least 2 years");
    std::vector<double> path(static_cast<std::size_t>(n_years));
    for (int i = 0; i < n_years; ++i) {
        path[static_cast<std::size_t>(i)] = from + (to - from) * i / (n_years - 1);
    }
    return path;
}

SynthArtifacts emit_synth(const Dataset& dataset, const ProcessSpec& spec,
                          const std::filesystem::path& output_dir) {
    std::filesystem::create_directories(output_dir);
    SynthArtifacts paths{output_dir / (dataset.name + ".csv"),
                         output_dir / (dataset.name + ".schema"),
                         output_dir / (dataset.name + "_profile.json")};

    {
        std::ofstream csv(paths.csv, std::ios::binary);
        if (!csv) throw Error(ErrorCode::IoError, "cannot write " + paths.csv.string());
        std::vector<std::string> header{"id", "year", "size", "effort"};
        if (spec.mix) header.push_back(spec.mix->name);
        csv << to_csv_line(header);
        for (const auto& rec : dataset.records) {
            std::vector<std::string> row{rec.id, std::to_string(rec.completion_year),
                                         format_double(rec.size), format_double(rec.effort)};
            if (spec.mix) row.push_back(rec.categoricals.at(spec.mix->name));
            csv << to_csv_line(row);
        }
    }
    {
        std::ofstream schema(paths.schema, std::ios::binary);
        if (!schema) throw Error(ErrorCode::IoError, "cannot write " + paths.schema.string());
        schema << "name = " << dataset.name << "\n"
               << "id = id\n"
               << "effort = effort\n"
               << "size = size\n"
               << "time = year\n"
               << "time_kind = year\n"
               << "log_effort = true\n"
               << "log_size = true\n";
        if (spec.mix) {
            const auto& mix = *spec.mix;
            schema << "categorical." << mix.name << ".levels = ";
            for (std::size_t i = 0; i < mix.levels.size(); ++i) {
                schema << (i ? "," : "") << mix.levels[i];
            }
            schema << "\n";
            schema << "categorical." << mix.name << ".reference = "
                   << (mix.reference_level.empty() ? mix.levels.front() : mix.reference_level)
                   << "\n";
        }
    }
    {
        nlohmann::json profile;
        profile["kind"] = path_constant(spec.intercepts) && path_constant(spec.slopes)
                              ? "stationary"
                              : "drifting";
        profile["name"] = dataset.name;
        profile["seed"] = spec.seed;
        profile["n_years"] = spec.n_years;
        profile["projects_per_year"] = spec.projects_per_year;
        profile["start_year"] = spec.start_year;
        profile["intercepts"] = spec.intercepts;
        profile["slopes"] = spec.slopes;
        profile["noise_sigma"] = spec.noise_sigma;
        profile["size_log_median"] = spec.size_log_median;
        profile["size_log_sigma"] = spec.size_log_sigma;
        std::ofstream out(paths.profile, std::ios::binary);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + paths.profile.string());
        out << profile.dump(2) << "\n";
    }
    return paths;
}

} // namespace driftscope
