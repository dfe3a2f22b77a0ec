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

#include "driftscope/chronology.hpp"

#include "driftscope/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace driftscope {

std::vector<ChronoSplit> make_splits(const Dataset& dataset) {
    // Distinct completion years with projects, oldest first, with record
    // indices grouped per year.
    std::map<int, std::vector<std::size_t>> by_year;
    for (std::size_t i = 0; i < dataset.records.size(); ++i) {
        by_year[dataset.records[i].completion_year].push_back(i);
    }
    if (by_year.size() < 2) {
        throw Error(ErrorCode::InsufficientData,
                    "dataset '" + dataset.name + "' spans fewer than 2 distinct completion years");
    }

    const int min_training = dataset.spec.predictor_count() + 2;
    std::vector<int> years;
    years.reserve(by_year.size());
    for (const auto& [year, _] : by_year) years.push_back(year);

    std::size_t cumulative = 0;
    std::size_t first_test_pos = 0;
    while (first_test_pos < years.size() &&
           cumulative < static_cast<std::size_t>(min_training)) {
        cumulative += by_year[years[first_test_pos]].size();
        ++first_test_pos;
    }
    if (cumulative < static_cast<std::size_t>(min_training) || first_test_pos >= years.size()) {
        throw Error(ErrorCode::InsufficientData,
                    "dataset '" + dataset.name +
                        "' never reaches a well-formed training set with a test year left over "
                        "(needs " +
                        std::to_string(min_training) + " observations)");
    }

    std::vector<ChronoSplit> splits;
    std::vector<std::size_t> training;
    for (std::size_t k = 0; k < first_test_pos; ++k) {
        const auto& recs = by_year[years[k]];
        training.insert(training.end(), recs.begin(), recs.end());
    }
    for (std::size_t t = first_test_pos; t < years.size(); ++t) {
        ChronoSplit split;
        split.split_index = static_cast<int>(splits.size()) + 1;
        split.training = training;
        split.test = by_year[years[t]];
        split.target_year_index = dataset.year_index(years[t]);
        split.training_span_years = dataset.year_index(years[t - 1]);
        split.test_re_definable = split.test.size() >= 2;
        splits.push_back(split);
        training.insert(training.end(), by_year[years[t]].begin(), by_year[years[t]].end());
    }
    return splits;
}

ChronoSplit make_full_dataset_split(const Dataset& dataset, int split_index) {
    ChronoSplit split;
    split.split_index = split_index;
    split.training.resize(dataset.records.size());
    for (std::size_t i = 0; i < dataset.records.size(); ++i) split.training[i] = i;
    split.target_year_index = dataset.max_year_index();
    split.training_span_years = dataset.max_year_index();
    split.is_full_dataset = true;
    split.test_re_definable = false;
    return split;
}

ChronoSplit apply_start_date_test_filter(const ChronoSplit& split, const Dataset& dataset) {
    if (split.test.empty()) return split;

    std::optional<Date> cutoff;
    for (std::size_t idx : split.training) {
        const auto done = dataset.records.at(idx).completion_date();
        if (!done) {
            throw Error(ErrorCode::MissingStartDate,
                        "record '" + dataset.records.at(idx).id +
                            "' lacks the start date/duration needed for the test filter");
        }
        if (!cutoff || *done > *cutoff) cutoff = done;
    }

    ChronoSplit filtered = split;
    filtered.test.clear();
    filtered.filtered_out.clear();
    for (std::size_t idx : split.test) {
        const auto& rec = dataset.records.at(idx);
        if (!rec.start_date) {
            throw Error(ErrorCode::MissingStartDate,
                        "test record '" + rec.id + "' lacks a start date");
        }
        if (*rec.start_date > *cutoff) {
            filtered.test.push_back(idx);
        } else {
            filtered.filtered_out.push_back(idx);
        }
    }
    filtered.test_re_definable = filtered.test.size() >= 2;
    return filtered;
}

NormalityMode normality_mode_from_string(std::string_view name) {
    if (name == "paper_fixed") return NormalityMode::PaperFixed;
    if (name == "strict") return NormalityMode::Strict;
    throw Error(ErrorCode::ConfigMismatch, "unknown normality mode '" + std::string(name) + "'");
}

std::string_view to_string(NormalityMode mode) {
    return mode == NormalityMode::PaperFixed ? "paper_fixed" : "strict";
}

namespace {

std::vector<double> gather(const Dataset& dataset, std::span<const std::size_t> indices,
                           std::string_view term) {
    std::vector<double> out;
    out.reserve(indices.size());
    for (std::size_t idx : indices) out.push_back(dataset.numeric_value(dataset.records[idx], term));
    return out;
}

std::optional<NormalityResult> try_shapiro(std::span<const double> xs, double alpha,
                                           std::string* note) {
    try {
        return shapiro_wilk(xs, alpha);
    } catch (const Error& e) {
        if (note) *note = std::string(to_string(e.code()));
        return std::nullopt;
    }
}

} // namespace

TransformPlan normality_gate(const Dataset& dataset, std::span<const std::size_t> training,
                             const ModelSpec& spec, NormalityMode mode, double alpha,
                             std::vector<NormalityDiagnostic>* diagnostics) {
    TransformPlan plan = plan_from_spec(spec);

    // Active levels = levels with support in this training set (spec order).
    for (const auto& term : spec.terms) {
        const auto* cat = std::get_if<CategoricalTerm>(&term);
        if (!cat) continue;
        std::set<std::string> seen;
        for (std::size_t idx : training) {
            seen.insert(dataset.categorical_value(dataset.records[idx], cat->name));
        }
        std::vector<std::string> active;
        for (const auto& level : cat->levels) {
            if (seen.count(level)) active.push_back(level);
        }
        plan.active_levels[cat->name] = std::move(active);
    }

    auto gate_variable = [&](const std::string& name, bool spec_logged) -> bool {
        NormalityDiagnostic diag;
        diag.variable = name;
        std::vector<double> xs = gather(dataset, training, name);
        std::string note;
        diag.before = try_shapiro(xs, alpha, &note);
        diag.note = note;

        bool logged;
        if (mode == NormalityMode::PaperFixed) {
            logged = spec_logged;
            diag.transformed = logged;
        } else {
            logged = diag.before && diag.before->non_normal();
            diag.transformed = logged;
        }
        if (logged) {
            bool positive = std::all_of(xs.begin(), xs.end(), [](double v) { return v > 0.0; });
            if (!positive) {
                // Cannot log this variable; leave it on the raw scale.
                diag.transformed = false;
                diag.note += (diag.note.empty() ? "" : "; ") + std::string("NonPositiveValue");
                logged = false;
            } else {
                std::vector<double> logged_xs = log_transform(xs);
                diag.after = try_shapiro(logged_xs, alpha, &note);
            }
        }
        if (diagnostics) diagnostics->push_back(std::move(diag));
        return logged;
    };

    plan.log_response = gate_variable(spec.response.name, spec.response.log_transform);
    for (const auto& term : spec.terms) {
        if (const auto* num = std::get_if<NumericTerm>(&term)) {
            plan.log_numeric[num->name] = gate_variable(num->name, num->log_transform);
        }
    }
    return plan;
}

namespace {

std::optional<double> score_re(const Dataset& dataset, const FitResult& fit,
                               std::span<const std::size_t> indices, const ModelSpec& spec,
                               const TransformPlan& plan, int* skipped, std::string* failure) {
    const PredictOutcome outcome = predict(fit, dataset, indices, spec, plan);
    if (skipped) *skipped += static_cast<int>(outcome.skipped_unseen_level.size());

    // Measured efforts for exactly the records that got predictions.
    std::vector<double> predicted, measured;
    predicted.reserve(indices.size());
    measured.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (!outcome.aligned[i]) continue;
        predicted.push_back(*outcome.aligned[i]);
        measured.push_back(dataset.records[indices[i]].effort);
    }
    try {
        const double re = relative_error(predicted, measured);
        if (!std::isfinite(re)) {
            if (failure) *failure = "NonFiniteRelativeError";
            return std::nullopt;
        }
        return re;
    } catch (const Error& e) {
        if (failure) *failure = std::string(to_string(e.code()));
        return std::nullopt;
    }
}

} // namespace

SplitResult run_split(const Dataset& dataset, const ChronoSplit& split, KernelType kernel,
                      std::span<const double> bandwidths, NormalityMode mode, double alpha) {
    SplitResult result;
    result.split = split;
    result.kernel = kernel;

    result.plan = normality_gate(dataset, split.training, dataset.spec, mode, alpha,
                                 &result.normality);
    const DesignMatrix design = build_design(dataset, split.training, dataset.spec, result.plan);

    // Uniform baseline ('train global' / 'test global').
    const std::vector<double> unit_weights(split.training.size(), 1.0);
    FitResult global_fit = fit_wls(design, unit_weights);
    result.global_converged = global_fit.converged;
    {
        std::string failure;
        result.re_train_global = score_re(dataset, global_fit, split.training, dataset.spec,
                                          result.plan, nullptr, &failure);
        if (!split.test.empty()) {
            result.re_test_global =
                score_re(dataset, global_fit, split.test, dataset.spec, result.plan,
                         &result.skipped_unseen_test_records, &failure);
        }
        if (!failure.empty()) result.notes.push_back("global: " + failure);
    }

    result.points.reserve(bandwidths.size());
    for (double b : bandwidths) {
        BandwidthPoint point;
        point.bandwidth = b;
        if (kernel == KernelType::Uniform) {
            // Identical to the baseline at every bandwidth.
            point.re_train = result.re_train_global;
            point.re_test = result.re_test_global;
            point.fit_converged = global_fit.converged;
            point.n_effective = global_fit.n_effective;
            result.points.push_back(std::move(point));
            continue;
        }
        try {
            const WeightAssignment wa =
                weights_for_target(dataset, split.training, kernel, b, split.target_year_index);
            const FitResult fit = fit_wls(design, wa.weights);
            point.fit_converged = fit.converged;
            point.n_effective = fit.n_effective;
            std::string failure;
            point.re_train = score_re(dataset, fit, split.training, dataset.spec, result.plan,
                                      nullptr, &failure);
            if (!split.test.empty()) {
                int skipped = 0;
                point.re_test = score_re(dataset, fit, split.test, dataset.spec, result.plan,
                                         &skipped, &failure);
            }
            if (!failure.empty()) point.failure = failure;
        } catch (const Error& e) {
            point.failure = std::string(to_string(e.code()));
            point.fit_converged = false;
        }
        result.points.push_back(std::move(point));
    }
    return result;
}

} // namespace driftscope
