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

#include "driftscope/sweep.hpp"

#include "driftscope/csv.hpp"
#include "driftscope/error.hpp"

#include <algorithm>
#include <cmath>

namespace driftscope {

std::vector<double> default_bandwidth_grid() {
    std::vector<double> grid(100);
    for (int i = 0; i < 100; ++i) grid[i] = i + 1;
    return grid;
}

std::size_t SweepCurve::defined_train_points() const {
    return static_cast<std::size_t>(
        std::count_if(re_train.begin(), re_train.end(),
                      [](const std::optional<double>& v) { return v.has_value(); }));
}

SweepCurve curve_from_split(const SplitResult& result, const std::string& dataset_name) {
    SweepCurve curve;
    curve.dataset = dataset_name;
    curve.kernel = result.kernel;
    curve.split_index = result.split.split_index;
    curve.is_full_dataset = result.split.is_full_dataset;
    curve.training_span_years = result.split.training_span_years;
    curve.re_train_global = result.re_train_global;
    curve.re_test_global = result.re_test_global;
    curve.global_converged = result.global_converged;
    curve.grid.reserve(result.points.size());
    curve.re_train.reserve(result.points.size());
    curve.re_test.reserve(result.points.size());
    for (const auto& point : result.points) {
        curve.grid.push_back(point.bandwidth);
        // Non-converged fits are treated as undefined for classification.
        if (point.fit_converged) {
            curve.re_train.push_back(point.re_train);
        } else {
            curve.re_train.push_back(std::nullopt);
        }
        curve.re_test.push_back(point.re_test);
    }
    return curve;
}

namespace {

std::size_t grid_position(const SweepCurve& curve, double bandwidth) {
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        if (curve.grid[i] == bandwidth) return i;
    }
    throw Error(ErrorCode::UndefinedPoint,
                "bandwidth " + format_double(bandwidth, 6) + " is not on the grid");
}

double gap_at(const SweepCurve& curve, std::size_t pos, double floor) {
    if (!curve.re_train_global) {
        throw Error(ErrorCode::UndefinedPoint, "uniform baseline train RE is undefined");
    }
    if (!curve.re_train[pos]) {
        throw Error(ErrorCode::UndefinedPoint,
                    "train RE undefined at bandwidth " + format_double(curve.grid[pos], 6));
    }
    const double global = *curve.re_train_global;
    return std::abs(*curve.re_train[pos] - global) / std::max(global, floor);
}

} // namespace

double gap(const SweepCurve& curve, double bandwidth, double floor) {
    return gap_at(curve, grid_position(curve, bandwidth), floor);
}

std::optional<double> convergence_bandwidth(const SweepCurve& curve, double epsilon) {
    const std::size_t defined = curve.defined_train_points();
    if (defined * 2 < curve.grid.size() || !curve.re_train_global) {
        throw Error(ErrorCode::TooManyUndefined,
                    "only " + std::to_string(defined) + " of " + std::to_string(curve.grid.size()) +
                        " grid points are defined");
    }
    // Scan backwards: the answer is the earliest defined point of the
    // trailing run that stays within epsilon.
    std::optional<double> best;
    for (std::size_t i = curve.grid.size(); i-- > 0;) {
        if (!curve.re_train[i]) continue; // undefined points are skipped
        if (gap_at(curve, i, 0.01) <= epsilon) {
            best = curve.grid[i];
        } else {
            break;
        }
    }
    return best;
}

std::string_view to_string(Stationarity s) {
    switch (s) {
        case Stationarity::Stationary: return "stationary";
        case Stationarity::NonStationary: return "non_stationary";
        case Stationarity::Undetermined: return "undetermined";
    }
    return "unknown";
}

StationarityVerdict classify(const SweepCurve& curve, double epsilon, double kappa) {
    StationarityVerdict verdict;
    verdict.dataset = curve.dataset;
    verdict.kernel = curve.kernel;
    verdict.split_index = curve.split_index;
    verdict.is_full_dataset = curve.is_full_dataset;
    verdict.training_span_years = curve.training_span_years;
    verdict.epsilon = epsilon;
    verdict.kappa = kappa;

    if (curve.grid.empty()) {
        verdict.classification = Stationarity::Undetermined;
        verdict.reason = "empty bandwidth grid";
        return verdict;
    }
    if (!curve.re_train_global || !curve.global_converged) {
        verdict.classification = Stationarity::Undetermined;
        verdict.reason = "uniform baseline unavailable";
        return verdict;
    }
    const std::size_t defined = curve.defined_train_points();
    if (defined * 2 < curve.grid.size()) {
        verdict.classification = Stationarity::Undetermined;
        verdict.reason = "over half of the bandwidth grid is undefined";
        return verdict;
    }

    double max_gap = 0.0;
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        if (!curve.re_train[i]) continue;
        max_gap = std::max(max_gap, gap_at(curve, i, 0.01));
    }
    verdict.max_gap = max_gap;
    verdict.convergence_bandwidth = convergence_bandwidth(curve, epsilon);

    if (max_gap <= epsilon) {
        // Weighting never mattered anywhere on the grid.
        verdict.classification = Stationarity::Stationary;
        verdict.reason = "weighted and uniform models agree at every bandwidth";
        if (verdict.convergence_bandwidth) {
            const double horizon =
                decay_horizon(curve.kernel, *verdict.convergence_bandwidth, kappa);
            // The Uniform kernel never decays; leave its horizon absent
            // (infinity does not survive JSON serialization).
            if (std::isfinite(horizon)) verdict.decay_horizon_years = horizon;
        }
        return verdict;
    }
    if (!verdict.convergence_bandwidth) {
        verdict.classification = Stationarity::NonStationary;
        verdict.reason = "no convergence to the uniform model within the grid";
        return verdict;
    }
    const double horizon = decay_horizon(curve.kernel, *verdict.convergence_bandwidth, kappa);
    if (std::isfinite(horizon)) verdict.decay_horizon_years = horizon;
    if (horizon <= static_cast<double>(curve.training_span_years)) {
        verdict.classification = Stationarity::Stationary;
        verdict.reason = "convergence horizon fits inside the training span";
    } else {
        verdict.classification = Stationarity::NonStationary;
        verdict.reason = "convergence requires more years than the training span covers";
    }
    return verdict;
}

AgreementReport kernel_agreement(const std::vector<std::vector<StationarityVerdict>>& by_kernel) {
    if (by_kernel.size() < 2) {
        throw Error(ErrorCode::BadSpec, "agreement needs verdicts from at least two kernels");
    }
    const std::size_t n_splits = by_kernel.front().size();
    for (const auto& v : by_kernel) {
        if (v.size() != n_splits) {
            throw Error(ErrorCode::LengthMismatch,
                        "kernels report different split counts");
        }
    }
    AgreementReport report;
    std::size_t unanimous = 0;
    for (std::size_t s = 0; s < n_splits; ++s) {
        AgreementRow row;
        row.split_index = by_kernel.front()[s].split_index;
        row.is_full_dataset = by_kernel.front()[s].is_full_dataset;
        for (const auto& verdicts : by_kernel) {
            row.verdicts.emplace_back(verdicts[s].kernel, verdicts[s].classification);
            if (verdicts[s].classification != by_kernel.front()[s].classification) {
                row.unanimous = false;
            }
        }
        if (row.unanimous) ++unanimous;
        report.rows.push_back(std::move(row));
    }
    report.agreement_fraction =
        n_splits == 0 ? 1.0 : static_cast<double>(unanimous) / static_cast<double>(n_splits);
    return report;
}

} // namespace driftscope
