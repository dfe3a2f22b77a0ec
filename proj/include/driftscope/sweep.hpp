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

#ifndef DRIFTSCOPE_SWEEP_HPP
#define DRIFTSCOPE_SWEEP_HPP

#include "driftscope/chronology.hpp"
#include "driftscope/kernel.hpp"

#include <optional>
#include <string>
#include <vector>

namespace driftscope {

/// The paper's bandwidth grid: integers 1..100.
std::vector<double> default_bandwidth_grid();

/// Per-split, per-kernel relative-error curves over the bandwidth grid.
/// Entries are empty where the weighted fit was impossible or did not
/// converge; the uniform-baseline values are bandwidth independent.
struct SweepCurve {
    std::string dataset;
    KernelType kernel = KernelType::Gaussian;
    int split_index = 1;
    bool is_full_dataset = false;
    std::vector<double> grid;
    std::vector<std::optional<double>> re_train;
    std::vector<std::optional<double>> re_test;
    std::optional<double> re_train_global;
    std::optional<double> re_test_global;
    bool global_converged = true;
    int training_span_years = 0;

    std::size_t defined_train_points() const;
};

SweepCurve curve_from_split(const SplitResult& result, const std::string& dataset_name);

/// Relative distance between the weighted and uniform training curves at one
/// grid point: |re_train(b) - re_train_global| / max(re_train_global, floor).
/// Throws UndefinedPoint when re_train(b) or the baseline is undefined.
double gap(const SweepCurve& curve, double bandwidth, double floor = 0.01);

/// Smallest grid bandwidth from which every later defined gap stays within
/// epsilon; nullopt when no such bandwidth exists. Throws TooManyUndefined
/// when over half the grid is undefined.
std::optional<double> convergence_bandwidth(const SweepCurve& curve, double epsilon);

enum class Stationarity { Stationary, NonStationary, Undetermined };

std::string_view to_string(Stationarity s);

struct StationarityVerdict {
    std::string dataset;
    KernelType kernel = KernelType::Gaussian;
    int split_index = 1;
    bool is_full_dataset = false;
    Stationarity classification = Stationarity::Undetermined;
    std::optional<double> convergence_bandwidth; // b*
    std::optional<double> decay_horizon_years;   // Y(b*)
    int training_span_years = 0;
    std::optional<double> max_gap;
    double epsilon = 0.05;
    double kappa = 0.01;
    std::string reason;
};

/// Convergence-based stationarity reading of a training-error curve:
/// stationary when weighting never mattered (max gap <= epsilon) or when the
/// convergence bandwidth's weight-decay horizon fits inside the training
/// span; non-stationary when convergence happens only beyond the observed
/// years (or never); undetermined when the curve is mostly undefined or the
/// baseline fit failed.
StationarityVerdict classify(const SweepCurve& curve, double epsilon = 0.05, double kappa = 0.01);

struct AgreementRow {
    int split_index = 1;
    bool is_full_dataset = false;
    std::vector<std::pair<KernelType, Stationarity>> verdicts;
    bool unanimous = true;
};

struct AgreementReport {
    std::vector<AgreementRow> rows;
    double agreement_fraction = 1.0; // unanimous rows / rows
};

/// Cross-kernel verdict agreement per split. Expects verdict vectors from at
/// least two kernels over the same splits.
AgreementReport kernel_agreement(const std::vector<std::vector<StationarityVerdict>>& by_kernel);

} // namespace driftscope

#endif
