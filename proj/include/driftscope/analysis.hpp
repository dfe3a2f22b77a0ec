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

#ifndef DRIFTSCOPE_ANALYSIS_HPP
#define DRIFTSCOPE_ANALYSIS_HPP

#include "driftscope/chronology.hpp"
#include "driftscope/dataset.hpp"
#include "driftscope/kernel.hpp"
#include "driftscope/sweep.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace driftscope {

/// Effective parameters of one analysis run. Defaults reproduce the
/// flag-free pipeline: all four kernels, bandwidths 1..100, epsilon 0.05,
/// kappa 0.01, alpha 0.05, fixed transform mode.
struct RunConfig {
    std::vector<KernelType> kernels{KernelType::Uniform, KernelType::Gaussian,
                                    KernelType::Epanechnikov, KernelType::Triangular};
    std::vector<double> grid = default_bandwidth_grid();
    double epsilon = 0.05;
    double kappa = 0.01;
    double alpha = 0.05;
    NormalityMode mode = NormalityMode::PaperFixed;
    int jobs = 0; // 0: use available hardware parallelism
    bool include_full_dataset_split = true;
    double report_y_max = 5.0;

    nlohmann::json to_json() const;
};

struct SplitSummary {
    int split_index = 1;
    bool is_full_dataset = false;
    std::size_t training_size = 0;
    std::size_t test_size = 0;
    std::size_t filtered_out = 0;
    int training_span_years = 0;
    int target_year_index = 0;
};

/// Full analysis output for one dataset: curves and verdicts for every
/// (kernel, split) pair plus the cross-kernel agreement summary.
struct AnalysisResult {
    std::string dataset_name;
    std::size_t n_records = 0;
    int origin_year = 0;
    int span_years = 0;
    std::string effort_unit;
    RunConfig config;
    std::vector<SplitSummary> splits;
    std::vector<SweepCurve> curves;             // kernel-major, split order within
    std::vector<StationarityVerdict> verdicts;  // aligned with curves
    AgreementReport agreement;                  // across non-uniform kernels

    /// Verdict of the named kernel on the full-dataset split (the
    /// whole-history model).
    std::optional<StationarityVerdict> full_dataset_verdict(KernelType kernel) const;
    std::vector<const StationarityVerdict*> verdicts_for(KernelType kernel) const;

    /// Dataset-level stationarity call for one kernel, aggregated over the
    /// per-split verdicts: non-stationary only when non-stationary verdicts
    /// dominate decisively (strictly more than 2/3 of the classified
    /// splits); isolated non-stationary splits are treated as sampling
    /// noise. The 2/3 threshold was calibrated once against the synthetic
    /// generators and is frozen.
    struct DatasetCall {
        Stationarity classification = Stationarity::Undetermined;
        int stationary_splits = 0;
        int non_stationary_splits = 0;
        int undetermined_splits = 0;
    };
    DatasetCall dataset_call(KernelType kernel) const;
};

/// Runs splits -> per-kernel bandwidth sweeps -> verdicts -> agreement.
/// (kernel, split) tasks run on `config.jobs` workers; results are
/// bit-identical for any worker count.
AnalysisResult analyze(const Dataset& dataset, const RunConfig& config);

nlohmann::json to_json(const AnalysisResult& result);
AnalysisResult analysis_from_json(const nlohmann::json& j);

/// curves.csv rows: split,kernel,bandwidth,re_train,re_test,re_train_global,
/// re_test_global (empty fields for undefined points).
std::string curves_csv(const AnalysisResult& result);
nlohmann::json verdicts_json(const AnalysisResult& result);

/// Audit dump (--dump-fits): per-split design matrices plus every fitted
/// coefficient vector across the grid. Returns filename -> CSV bytes.
std::vector<std::pair<std::string, std::string>> dump_fits(const Dataset& dataset,
                                                           const RunConfig& config);

} // namespace driftscope

#endif
