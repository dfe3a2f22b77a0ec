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

#ifndef DRIFTSCOPE_CHRONOLOGY_HPP
#define DRIFTSCOPE_CHRONOLOGY_HPP

#include "driftscope/dataset.hpp"
#include "driftscope/kernel.hpp"
#include "driftscope/regression.hpp"
#include "driftscope/stats.hpp"

#include <optional>
#include <span>
#include <vector>

namespace driftscope {

/// One chronological training/test split. Indices point into
/// Dataset::records. Training records all complete strictly before the
/// target year except for the final full-dataset split, whose training spans
/// everything and whose test set is empty.
struct ChronoSplit {
    int split_index = 1;
    std::vector<std::size_t> training;
    std::vector<std::size_t> test;
    std::vector<std::size_t> filtered_out; // removed by the start-date test filter
    int training_span_years = 0;           // year indices covered, inclusive
    int target_year_index = 0;
    bool is_full_dataset = false;
    bool test_re_definable = true; // false when the test year has < 2 projects
};

/// Sequential-accumulation splits: the first training set is the smallest
/// prefix of project years satisfying the well-formed rule (at least
/// predictors + 2 observations); each following split folds the previous
/// test year into training. Throws InsufficientData when no well-formed
/// prefix leaves a test year.
std::vector<ChronoSplit> make_splits(const Dataset& dataset);

/// The whole-dataset model: training = every record, target = newest year,
/// empty test set.
ChronoSplit make_full_dataset_split(const Dataset& dataset, int split_index);

/// Start-date test rule: keep only test records started strictly after the
/// latest training completion date. Requires start dates on the involved
/// records. Removed records stay out of both sides of this split.
ChronoSplit apply_start_date_test_filter(const ChronoSplit& split, const Dataset& dataset);

enum class NormalityMode { PaperFixed, Strict };

NormalityMode normality_mode_from_string(std::string_view name);
std::string_view to_string(NormalityMode mode);

struct NormalityDiagnostic {
    std::string variable;
    bool transformed = false;
    std::optional<NormalityResult> before; // absent when the test was inapplicable
    std::optional<NormalityResult> after;  // present when a transform was applied and re-tested
    std::string note;
};

/// Decides the per-split transform plan from the training set.
/// PaperFixed keeps the spec's declared log transforms and records
/// Shapiro-Wilk outcomes as diagnostics only; Strict logs each numeric
/// variable iff it fails the test at alpha, then re-tests. Active
/// categorical levels are restricted to those present in training either way.
TransformPlan normality_gate(const Dataset& dataset, std::span<const std::size_t> training,
                             const ModelSpec& spec, NormalityMode mode, double alpha,
                             std::vector<NormalityDiagnostic>* diagnostics = nullptr);

/// Relative errors for one bandwidth grid point.
struct BandwidthPoint {
    double bandwidth = 0.0;
    std::optional<double> re_train;
    std::optional<double> re_test;
    bool fit_converged = true;
    int n_effective = 0;
    std::string failure; // error code name when the fit was impossible
};

struct SplitResult {
    ChronoSplit split;
    KernelType kernel = KernelType::Gaussian;
    std::vector<BandwidthPoint> points;
    std::optional<double> re_train_global;
    std::optional<double> re_test_global;
    bool global_converged = true;
    TransformPlan plan;
    std::vector<NormalityDiagnostic> normality;
    int skipped_unseen_test_records = 0;
    std::vector<std::string> notes;
};

/// Weighted sweep over the bandwidth grid for one split: per bandwidth,
/// kernel weights are generated for the split's target year, a WLS model is
/// fitted, and back-transformed train/test relative errors are recorded.
/// The uniform (all weights 1) baseline is fitted once. Per-bandwidth fit
/// failures become undefined points, never split failures.
SplitResult run_split(const Dataset& dataset, const ChronoSplit& split, KernelType kernel,
                      std::span<const double> bandwidths,
                      NormalityMode mode = NormalityMode::PaperFixed, double alpha = 0.05);

} // namespace driftscope

#endif
