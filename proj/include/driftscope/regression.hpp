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

#ifndef DRIFTSCOPE_REGRESSION_HPP
#define DRIFTSCOPE_REGRESSION_HPP

#include "driftscope/dataset.hpp"

#include <Eigen/Dense>

#include <map>
#include <span>
#include <string>
#include <vector>

namespace driftscope {

/// Which variables get log-transformed and which categorical levels are
/// usable for encoding. Produced by the normality gate (or straight from the
/// ModelSpec flags); consumed by design construction and prediction.
struct TransformPlan {
    bool log_response = true;
    std::map<std::string, bool, std::less<>> log_numeric;
    /// Levels available for dummy encoding, per categorical term, in spec
    /// order. Defaults to the full spec level list.
    std::map<std::string, std::vector<std::string>, std::less<>> active_levels;
    /// Encoding baseline per categorical term. Equals the spec reference
    /// level unless that level is absent from the active set.
    std::map<std::string, std::string, std::less<>> reference;

    bool numeric_logged(std::string_view name) const;
};

/// Plan with all spec levels active and transforms taken from the spec flags.
TransformPlan plan_from_spec(const ModelSpec& spec);

struct DesignMatrix {
    Eigen::MatrixXd x; // n x (p+1), intercept first
    Eigen::VectorXd y; // response, possibly log scale
    std::vector<std::string> column_names;
    std::vector<std::string> row_record_ids;
    bool response_logged = false;

    Eigen::Index rows() const { return x.rows(); }
    Eigen::Index cols() const { return x.cols(); }
    int predictor_count() const { return static_cast<int>(x.cols()) - 1; }
};

/// Builds intercept + numeric columns (logged per plan) + dummy columns
/// (active levels minus the reference, in spec order). Throws UnknownLevel
/// for levels outside the spec, UnseenLevel for levels outside the active
/// set, NonPositiveValue for log of a non-positive value.
DesignMatrix build_design(const Dataset& dataset, std::span<const std::size_t> record_indices,
                          const ModelSpec& spec, const TransformPlan& plan);

struct FitResult {
    std::vector<std::string> coefficient_names;
    Eigen::VectorXd coefficients; // dropped columns carry 0
    int n_effective = 0;          // rows with weight >= the exclusion cutoff
    int predictor_count = 0;      // design columns excluding intercept
    Eigen::VectorXd residuals_log_scale; // y - x*beta over all design rows
    bool converged = true;        // false when collinear columns were dropped
    std::vector<std::string> dropped_columns;

    double coefficient(std::string_view name) const;
};

/// Rows with weight below this threshold do not count toward n_effective and
/// are excluded from the solve.
inline constexpr double kWeightExclusionCutoff = 1e-12;
/// Relative column-norm tolerance for the rank check on sqrt-weight-scaled
/// columns.
inline constexpr double kRankTolerance = 1e-10;

/// Weighted least squares: minimizes sum_i w_i (y_i - x_i beta)^2 by
/// Householder QR of the sqrt(w)-scaled system. With unit weights this is
/// exactly ordinary least squares. Throws NotWellFormed when the effective
/// sample is smaller than predictors + 2, LengthMismatch on a weight/row
/// count mismatch.
FitResult fit_wls(const DesignMatrix& design, std::span<const double> weights);

struct Prediction {
    std::string record_id;
    double predicted_effort = 0.0; // natural units (back-transformed)
};

struct PredictOutcome {
    std::vector<Prediction> predictions;
    /// Aligned with the requested record indices; empty where skipped.
    std::vector<std::optional<double>> aligned;
    std::vector<std::string> skipped_unseen_level; // record ids
};

/// Evaluates the linear predictor for each record and back-transforms when
/// the response was fitted on log scale. Records whose categorical level was
/// not in the training design are skipped and reported, not fatal.
PredictOutcome predict(const FitResult& fit, const Dataset& dataset,
                       std::span<const std::size_t> record_indices, const ModelSpec& spec,
                       const TransformPlan& plan);

} // namespace driftscope

#endif
