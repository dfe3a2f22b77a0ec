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

#ifndef DRIFTSCOPE_STATS_HPP
#define DRIFTSCOPE_STATS_HPP

#include <span>
#include <vector>

namespace driftscope {

struct NormalityResult {
    double w_statistic = 0.0;
    double p_value = 0.0;
    int n = 0;
    double alpha = 0.05;
    bool normal = true; // false iff p_value < alpha

    bool non_normal() const { return !normal; }
};

/// Shapiro-Wilk W test, Royston's AS R94 approximation (complete samples,
/// 3 <= n <= 5000). Throws SampleTooSmall / SampleTooLarge / ZeroVariance.
NormalityResult shapiro_wilk(std::span<const double> sample, double alpha = 0.05);

/// Unbiased (n-1) sample variance; n >= 2.
double sample_variance(std::span<const double> xs);

/// variance(measured - predicted) / variance(measured). Throws
/// LengthMismatch, SampleTooSmall (n < 2) and ConstantMeasured (the ratio is
/// undefined, never reported as infinity).
double relative_error(std::span<const double> predicted, std::span<const double> measured);

/// Natural log of each element; all inputs must be positive.
std::vector<double> log_transform(std::span<const double> xs);
/// exp of each element (inverse of log_transform).
std::vector<double> back_transform(std::span<const double> ys);

namespace detail {
/// Lower-tail standard normal quantile (Wichura's AS 241, double precision).
double normal_quantile(double p);
/// Upper-tail standard normal probability.
double normal_upper_tail(double z);
} // namespace detail

} // namespace driftscope

#endif
