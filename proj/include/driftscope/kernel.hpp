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

#ifndef DRIFTSCOPE_KERNEL_HPP
#define DRIFTSCOPE_KERNEL_HPP

#include "driftscope/dataset.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace driftscope {

/// Uniform is the unweighted baseline; Gaussian has full support; the
/// Epanechnikov and Triangular kernels are exactly zero for scaled time >= 1.
enum class KernelType { Uniform, Gaussian, Epanechnikov, Triangular };

std::string_view to_string(KernelType k);
KernelType kernel_from_string(std::string_view name); // throws ConfigMismatch

inline constexpr KernelType kAllKernels[] = {KernelType::Uniform, KernelType::Gaussian,
                                             KernelType::Epanechnikov, KernelType::Triangular};
inline constexpr KernelType kNonUniformKernels[] = {KernelType::Gaussian, KernelType::Epanechnikov,
                                                    KernelType::Triangular};

/// Elapsed year-index distance scaled by the bandwidth: (j - i) / b.
/// Requires j >= i >= 1 and b > 0.
double scaled_time(int i_index, int j_index, double bandwidth);

/// Weight at scaled time t >= 0; total, with values in [0, 1] and
/// kernel_weight(k, 0) == 1 for every kernel.
double kernel_weight(KernelType kernel, double t);

/// Per-record weights for one target year.
struct WeightAssignment {
    int target_year_index = 0;
    double bandwidth = 0.0;
    KernelType kernel = KernelType::Uniform;
    std::vector<std::string> record_ids;
    std::vector<double> weights; // aligned with record_ids
};

/// Weights for the records selected by `training` (indices into
/// dataset.records), all of which must complete no later than the target
/// year. Records completed in the target year get weight exactly 1.
WeightAssignment weights_for_target(const Dataset& dataset, std::span<const std::size_t> training,
                                    KernelType kernel, double bandwidth, int target_year_index);

/// Convenience overload weighting every record with year index <= target.
WeightAssignment weights_for_target(const Dataset& dataset, KernelType kernel, double bandwidth,
                                    int target_year_index);

/// Smallest elapsed-year value y >= 0 with kernel_weight(k, y/b) <= kappa.
/// Closed forms per kernel; +infinity for the Uniform kernel.
double decay_horizon(KernelType kernel, double bandwidth, double kappa);

} // namespace driftscope

#endif
