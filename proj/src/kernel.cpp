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

#include "driftscope/kernel.hpp"

#include "driftscope/error.hpp"

#include <cmath>
#include <limits>

namespace driftscope {

std::string_view to_string(KernelType k) {
    switch (k) {
        case KernelType::Uniform: return "uniform";
        case KernelType::Gaussian: return "gaussian";
        case KernelType::Epanechnikov: return "epanechnikov";
        case KernelType::Triangular: return "triangular";
    }
    return "unknown";
}

KernelType kernel_from_string(std::string_view name) {
    for (KernelType k : kAllKernels) {
        if (to_string(k) == name) return k;
    }
    throw Error(ErrorCode::ConfigMismatch, "unknown kernel '" + std::string(name) + "'");
}

double scaled_time(int i_index, int j_index, double bandwidth) {
    if (!(bandwidth > 0.0)) {
        throw Error(ErrorCode::NonPositiveBandwidth,
                    "bandwidth must be positive, got " + std::to_string(bandwidth));
    }
    if (i_index < 1 || j_index < i_index) {
        throw Error(ErrorCode::BadSpec, "year indices must satisfy j >= i >= 1 (got i=" +
                                            std::to_string(i_index) +
                                            ", j=" + std::to_string(j_index) + ")");
    }
    return static_cast<double>(j_index - i_index) / bandwidth;
}

double kernel_weight(KernelType kernel, double t) {
    switch (kernel) {
        case KernelType::Uniform:
            return 1.0;
        case KernelType::Gaussian:
            return std::exp(-0.5 * t * t);
        case KernelType::Epanechnikov:
            return t < 1.0 ? 1.0 - t * t : 0.0;
        case KernelType::Triangular:
            return t < 1.0 ? 1.0 - t : 0.0;
    }
    return 0.0;
}

WeightAssignment weights_for_target(const Dataset& dataset, std::span<const std::size_t> training,
                                    KernelType kernel, double bandwidth, int target_year_index) {
    if (!(bandwidth > 0.0)) {
        throw Error(ErrorCode::NonPositiveBandwidth,
                    "bandwidth must be positive, got " + std::to_string(bandwidth));
    }
    if (training.empty()) {
        throw Error(ErrorCode::EmptyTrainingSet, "no records to weight");
    }
    WeightAssignment out;
    out.target_year_index = target_year_index;
    out.bandwidth = bandwidth;
    out.kernel = kernel;
    out.record_ids.reserve(training.size());
    out.weights.reserve(training.size());
    for (std::size_t idx : training) {
        const ProjectRecord& r = dataset.records.at(idx);
        const int i_index = dataset.year_index(r);
        if (i_index > target_year_index) {
            throw Error(ErrorCode::BadSpec, "record '" + r.id +
                                                "' completes after the target year (index " +
                                                std::to_string(i_index) + " > " +
                                                std::to_string(target_year_index) + ")");
        }
        out.record_ids.push_back(r.id);
        out.weights.push_back(kernel_weight(kernel, scaled_time(i_index, target_year_index, bandwidth)));
    }
    return out;
}

WeightAssignment weights_for_target(const Dataset& dataset, KernelType kernel, double bandwidth,
                                    int target_year_index) {
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < dataset.records.size(); ++i) {
        if (dataset.year_index(dataset.records[i]) <= target_year_index) all.push_back(i);
    }
    if (all.empty()) {
        throw Error(ErrorCode::EmptyTrainingSet,
                    "no records complete by year index " + std::to_string(target_year_index));
    }
    return weights_for_target(dataset, all, kernel, bandwidth, target_year_index);
}

double decay_horizon(KernelType kernel, double bandwidth, double kappa) {
    if (!(bandwidth > 0.0)) {
        throw Error(ErrorCode::NonPositiveBandwidth,
                    "bandwidth must be positive, got " + std::to_string(bandwidth));
    }
    if (!(kappa > 0.0) || !(kappa < 1.0)) {
        throw Error(ErrorCode::BadKappa, "kappa must lie in (0, 1), got " + std::to_string(kappa));
    }
    switch (kernel) {
        case KernelType::Uniform:
            return std::numeric_limits<double>::infinity();
        case KernelType::Gaussian:
            return bandwidth * std::sqrt(-2.0 * std::log(kappa));
        case KernelType::Epanechnikov:
            return bandwidth * std::sqrt(1.0 - kappa);
        case KernelType::Triangular:
            return bandwidth * (1.0 - kappa);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace driftscope
