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

#ifndef DRIFTSCOPE_SYNTH_HPP
#define DRIFTSCOPE_SYNTH_HPP

#include "driftscope/dataset.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace driftscope {

/// Optional categorical attribute mixed into generated projects.
struct CategoricalMix {
    std::string name = "category";
    std::vector<std::string> levels;
    std::vector<double> probabilities;      // same length as levels, sums to 1
    std::vector<double> log_effort_offsets; // additive on the log-effort scale
    std::string reference_level;
};

/// Generating process for synthetic effort data:
///   ln(effort) = b0(t) + b1(t) * ln(size) + level offset + Normal(0, sigma^2)
/// Sizes are lognormal. All randomness derives from `seed` via mt19937_64
/// with Box-Muller normal draws, so output is identical across platforms.
struct ProcessSpec {
    int n_years = 10;
    int projects_per_year = 10;
    int start_year = 2000;
    std::vector<double> intercepts{3.0}; // per-year; a single entry means constant
    std::vector<double> slopes{1.0};
    double noise_sigma = 0.3;
    double size_log_median = 5.298317366548036; // ln(200): median 200 function points
    double size_log_sigma = 0.8;
    std::optional<CategoricalMix> mix;
    std::uint64_t seed = 1;
    std::string name = "synthetic";
};

/// Requires a constant coefficient path. noise_sigma = 0 gives a
/// deterministic process every well-formed fit recovers exactly.
Dataset gen_stationary(const ProcessSpec& spec);

/// Requires a non-constant coefficient path (per-year intercepts/slopes).
Dataset gen_drifting(const ProcessSpec& spec);

/// Linear ramp helper for drift paths.
std::vector<double> ramp(double from, double to, int n_years);

/// Writes dataset CSV plus the matching generic-loader schema config and a
/// JSON sidecar describing the true generating process. Emitted bytes are a
/// pure function of the inputs.
struct SynthArtifacts {
    std::filesystem::path csv;
    std::filesystem::path schema;
    std::filesystem::path profile;
};
SynthArtifacts emit_synth(const Dataset& dataset, const ProcessSpec& spec,
                          const std::filesystem::path& output_dir);

} // namespace driftscope

#endif
