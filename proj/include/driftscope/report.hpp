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

#ifndef DRIFTSCOPE_REPORT_HPP
#define DRIFTSCOPE_REPORT_HPP

#include "driftscope/analysis.hpp"
#include "driftscope/kernel.hpp"
#include "driftscope/sweep.hpp"

#include <span>
#include <string>
#include <vector>

namespace driftscope {

/// Weight-decay curves, one polyline per bandwidth, sampled at integer
/// elapsed years 0..max_years. Output bytes are a pure function of the
/// inputs. Throws EmptySelection.
std::string render_weight_curves(KernelType kernel, std::span<const double> bandwidths,
                                 int max_years);

/// CSV companion to the weight plot: elapsed_years,bandwidth,kernel,weight
/// with full-precision weights.
std::string weight_curves_csv(KernelType kernel, std::span<const double> bandwidths,
                              int max_years);

/// Relative error against bandwidth for one split: weighted train/test
/// curves plus the uniform 'train global'/'test global' reference lines.
/// Undefined grid points leave gaps. The y axis is clipped at y_max.
std::string render_re_curves(const SweepCurve& curve, double y_max = 5.0);

/// Markdown report plus the SVG assets it references (relative paths under
/// `asset_dir_name`). Every number shown is taken from the results object.
struct RenderedReport {
    std::string markdown;
    std::vector<std::pair<std::string, std::string>> assets; // filename -> bytes
};
RenderedReport render_report(const AnalysisResult& result,
                             const std::string& asset_dir_name = "assets");
/// One section per dataset; an explicit notice when no analyses were run.
RenderedReport render_report(std::span<const AnalysisResult> results,
                             const std::string& asset_dir_name = "assets");

/// Plain-text verdict table for CLI output.
std::string verdict_table(const AnalysisResult& result);

} // namespace driftscope

#endif
