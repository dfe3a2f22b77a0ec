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

#include "driftscope/report.hpp"

#include "driftscope/csv.hpp"
#include "driftscope/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <string>

namespace driftscope {

namespace {

// Fixed plot geometry; all rendering is text-deterministic.
constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 62.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 34.0;
constexpr double kMarginBottom = 46.0;

constexpr const char* kPalette[] = {"#1b6ca8", "#c0392b", "#27824d", "#8e44ad",
                                    "#d68910", "#16717d", "#7f8c8d", "#4a235a"};

std::string num(double v, int decimals = 4) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

struct Frame {
    double x_min, x_max, y_min, y_max;

    double px(double x) const {
        return kMarginLeft + (x - x_min) / (x_max - x_min) * (kWidth - kMarginLeft - kMarginRight);
    }
    double py(double y) const {
        return kHeight - kMarginBottom -
               (y - y_min) / (y_max - y_min) * (kHeight - kMarginTop - kMarginBottom);
    }
};

void open_svg(std::string& svg, const std::string& title) {
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth, 0) +
           "\" height=\"" + num(kHeight, 0) + "\" viewBox=\"0 0 " + num(kWidth, 0) + " " +
           num(kHeight, 0) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(kWidth / 2, 1) +
           "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
           title + "</text>\n";
}

void draw_axes(std::string& svg, const Frame& f, const std::string& x_label,
               const std::string& y_label, int x_ticks, int y_ticks, int tick_decimals) {
    svg += "<g stroke=\"#333\" stroke-width=\"1\" fill=\"none\">\n";
    svg += "<line x1=\"" + num(f.px(f.x_min), 1) + "\" y1=\"" + num(f.py(f.y_min), 1) +
           "\" x2=\"" + num(f.px(f.x_max), 1) + "\" y2=\"" + num(f.py(f.y_min), 1) + "\"/>\n";
    svg += "<line x1=\"" + num(f.px(f.x_min), 1) + "\" y1=\"" + num(f.py(f.y_min), 1) +
           "\" x2=\"" + num(f.px(f.x_min), 1) + "\" y2=\"" + num(f.py(f.y_max), 1) + "\"/>\n";
    svg += "</g>\n";
    svg += "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#333\">\n";
    for (int i = 0; i <= x_ticks; ++i) {
        const double x = f.x_min + (f.x_max - f.x_min) * i / x_ticks;
        svg += "<line stroke=\"#333\" x1=\"" + num(f.px(x), 1) + "\" y1=\"" +
               num(f.py(f.y_min), 1) + "\" x2=\"" + num(f.px(x), 1) + "\" y2=\"" +
               num(f.py(f.y_min) + 4, 1) + "\"/>\n";
        svg += "<text x=\"" + num(f.px(x), 1) + "\" y=\"" + num(f.py(f.y_min) + 16, 1) +
               "\" text-anchor=\"middle\">" + num(x, 0) + "</text>\n";
    }
    for (int i = 0; i <= y_ticks; ++i) {
        const double y = f.y_min + (f.y_max - f.y_min) * i / y_ticks;
        svg += "<line stroke=\"#333\" x1=\"" + num(f.px(f.x_min) - 4, 1) + "\" y1=\"" +
               num(f.py(y), 1) + "\" x2=\"" + num(f.px(f.x_min), 1) + "\" y2=\"" + num(f.py(y), 1) +
               "\"/>\n";
        svg += "<text x=\"" + num(f.px(f.x_min) - 8, 1) + "\" y=\"" + num(f.py(y) + 3, 1) +
               "\" text-anchor=\"end\">" + num(y, tick_decimals) + "</text>\n";
    }
    svg += "<text x=\"" + num((f.px(f.x_min) + f.px(f.x_max)) / 2, 1) + "\" y=\"" +
           num(kHeight - 10, 1) + "\" text-anchor=\"middle\" font-size=\"12\">" + x_label +
           "</text>\n";
    svg += "<text x=\"16\" y=\"" + num((f.py(f.y_min) + f.py(f.y_max)) / 2, 1) +
           "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
           num((f.py(f.y_min) + f.py(f.y_max)) / 2, 1) + ")\">" + y_label + "</text>\n";
    svg += "</g>\n";
}

void polyline(std::string& svg, const std::vector<std::pair<double, double>>& pts,
              const std::string& color, const std::string& dash = "") {
    if (pts.size() < 2) {
        if (pts.size() == 1) {
            svg += "<circle cx=\"" + num(pts[0].first, 2) + "\" cy=\"" + num(pts[0].second, 2) +
                   "\" r=\"2\" fill=\"" + color + "\"/>\n";
        }
        return;
    }
    svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
    if (!dash.empty()) svg += " stroke-dasharray=\"" + dash + "\"";
    svg += " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) svg += " ";
        svg += num(pts[i].first, 2) + "," + num(pts[i].second, 2);
    }
    svg += "\"/>\n";
}

void legend_entry(std::string& svg, double x, double y, const std::string& color,
                  const std::string& label, const std::string& dash = "") {
    svg += "<line stroke=\"" + color + "\" stroke-width=\"1.5\"";
    if (!dash.empty()) svg += " stroke-dasharray=\"" + dash + "\"";
    svg += " x1=\"" + num(x, 1) + "\" y1=\"" + num(y - 3, 1) + "\" x2=\"" + num(x + 22, 1) +
           "\" y2=\"" + num(y - 3, 1) + "\"/>\n";
    svg += "<text font-family=\"sans-serif\" font-size=\"10\" fill=\"#333\" x=\"" +
           num(x + 27, 1) + "\" y=\"" + num(y, 1) + "\">" + label + "</text>\n";
}

} // namespace

std::string render_weight_curves(KernelType kernel, std::span<const double> bandwidths,
                                 int max_years) {
    if (bandwidths.empty()) {
        throw Error(ErrorCode::EmptySelection, "no bandwidths selected");
    }
    if (max_years < 1) {
        throw Error(ErrorCode::BadSpec, "max_years must be >= 1");
    }
    std::string svg;
    open_svg(svg, std::string("Kernel weights by elapsed years (") +
                      std::string(to_string(kernel)) + ")");
    Frame f{0.0, static_cast<double>(max_years), 0.0, 1.0};
    draw_axes(svg, f, "elapsed years", "weight", std::min(max_years, 10), 5, 1);

    for (std::size_t s = 0; s < bandwidths.size(); ++s) {
        const double b = bandwidths[s];
        std::vector<std::pair<double, double>> pts;
        for (int year = 0; year <= max_years; ++year) {
            const double w = kernel_weight(kernel, static_cast<double>(year) / b);
            pts.emplace_back(f.px(year), f.py(w));
        }
        polyline(svg, pts, kPalette[s % std::size(kPalette)]);
        legend_entry(svg, kWidth - 150, kMarginTop + 14.0 * (s + 1),
                     kPalette[s % std::size(kPalette)], "b = " + format_double(b, 6));
    }
    svg += "</svg>\n";
    return svg;
}

std::string weight_curves_csv(KernelType kernel, std::span<const double> bandwidths,
                              int max_years) {
    if (bandwidths.empty()) {
        throw Error(ErrorCode::EmptySelection, "no bandwidths selected");
    }
    std::string out = "elapsed_years,bandwidth,kernel,weight\n";
    for (double b : bandwidths) {
        for (int year = 0; year <= max_years; ++year) {
            const double w = kernel_weight(kernel, static_cast<double>(year) / b);
            out += to_csv_line({std::to_string(year), format_double(b),
                                std::string(to_string(kernel)), format_double(w)});
        }
    }
    return out;
}

std::string render_re_curves(const SweepCurve& curve, double y_max) {
    if (curve.grid.empty()) {
        throw Error(ErrorCode::EmptySelection, "curve has no grid points");
    }
    std::string svg;
    const std::string split_name =
        curve.is_full_dataset ? "full dataset" : "split " + std::to_string(curve.split_index);
    open_svg(svg, curve.dataset + " / " + std::string(to_string(curve.kernel)) + " / " +
                      split_name);
    Frame f{curve.grid.front(), curve.grid.back(), 0.0, y_max};
    draw_axes(svg, f, "bandwidth", "relative error", 10, 5, 1);

    auto clip = [&](double v) { return std::min(v, y_max); };

    // Weighted curves break at undefined grid points.
    auto draw_series = [&](const std::vector<std::optional<double>>& series,
                           const std::string& color, const std::string& dash) {
        std::vector<std::pair<double, double>> segment;
        for (std::size_t i = 0; i < curve.grid.size(); ++i) {
            if (series[i]) {
                segment.emplace_back(f.px(curve.grid[i]), f.py(clip(*series[i])));
            } else {
                polyline(svg, segment, color, dash);
                segment.clear();
            }
        }
        polyline(svg, segment, color, dash);
    };
    draw_series(curve.re_train, kPalette[0], "");
    draw_series(curve.re_test, kPalette[1], "");

    auto href = [&](const std::optional<double>& v, const std::string& color) {
        if (!v) return;
        const double y = f.py(clip(*v));
        std::vector<std::pair<double, double>> pts{{f.px(f.x_min), y}, {f.px(f.x_max), y}};
        polyline(svg, pts, color, "6,3");
    };
    href(curve.re_train_global, kPalette[2]);
    href(curve.re_test_global, kPalette[3]);

    legend_entry(svg, kWidth - 150, kMarginTop + 14, kPalette[0], "train");
    legend_entry(svg, kWidth - 150, kMarginTop + 28, kPalette[1], "test");
    legend_entry(svg, kWidth - 150, kMarginTop + 42, kPalette[2], "train global", "6,3");
    legend_entry(svg, kWidth - 150, kMarginTop + 56, kPalette[3], "test global", "6,3");
    svg += "</svg>\n";
    return svg;
}

namespace {

std::string opt_cell(const std::optional<double>& v, int decimals = 3) {
    if (!v) return "-";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, *v);
    return buf;
}

std::string split_label(int index, bool full) {
    return full ? "full" : std::to_string(index);
}

} // namespace

RenderedReport render_report(std::span<const AnalysisResult> results,
                             const std::string& asset_dir_name) {
    RenderedReport combined;
    if (results.empty()) {
        combined.markdown = "# Stationarity analysis\n\n_No analyses were run._\n";
        return combined;
    }
    for (const auto& result : results) {
        RenderedReport part = render_report(result, asset_dir_name);
        combined.markdown += part.markdown;
        combined.markdown += "\n";
        for (auto& asset : part.assets) combined.assets.push_back(std::move(asset));
    }
    return combined;
}

RenderedReport render_report(const AnalysisResult& result, const std::string& asset_dir_name) {
    RenderedReport report;
    std::string& md = report.markdown;

    md += "# Stationarity analysis: " + result.dataset_name + "\n\n";
    if (result.verdicts.empty()) {
        md += "_No analyses were run._\n";
        return report;
    }

    md += "- records: " + std::to_string(result.n_records) + "\n";
    md += "- origin year: " + std::to_string(result.origin_year) + "\n";
    md += "- span: " + std::to_string(result.span_years) + " year indices\n";
    md += "- effort unit: " + result.effort_unit + "\n\n";

    md += "## Configuration\n\n";
    md += "| parameter | value |\n|---|---|\n";
    md += "| epsilon (convergence tolerance) | " + format_double(result.config.epsilon, 6) +
          " |\n";
    md += "| kappa (decay threshold) | " + format_double(result.config.kappa, 6) + " |\n";
    md += "| alpha (normality level) | " + format_double(result.config.alpha, 6) + " |\n";
    md += "| normality mode | " + std::string(to_string(result.config.mode)) + " |\n";
    md += "| grid | " + format_double(result.config.grid.front(), 6) + ".." +
          format_double(result.config.grid.back(), 6) + " (" +
          std::to_string(result.config.grid.size()) + " points) |\n";
    std::string kernel_list;
    for (KernelType k : result.config.kernels) {
        kernel_list += (kernel_list.empty() ? "" : ", ") + std::string(to_string(k));
    }
    md += "| kernels | " + kernel_list + " |\n\n";

    md += "## Splits\n\n";
    md += "| split | training | test | filtered out | span (years) | target index |\n";
    md += "|---|---|---|---|---|---|\n";
    for (const auto& s : result.splits) {
        md += "| " + split_label(s.split_index, s.is_full_dataset) + " | " +
              std::to_string(s.training_size) + " | " + std::to_string(s.test_size) + " | " +
              std::to_string(s.filtered_out) + " | " + std::to_string(s.training_span_years) +
              " | " + std::to_string(s.target_year_index) + " |\n";
    }
    md += "\n## Verdicts\n\n";
    md += "| kernel | split | classification | b* | decay horizon (years) | span | max gap |\n";
    md += "|---|---|---|---|---|---|---|\n";
    for (const auto& v : result.verdicts) {
        md += "| " + std::string(to_string(v.kernel)) + " | " +
              split_label(v.split_index, v.is_full_dataset) + " | " +
              std::string(to_string(v.classification)) + " | " +
              opt_cell(v.convergence_bandwidth, 0) + " | " + opt_cell(v.decay_horizon_years, 2) +
              " | " + std::to_string(v.training_span_years) + " | " + opt_cell(v.max_gap, 4) +
              " |\n";
    }

    if (!result.agreement.rows.empty()) {
        md += "\n## Kernel agreement\n\n";
        md += "Non-uniform kernels agree on " +
              num(result.agreement.agreement_fraction * 100.0, 1) + "% of splits.\n\n";
        md += "| split | unanimous |";
        for (const auto& [kernel, _] : result.agreement.rows.front().verdicts) {
            md += " " + std::string(to_string(kernel)) + " |";
        }
        md += "\n|---|---|";
        for (std::size_t i = 0; i < result.agreement.rows.front().verdicts.size(); ++i) {
            md += "---|";
        }
        md += "\n";
        for (const auto& row : result.agreement.rows) {
            md += "| " + split_label(row.split_index, row.is_full_dataset) + " | " +
                  (row.unanimous ? "yes" : "no") + " |";
            for (const auto& [_, verdict] : row.verdicts) {
                md += " " + std::string(to_string(verdict)) + " |";
            }
            md += "\n";
        }
    }

    md += "\n## Figures\n\n";
    for (const auto& curve : result.curves) {
        const std::string filename = curve.dataset + "_" + std::string(to_string(curve.kernel)) +
                                     "_split" + split_label(curve.split_index, curve.is_full_dataset) +
                                     ".svg";
        report.assets.emplace_back(filename, render_re_curves(curve, result.config.report_y_max));
        md += "![" + filename + "](" + asset_dir_name + "/" + filename + ")\n\n";
    }
    return report;
}

std::string verdict_table(const AnalysisResult& result) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-14s %-6s %-16s %6s %10s %6s %9s\n", "kernel", "split",
                  "classification", "b*", "horizon", "span", "max_gap");
    out += buf;
    for (const auto& v : result.verdicts) {
        std::snprintf(buf, sizeof buf, "%-14s %-6s %-16s %6s %10s %6d %9s\n",
                      std::string(to_string(v.kernel)).c_str(),
                      split_label(v.split_index, v.is_full_dataset).c_str(),
                      std::string(to_string(v.classification)).c_str(),
                      opt_cell(v.convergence_bandwidth, 0).c_str(),
                      opt_cell(v.decay_horizon_years, 2).c_str(), v.training_span_years,
                      opt_cell(v.max_gap, 4).c_str());
        out += buf;
    }
    return out;
}

} // namespace driftscope
