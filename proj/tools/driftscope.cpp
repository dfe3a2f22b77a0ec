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

#include "driftscope/analysis.hpp"
#include "driftscope/csv.hpp"
#include "driftscope/error.hpp"
#include "driftscope/ingest.hpp"
#include "driftscope/report.hpp"
#include "driftscope/synth.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace driftscope;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitAnalysis = 3;

std::filesystem::path default_output_dir() {
    if (const char* env = std::getenv("DRIFTSCOPE_OUTPUT_DIR")) return env;
    return "driftscope_out";
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    out << bytes;
}

std::vector<KernelType> parse_kernels(const std::string& csv) {
    std::vector<KernelType> kernels;
    for (const auto& name : split(csv, ',')) {
        const std::string t = trim(name);
        if (t.empty()) continue;
        kernels.push_back(kernel_from_string(to_lower(t)));
    }
    if (kernels.empty()) throw Error(ErrorCode::ConfigMismatch, "no kernels selected");
    return kernels;
}

std::vector<double> parse_grid(const std::string& text) {
    // 'lo:hi[:step]' or a comma list.
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() < 2 || parts.size() > 3) {
            throw Error(ErrorCode::ConfigMismatch, "grid must be lo:hi[:step]");
        }
        const auto lo = parse_double(parts[0]);
        const auto hi = parse_double(parts[1]);
        const double step = parts.size() == 3 ? parse_double(parts[2]).value_or(0.0) : 1.0;
        if (!lo || !hi || !(step > 0.0) || *hi < *lo) {
            throw Error(ErrorCode::ConfigMismatch, "bad grid '" + text + "'");
        }
        std::vector<double> grid;
        for (double b = *lo; b <= *hi + 1e-9; b += step) grid.push_back(b);
        return grid;
    }
    std::vector<double> grid;
    for (const auto& part : split(text, ',')) {
        const auto v = parse_double(part);
        if (!v || !(*v > 0.0)) throw Error(ErrorCode::ConfigMismatch, "bad bandwidth '" + part + "'");
        grid.push_back(*v);
    }
    if (grid.empty()) throw Error(ErrorCode::ConfigMismatch, "empty bandwidth grid");
    return grid;
}

nlohmann::json diagnostics_json(const LoadResult& load) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& d : load.diagnostics) {
        out.push_back({{"level", d.level == Diagnostic::Level::Warning ? "warning" : "info"},
                       {"code", d.code},
                       {"message", d.message},
                       {"record_id", d.record_id}});
    }
    for (const auto& id : load.dropped_record_ids) {
        out.push_back({{"level", "info"},
                       {"code", "DroppedRecord"},
                       {"message", "record dropped during load"},
                       {"record_id", id}});
    }
    return out;
}

void write_analysis_outputs(const AnalysisResult& result, const std::filesystem::path& out_dir,
                            const nlohmann::json& diagnostics) {
    std::filesystem::create_directories(out_dir);
    write_file(out_dir / "config_echo.json", result.config.to_json().dump(2) + "\n");
    write_file(out_dir / "results.json", to_json(result).dump(2) + "\n");
    write_file(out_dir / "verdicts.json", verdicts_json(result).dump(2) + "\n");
    write_file(out_dir / "curves.csv", curves_csv(result));
    write_file(out_dir / "diagnostics.json", diagnostics.dump(2) + "\n");
    const RenderedReport report = render_report(result);
    write_file(out_dir / "report.md", report.markdown);
    for (const auto& [filename, bytes] : report.assets) {
        write_file(out_dir / "assets" / filename, bytes);
    }
}

int run_analyze(const std::string& dataset_family, const std::string& path,
                const std::string& schema_path, RunConfig config,
                const std::filesystem::path& out_dir, bool json_stdout, bool with_fit_dump) {
    LoadResult load;
    try {
        if (!std::filesystem::exists(path)) {
            throw Error(ErrorCode::IoError, "dataset file '" + path + "' does not exist");
        }
        if (dataset_family == "generic") {
            if (schema_path.empty()) {
                throw Error(ErrorCode::ConfigMismatch, "--schema is required with --dataset generic");
            }
            load = load_generic(path, parse_schema_config(schema_path));
        } else {
            load = load_named(dataset_family, path);
        }
    } catch (const Error& e) {
        std::cerr << nlohmann::json{{"level", "error"}, {"code", to_string(e.code())},
                                    {"message", e.what()}}
                         .dump()
                  << "\n";
        return kExitValidation;
    }

    try {
        const AnalysisResult result = analyze(load.dataset, config);
        write_analysis_outputs(result, out_dir, diagnostics_json(load));
        if (with_fit_dump) {
            for (const auto& [filename, bytes] : dump_fits(load.dataset, config)) {
                write_file(out_dir / "fits" / filename, bytes);
            }
        }
        if (json_stdout) {
            std::cout << verdicts_json(result).dump(2) << "\n";
        } else {
            std::cout << "dataset: " << result.dataset_name << " (" << result.n_records
                      << " records, years " << result.origin_year << "-"
                      << result.origin_year + result.span_years - 1 << ")\n\n";
            std::cout << verdict_table(result);
            std::cout << "\noutputs written to " << out_dir.string() << "\n";
        }
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << nlohmann::json{{"level", "error"}, {"code", to_string(e.code())},
                                    {"message", e.what()}}
                         .dump()
                  << "\n";
        return kExitAnalysis;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"driftscope: stationarity analysis of software effort estimation datasets "
                 "via kernel-weighted regression bandwidth sweeps"};
    app.require_subcommand(1);

    std::string out_dir_flag;
    app.add_option("--out", out_dir_flag,
                   "output directory (default: $DRIFTSCOPE_OUTPUT_DIR or ./driftscope_out)")
        ->capture_default_str();

    // analyze ---------------------------------------------------------------
    auto* analyze_cmd = app.add_subcommand(
        "analyze", "run splits -> bandwidth sweeps -> verdicts -> report for one dataset");
    std::string dataset_family = "generic";
    std::string dataset_path;
    std::string schema_path;
    std::string kernels_flag = "uniform,gaussian,epanechnikov,triangular";
    std::string grid_flag = "1:100:1";
    std::string mode_flag = "paper_fixed";
    RunConfig config;
    bool json_stdout = false;
    bool no_full_split = false;
    bool with_fit_dump = false;
    analyze_cmd->add_option("--dataset", dataset_family,
                            "dataset family: nasa93|desharnais|kitchenham|generic")
        ->capture_default_str();
    analyze_cmd->add_option("--path", dataset_path, "CSV file to analyze")->required();
    analyze_cmd->add_option("--schema", schema_path, "schema config for --dataset generic");
    analyze_cmd->add_option("--kernels", kernels_flag, "comma list of kernels to run")
        ->capture_default_str();
    analyze_cmd->add_option("--grid", grid_flag, "bandwidth grid, lo:hi[:step] or comma list")
        ->capture_default_str();
    analyze_cmd->add_option("--epsilon", config.epsilon, "convergence tolerance on the RE gap")
        ->capture_default_str();
    analyze_cmd->add_option("--kappa", config.kappa, "weight-decay threshold for the horizon")
        ->capture_default_str();
    analyze_cmd->add_option("--alpha", config.alpha, "Shapiro-Wilk significance level")
        ->capture_default_str();
    analyze_cmd->add_option("--mode", mode_flag, "normality gating: paper_fixed|strict")
        ->capture_default_str();
    analyze_cmd->add_option("--jobs", config.jobs, "worker threads (0 = hardware)")
        ->capture_default_str();
    analyze_cmd->add_option("--y-max", config.report_y_max, "RE plot y-axis clip")
        ->capture_default_str();
    analyze_cmd->add_flag("--json", json_stdout, "print verdicts as JSON to stdout");
    analyze_cmd->add_flag("--no-full-split", no_full_split,
                          "skip the whole-dataset split");
    analyze_cmd->add_flag("--dump-fits", with_fit_dump,
                          "write per-split design matrices and coefficients for audit");

    // weights ---------------------------------------------------------------
    auto* weights_cmd =
        app.add_subcommand("weights", "export kernel weight-decay curves (CSV + SVG)");
    std::string weights_kernel = "gaussian";
    std::string weights_bandwidths = "1,2,5,25,100";
    int weights_years = 20;
    bool weights_json = false;
    weights_cmd->add_option("--kernel", weights_kernel, "kernel type")->capture_default_str();
    weights_cmd->add_option("--bandwidths", weights_bandwidths, "comma list of bandwidths")
        ->capture_default_str();
    weights_cmd->add_option("--years", weights_years, "max elapsed years")->capture_default_str();
    weights_cmd->add_flag("--json", weights_json, "print curve points as JSON to stdout");

    // synth -----------------------------------------------------------------
    auto* synth_cmd =
        app.add_subcommand("synth", "generate a synthetic dataset with known drift profile");
    std::string synth_kind = "stationary";
    ProcessSpec synth_spec;
    double slope_from = 1.0, slope_to = 1.0;
    double intercept = 3.0;
    synth_cmd->add_option("kind", synth_kind, "stationary|drifting")->required();
    synth_cmd->add_option("--seed", synth_spec.seed, "RNG seed")->capture_default_str();
    synth_cmd->add_option("--years", synth_spec.n_years, "number of years")->capture_default_str();
    synth_cmd->add_option("--per-year", synth_spec.projects_per_year, "projects per year")
        ->capture_default_str();
    synth_cmd->add_option("--sigma", synth_spec.noise_sigma, "log-scale noise sigma")
        ->capture_default_str();
    synth_cmd->add_option("--intercept", intercept, "log-effort intercept")->capture_default_str();
    synth_cmd->add_option("--slope-from", slope_from, "ln(size) slope in the first year")
        ->capture_default_str();
    synth_cmd->add_option("--slope-to", slope_to, "ln(size) slope in the last year")
        ->capture_default_str();
    synth_cmd->add_option("--start-year", synth_spec.start_year, "first calendar year")
        ->capture_default_str();
    synth_cmd->add_option("--name", synth_spec.name, "dataset name")->capture_default_str();

    // report ----------------------------------------------------------------
    auto* report_cmd =
        app.add_subcommand("report", "regenerate report.md + figures from results.json");
    std::string report_from;
    report_cmd->add_option("--from", report_from, "results.json produced by analyze")->required();

    CLI11_PARSE(app, argc, argv);

    const std::filesystem::path out_dir =
        out_dir_flag.empty() ? default_output_dir() : std::filesystem::path(out_dir_flag);

    try {
        if (*analyze_cmd) {
            try {
                config.kernels = parse_kernels(kernels_flag);
                config.grid = parse_grid(grid_flag);
                config.mode = normality_mode_from_string(mode_flag);
                config.include_full_dataset_split = !no_full_split;
            } catch (const Error& e) {
                std::cerr << e.what() << "\n";
                return kExitValidation;
            }
            return run_analyze(to_lower(dataset_family), dataset_path, schema_path, config,
                               out_dir, json_stdout, with_fit_dump);
        }

        if (*weights_cmd) {
            KernelType kernel;
            std::vector<double> bandwidths;
            try {
                kernel = kernel_from_string(to_lower(weights_kernel));
                bandwidths = parse_grid(weights_bandwidths);
                if (weights_years < 1) {
                    throw Error(ErrorCode::ConfigMismatch, "--years must be >= 1");
                }
            } catch (const Error& e) {
                std::cerr << e.what() << "\n";
                return kExitValidation;
            }
            const std::string csv = weight_curves_csv(kernel, bandwidths, weights_years);
            const std::string svg = render_weight_curves(kernel, bandwidths, weights_years);
            std::filesystem::create_directories(out_dir);
            const std::string stem = "weights_" + std::string(to_string(kernel));
            write_file(out_dir / (stem + ".csv"), csv);
            write_file(out_dir / (stem + ".svg"), svg);
            if (weights_json) {
                nlohmann::json points = nlohmann::json::array();
                for (double b : bandwidths) {
                    for (int year = 0; year <= weights_years; ++year) {
                        points.push_back({{"elapsed_years", year},
                                          {"bandwidth", b},
                                          {"weight", kernel_weight(kernel, year / b)}});
                    }
                }
                std::cout << points.dump(2) << "\n";
            } else {
                std::cout << "wrote " << (out_dir / (stem + ".csv")).string() << " and "
                          << (out_dir / (stem + ".svg")).string() << "\n";
            }
            return kExitOk;
        }

        if (*synth_cmd) {
            Dataset dataset;
            try {
                synth_spec.intercepts = {intercept};
                if (synth_kind == "stationary") {
                    synth_spec.slopes = {slope_from};
                    dataset = gen_stationary(synth_spec);
                } else if (synth_kind == "drifting") {
                    synth_spec.slopes = ramp(slope_from, slope_to, synth_spec.n_years);
                    dataset = gen_drifting(synth_spec);
                } else {
                    throw Error(ErrorCode::ConfigMismatch,
                                "kind must be 'stationary' or 'drifting'");
                }
            } catch (const Error& e) {
                std::cerr << e.what() << "\n";
                return kExitValidation;
            }
            const SynthArtifacts artifacts = emit_synth(dataset, synth_spec, out_dir);
            std::cout << "wrote " << artifacts.csv.string() << ", " << artifacts.schema.string()
                      << ", " << artifacts.profile.string() << "\n";
            return kExitOk;
        }

        if (*report_cmd) {
            nlohmann::json j;
            try {
                std::ifstream in(report_from, std::ios::binary);
                if (!in) throw Error(ErrorCode::IoError, "cannot open '" + report_from + "'");
                in >> j;
            } catch (const std::exception& e) {
                std::cerr << e.what() << "\n";
                return kExitValidation;
            }
            const AnalysisResult result = analysis_from_json(j);
            const RenderedReport report = render_report(result);
            std::filesystem::create_directories(out_dir);
            write_file(out_dir / "report.md", report.markdown);
            for (const auto& [filename, bytes] : report.assets) {
                write_file(out_dir / "assets" / filename, bytes);
            }
            std::cout << "wrote " << (out_dir / "report.md").string() << "\n";
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitAnalysis;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitAnalysis;
    }
    return kExitOk;
}
