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

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace driftscope {

namespace {

nlohmann::json optional_to_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

std::optional<double> optional_from_json(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

} // namespace

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    std::vector<std::string> kernel_names;
    for (KernelType k : kernels) kernel_names.emplace_back(to_string(k));
    j["kernels"] = kernel_names;
    j["grid"] = grid;
    j["epsilon"] = epsilon;
    j["kappa"] = kappa;
    j["alpha"] = alpha;
    j["normality_mode"] = std::string(to_string(mode));
    j["jobs"] = jobs;
    j["include_full_dataset_split"] = include_full_dataset_split;
    j["report_y_max"] = report_y_max;
    return j;
}

std::optional<StationarityVerdict> AnalysisResult::full_dataset_verdict(KernelType kernel) const {
    for (const auto& v : verdicts) {
        if (v.kernel == kernel && v.is_full_dataset) return v;
    }
    return std::nullopt;
}

AnalysisResult::DatasetCall AnalysisResult::dataset_call(KernelType kernel) const {
    DatasetCall call;
    for (const auto& v : verdicts) {
        if (v.kernel != kernel) continue;
        switch (v.classification) {
            case Stationarity::Stationary: ++call.stationary_splits; break;
            case Stationarity::NonStationary: ++call.non_stationary_splits; break;
            case Stationarity::Undetermined: ++call.undetermined_splits; break;
        }
    }
    const int classified = call.stationary_splits + call.non_stationary_splits;
    if (classified == 0) {
        call.classification = Stationarity::Undetermined;
    } else if (3 * call.non_stationary_splits > 2 * classified) {
        call.classification = Stationarity::NonStationary;
    } else {
        call.classification = Stationarity::Stationary;
    }
    return call;
}

std::vector<const StationarityVerdict*> AnalysisResult::verdicts_for(KernelType kernel) const {
    std::vector<const StationarityVerdict*> out;
    for (const auto& v : verdicts) {
        if (v.kernel == kernel) out.push_back(&v);
    }
    return out;
}

AnalysisResult analyze(const Dataset& dataset, const RunConfig& config) {
    AnalysisResult result;
    result.dataset_name = dataset.name;
    result.n_records = dataset.records.size();
    result.origin_year = dataset.origin_year;
    result.span_years = dataset.max_year_index();
    result.effort_unit = dataset.effort_unit.name;
    result.config = config;

    std::vector<ChronoSplit> splits = make_splits(dataset);
    if (dataset.has_start_dates()) {
        for (auto& split : splits) split = apply_start_date_test_filter(split, dataset);
    }
    if (config.include_full_dataset_split) {
        splits.push_back(make_full_dataset_split(dataset, static_cast<int>(splits.size()) + 1));
    }
    for (const auto& split : splits) {
        result.splits.push_back({split.split_index, split.is_full_dataset, split.training.size(),
                                 split.test.size(), split.filtered_out.size(),
                                 split.training_span_years, split.target_year_index});
    }

    // One task per (kernel, split); slot-addressed output keeps the result
    // independent of scheduling.
    struct Task {
        KernelType kernel;
        const ChronoSplit* split;
        std::size_t slot;
    };
    std::vector<Task> tasks;
    for (KernelType kernel : config.kernels) {
        for (const auto& split : splits) {
            tasks.push_back({kernel, &split, tasks.size()});
        }
    }
    result.curves.resize(tasks.size());

    unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                    : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size()) == 0
                                        ? 1u
                                        : static_cast<unsigned>(tasks.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                const Task& task = tasks[i];
                const SplitResult split_result = run_split(
                    dataset, *task.split, task.kernel, config.grid, config.mode, config.alpha);
                result.curves[task.slot] = curve_from_split(split_result, dataset.name);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    result.verdicts.reserve(result.curves.size());
    for (const auto& curve : result.curves) {
        result.verdicts.push_back(classify(curve, config.epsilon, config.kappa));
    }

    // Agreement across the non-uniform kernels actually present in the run.
    std::vector<std::vector<StationarityVerdict>> by_kernel;
    for (KernelType kernel : kNonUniformKernels) {
        if (std::find(config.kernels.begin(), config.kernels.end(), kernel) ==
            config.kernels.end()) {
            continue;
        }
        std::vector<StationarityVerdict> verdicts;
        for (const auto& v : result.verdicts) {
            if (v.kernel == kernel) verdicts.push_back(v);
        }
        by_kernel.push_back(std::move(verdicts));
    }
    if (by_kernel.size() >= 2) {
        result.agreement = kernel_agreement(by_kernel);
    }
    return result;
}

namespace {

nlohmann::json curve_to_json(const SweepCurve& curve) {
    nlohmann::json j;
    j["dataset"] = curve.dataset;
    j["kernel"] = std::string(to_string(curve.kernel));
    j["split"] = curve.split_index;
    j["is_full_dataset"] = curve.is_full_dataset;
    j["grid"] = curve.grid;
    nlohmann::json train = nlohmann::json::array();
    nlohmann::json test = nlohmann::json::array();
    for (const auto& v : curve.re_train) train.push_back(optional_to_json(v));
    for (const auto& v : curve.re_test) test.push_back(optional_to_json(v));
    j["re_train"] = std::move(train);
    j["re_test"] = std::move(test);
    j["re_train_global"] = optional_to_json(curve.re_train_global);
    j["re_test_global"] = optional_to_json(curve.re_test_global);
    j["global_converged"] = curve.global_converged;
    j["training_span_years"] = curve.training_span_years;
    return j;
}

SweepCurve curve_from_json(const nlohmann::json& j) {
    SweepCurve curve;
    curve.dataset = j.at("dataset").get<std::string>();
    curve.kernel = kernel_from_string(j.at("kernel").get<std::string>());
    curve.split_index = j.at("split").get<int>();
    curve.is_full_dataset = j.at("is_full_dataset").get<bool>();
    curve.grid = j.at("grid").get<std::vector<double>>();
    for (const auto& v : j.at("re_train")) curve.re_train.push_back(optional_from_json(v));
    for (const auto& v : j.at("re_test")) curve.re_test.push_back(optional_from_json(v));
    curve.re_train_global = optional_from_json(j.at("re_train_global"));
    curve.re_test_global = optional_from_json(j.at("re_test_global"));
    curve.global_converged = j.at("global_converged").get<bool>();
    curve.training_span_years = j.at("training_span_years").get<int>();
    return curve;
}

nlohmann::json verdict_to_json(const StationarityVerdict& v) {
    nlohmann::json j;
    j["dataset"] = v.dataset;
    j["kernel"] = std::string(to_string(v.kernel));
    j["split"] = v.split_index;
    j["is_full_dataset"] = v.is_full_dataset;
    j["classification"] = std::string(to_string(v.classification));
    j["b_star"] = optional_to_json(v.convergence_bandwidth);
    j["decay_horizon"] = optional_to_json(v.decay_horizon_years);
    j["span"] = v.training_span_years;
    j["max_gap"] = optional_to_json(v.max_gap);
    j["epsilon"] = v.epsilon;
    j["kappa"] = v.kappa;
    j["reason"] = v.reason;
    return j;
}

StationarityVerdict verdict_from_json(const nlohmann::json& j) {
    StationarityVerdict v;
    v.dataset = j.at("dataset").get<std::string>();
    v.kernel = kernel_from_string(j.at("kernel").get<std::string>());
    v.split_index = j.at("split").get<int>();
    v.is_full_dataset = j.at("is_full_dataset").get<bool>();
    const std::string c = j.at("classification").get<std::string>();
    v.classification = c == "stationary"
                           ? Stationarity::Stationary
                           : (c == "non_stationary" ? Stationarity::NonStationary
                                                    : Stationarity::Undetermined);
    v.convergence_bandwidth = optional_from_json(j.at("b_star"));
    v.decay_horizon_years = optional_from_json(j.at("decay_horizon"));
    v.training_span_years = j.at("span").get<int>();
    v.max_gap = optional_from_json(j.at("max_gap"));
    v.epsilon = j.at("epsilon").get<double>();
    v.kappa = j.at("kappa").get<double>();
    v.reason = j.value("reason", "");
    return v;
}

} // namespace

nlohmann::json to_json(const AnalysisResult& result) {
    nlohmann::json j;
    j["dataset"] = {{"name", result.dataset_name},
                    {"records", result.n_records},
                    {"origin_year", result.origin_year},
                    {"span_years", result.span_years},
                    {"effort_unit", result.effort_unit}};
    j["config"] = result.config.to_json();
    nlohmann::json splits = nlohmann::json::array();
    for (const auto& s : result.splits) {
        splits.push_back({{"split", s.split_index},
                          {"is_full_dataset", s.is_full_dataset},
                          {"training_size", s.training_size},
                          {"test_size", s.test_size},
                          {"filtered_out", s.filtered_out},
                          {"training_span_years", s.training_span_years},
                          {"target_year_index", s.target_year_index}});
    }
    j["splits"] = std::move(splits);
    nlohmann::json curves = nlohmann::json::array();
    for (const auto& c : result.curves) curves.push_back(curve_to_json(c));
    j["curves"] = std::move(curves);
    j["verdicts"] = verdicts_json(result);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : result.agreement.rows) {
        nlohmann::json r;
        r["split"] = row.split_index;
        r["is_full_dataset"] = row.is_full_dataset;
        r["unanimous"] = row.unanimous;
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& [kernel, verdict] : row.verdicts) {
            cells.push_back({{"kernel", std::string(to_string(kernel))},
                             {"classification", std::string(to_string(verdict))}});
        }
        r["verdicts"] = std::move(cells);
        rows.push_back(std::move(r));
    }
    j["agreement"] = {{"rows", std::move(rows)},
                      {"fraction", result.agreement.agreement_fraction}};
    return j;
}

AnalysisResult analysis_from_json(const nlohmann::json& j) {
    AnalysisResult result;
    const auto& ds = j.at("dataset");
    result.dataset_name = ds.at("name").get<std::string>();
    result.n_records = ds.at("records").get<std::size_t>();
    result.origin_year = ds.at("origin_year").get<int>();
    result.span_years = ds.at("span_years").get<int>();
    result.effort_unit = ds.at("effort_unit").get<std::string>();

    const auto& cfg = j.at("config");
    result.config.kernels.clear();
    for (const auto& name : cfg.at("kernels")) {
        result.config.kernels.push_back(kernel_from_string(name.get<std::string>()));
    }
    result.config.grid = cfg.at("grid").get<std::vector<double>>();
    result.config.epsilon = cfg.at("epsilon").get<double>();
    result.config.kappa = cfg.at("kappa").get<double>();
    result.config.alpha = cfg.at("alpha").get<double>();
    result.config.mode = normality_mode_from_string(cfg.at("normality_mode").get<std::string>());
    result.config.jobs = cfg.at("jobs").get<int>();
    result.config.include_full_dataset_split = cfg.at("include_full_dataset_split").get<bool>();
    result.config.report_y_max = cfg.at("report_y_max").get<double>();

    for (const auto& s : j.at("splits")) {
        result.splits.push_back({s.at("split").get<int>(), s.at("is_full_dataset").get<bool>(),
                                 s.at("training_size").get<std::size_t>(),
                                 s.at("test_size").get<std::size_t>(),
                                 s.at("filtered_out").get<std::size_t>(),
                                 s.at("training_span_years").get<int>(),
                                 s.at("target_year_index").get<int>()});
    }
    for (const auto& c : j.at("curves")) result.curves.push_back(curve_from_json(c));
    for (const auto& v : j.at("verdicts")) result.verdicts.push_back(verdict_from_json(v));
    const auto& agreement = j.at("agreement");
    for (const auto& r : agreement.at("rows")) {
        AgreementRow row;
        row.split_index = r.at("split").get<int>();
        row.is_full_dataset = r.at("is_full_dataset").get<bool>();
        row.unanimous = r.at("unanimous").get<bool>();
        for (const auto& cell : r.at("verdicts")) {
            const std::string vn = cell.at("classification").get<std::string>();
            Stationarity s = vn == "stationary"
                                 ? Stationarity::Stationary
                                 : (vn == "non_stationary" ? Stationarity::NonStationary
                                                           : Stationarity::Undetermined);
            row.verdicts.emplace_back(kernel_from_string(cell.at("kernel").get<std::string>()), s);
        }
        result.agreement.rows.push_back(std::move(row));
    }
    result.agreement.agreement_fraction = agreement.at("fraction").get<double>();
    return result;
}

std::string curves_csv(const AnalysisResult& result) {
    std::string out = "split,kernel,bandwidth,re_train,re_test,re_train_global,re_test_global\n";
    auto cell = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    };
    for (const auto& curve : result.curves) {
        for (std::size_t i = 0; i < curve.grid.size(); ++i) {
            out += to_csv_line({std::to_string(curve.split_index),
                                std::string(to_string(curve.kernel)), format_double(curve.grid[i]),
                                cell(curve.re_train[i]), cell(curve.re_test[i]),
                                cell(curve.re_train_global), cell(curve.re_test_global)});
        }
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> dump_fits(const Dataset& dataset,
                                                           const RunConfig& config) {
    std::vector<std::pair<std::string, std::string>> files;
    std::vector<ChronoSplit> splits = make_splits(dataset);
    if (dataset.has_start_dates()) {
        for (auto& split : splits) split = apply_start_date_test_filter(split, dataset);
    }
    if (config.include_full_dataset_split) {
        splits.push_back(make_full_dataset_split(dataset, static_cast<int>(splits.size()) + 1));
    }

    std::string coeffs = "split,kernel,bandwidth,coefficient,value,converged\n";
    for (const auto& split : splits) {
        const TransformPlan plan =
            normality_gate(dataset, split.training, dataset.spec, config.mode, config.alpha);
        const DesignMatrix design = build_design(dataset, split.training, dataset.spec, plan);

        std::string matrix = "record_id";
        for (const auto& name : design.column_names) matrix += "," + name;
        matrix += ",response\n";
        for (Eigen::Index r = 0; r < design.rows(); ++r) {
            std::vector<std::string> row{design.row_record_ids[static_cast<std::size_t>(r)]};
            for (Eigen::Index c = 0; c < design.cols(); ++c) {
                row.push_back(format_double(design.x(r, c)));
            }
            row.push_back(format_double(design.y(r)));
            matrix += to_csv_line(row);
        }
        files.emplace_back("design_split" + std::to_string(split.split_index) + ".csv", matrix);

        auto record = [&](const FitResult& fit, KernelType kernel, const std::string& bandwidth) {
            for (std::size_t c = 0; c < fit.coefficient_names.size(); ++c) {
                coeffs += to_csv_line({std::to_string(split.split_index),
                                       std::string(to_string(kernel)), bandwidth,
                                       fit.coefficient_names[c],
                                       format_double(fit.coefficients(static_cast<Eigen::Index>(c))),
                                       fit.converged ? "true" : "false"});
            }
        };
        const std::vector<double> ones(split.training.size(), 1.0);
        record(fit_wls(design, ones), KernelType::Uniform, "");
        for (KernelType kernel : config.kernels) {
            if (kernel == KernelType::Uniform) continue;
            for (double b : config.grid) {
                try {
                    const WeightAssignment wa = weights_for_target(
                        dataset, split.training, kernel, b, split.target_year_index);
                    record(fit_wls(design, wa.weights), kernel, format_double(b));
                } catch (const Error&) {
                    // Undefined grid point; nothing to dump.
                }
            }
        }
    }
    files.emplace_back("coefficients.csv", std::move(coeffs));
    return files;
}

nlohmann::json verdicts_json(const AnalysisResult& result) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : result.verdicts) out.push_back(verdict_to_json(v));
    return out;
}

} // namespace driftscope
