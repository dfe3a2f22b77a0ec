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

// Acceptance suite: runs the project-level checks end to end and prints one
// PASS/FAIL/SKIP line per criterion. Criterion 1 needs the three public
// dataset files (./data or $DRIFTSCOPE_DATA_DIR); it is skipped when they
// are absent and criteria 2-6 constitute acceptance.

#include "driftscope/analysis.hpp"
#include "driftscope/csv.hpp"
#include "driftscope/error.hpp"
#include "driftscope/ingest.hpp"
#include "driftscope/report.hpp"
#include "driftscope/stats.hpp"
#include "driftscope/synth.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace driftscope;

namespace {

struct CheckLog {
    int failures = 0;
    std::vector<std::string> details;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            details.push_back(what);
        }
    }
};

enum class Outcome { Pass, Fail, Skip };

std::filesystem::path data_dir() {
    if (const char* env = std::getenv("DRIFTSCOPE_DATA_DIR")) return env;
    return std::filesystem::path(DRIFTSCOPE_SOURCE_DIR) / "data";
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Criterion 1: paper-verdict reproduction on the three public datasets.
// ---------------------------------------------------------------------------
Outcome criterion_1(CheckLog& log) {
    const auto dir = data_dir();
    const auto nasa = dir / "nasa93.csv";
    const auto desharnais = dir / "desharnais.csv";
    const auto kitchenham = dir / "kitchenham.csv";
    if (!std::filesystem::exists(nasa) || !std::filesystem::exists(desharnais) ||
        !std::filesystem::exists(kitchenham)) {
        log.details.push_back("dataset files not found under " + dir.string() +
                              " (expected nasa93.csv, desharnais.csv, kitchenham.csv)");
        return Outcome::Skip;
    }

    const auto start = std::chrono::steady_clock::now();
    RunConfig cfg; // frozen defaults: kernels x4, grid 1..100, eps .05, kappa .01
    const LoadResult nasa_load = load_nasa93(nasa);
    const LoadResult desh_load = load_desharnais(desharnais);
    const LoadResult kit_load = load_kitchenham(kitchenham);
    const AnalysisResult nasa_result = analyze(nasa_load.dataset, cfg);
    const AnalysisResult desh_result = analyze(desh_load.dataset, cfg);
    const AnalysisResult kit_result = analyze(kit_load.dataset, cfg);
    const double elapsed = seconds_since(start);
    log.expect(elapsed < 120.0, "runtime " + format_double(elapsed, 3) + "s exceeds 2 minutes");

    // Published record counts for the three datasets.
    log.expect(nasa_load.dataset.records.size() == 93,
               "nasa93 loaded " + std::to_string(nasa_load.dataset.records.size()) +
                   " records, expected 93");
    log.expect(desh_load.dataset.records.size() == 77,
               "desharnais loaded " + std::to_string(desh_load.dataset.records.size()) +
                   " records, expected 77");
    log.expect(kit_load.dataset.records.size() == 105,
               "kitchenham loaded " + std::to_string(kit_load.dataset.records.size()) +
                   " client-2 records, expected 105");
    int perfective = 0, development = 0;
    for (const auto& r : kit_load.dataset.records) {
        if (r.categoricals.at("type") == "Perfective") ++perfective;
        if (r.categoricals.at("type") == "Development") ++development;
    }
    log.expect(perfective == 67 && development == 38,
               "kitchenham type histogram " + std::to_string(perfective) + "/" +
                   std::to_string(development) + ", expected 67 perfective / 38 development");

    // NASA93: every split x every non-uniform kernel non-stationary.
    for (KernelType k : kNonUniformKernels) {
        for (const auto* v : nasa_result.verdicts_for(k)) {
            log.expect(v->classification == Stationarity::NonStationary,
                       "nasa93 " + std::string(to_string(k)) + " split " +
                           std::to_string(v->split_index) + " classified " +
                           std::string(to_string(v->classification)));
        }
    }
    // Convergence bandwidth windows for the Gaussian kernel.
    const auto nasa_full = nasa_result.full_dataset_verdict(KernelType::Gaussian);
    log.expect(nasa_full && nasa_full->convergence_bandwidth &&
                   *nasa_full->convergence_bandwidth >= 12.0 &&
                   *nasa_full->convergence_bandwidth <= 25.0,
               "nasa93 full-dataset Gaussian b* outside [12, 25]");
    const StationarityVerdict* nasa_split1 = nullptr;
    for (const auto* v : nasa_result.verdicts_for(KernelType::Gaussian)) {
        if (v->split_index == 1 && !v->is_full_dataset) nasa_split1 = v;
    }
    log.expect(nasa_split1 && nasa_split1->convergence_bandwidth &&
                   *nasa_split1->convergence_bandwidth >= 3.0 &&
                   *nasa_split1->convergence_bandwidth <= 8.0,
               "nasa93 split-1 Gaussian b* outside [3, 8]");

    // Desharnais: all Gaussian splits stationary; Epanechnikov/Triangular
    // agree on at least 80% of splits.
    for (const auto* v : desh_result.verdicts_for(KernelType::Gaussian)) {
        log.expect(v->classification == Stationarity::Stationary,
                   "desharnais Gaussian split " + std::to_string(v->split_index) +
                       " classified " + std::string(to_string(v->classification)));
    }
    log.expect(desh_result.agreement.agreement_fraction >= 0.8,
               "desharnais cross-kernel agreement below 0.8");

    // Kitchenham: exactly one Gaussian split stationary, the rest
    // non-stationary; non-stationary b* in [3, 12]; defined test REs < 1.
    int stationary = 0, non_stationary = 0;
    for (const auto* v : kit_result.verdicts_for(KernelType::Gaussian)) {
        if (v->classification == Stationarity::Stationary) ++stationary;
        if (v->classification == Stationarity::NonStationary) {
            ++non_stationary;
            log.expect(v->convergence_bandwidth && *v->convergence_bandwidth >= 3.0 &&
                           *v->convergence_bandwidth <= 12.0,
                       "kitchenham non-stationary split " + std::to_string(v->split_index) +
                           " b* outside [3, 12]");
        }
    }
    log.expect(stationary == 1,
               "kitchenham Gaussian stationary split count = " + std::to_string(stationary));
    log.expect(non_stationary ==
                   static_cast<int>(kit_result.verdicts_for(KernelType::Gaussian).size()) - 1,
               "kitchenham Gaussian non-stationary split count unexpected");
    for (const auto& curve : kit_result.curves) {
        if (curve.kernel != KernelType::Gaussian) continue;
        if (curve.re_test_global) {
            log.expect(*curve.re_test_global < 1.0, "kitchenham test-global RE >= 1");
        }
        for (const auto& re : curve.re_test) {
            if (re) {
                log.expect(*re < 1.0, "kitchenham Gaussian test RE >= 1 on split " +
                                          std::to_string(curve.split_index));
            }
        }
    }

    // RQ3: cross-kernel verdict agreement over all (dataset, split) cells.
    std::size_t cells = 0, unanimous = 0;
    for (const AnalysisResult* r : {&nasa_result, &desh_result, &kit_result}) {
        for (const auto& row : r->agreement.rows) {
            ++cells;
            if (row.unanimous) ++unanimous;
        }
    }
    log.expect(cells > 0 && static_cast<double>(unanimous) / cells >= 0.9,
               "cross-kernel agreement below 90% of (dataset, split) cells");
    return log.failures == 0 ? Outcome::Pass : Outcome::Fail;
}

// ---------------------------------------------------------------------------
// Criterion 2: WLS coefficients against a brute-force normal-equations
// oracle; uniform weights equal OLS.
// ---------------------------------------------------------------------------
std::vector<double> oracle_normal_equations(const std::vector<std::vector<double>>& x,
                                            const std::vector<double>& y,
                                            const std::vector<double>& w) {
    const std::size_t n = x.size();
    const std::size_t p = x[0].size();
    std::vector<std::vector<long double>> a(p, std::vector<long double>(p + 1, 0.0L));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            for (std::size_t k = 0; k < p; ++k) {
                a[j][k] += static_cast<long double>(w[i]) * x[i][j] * x[i][k];
            }
            a[j][p] += static_cast<long double>(w[i]) * x[i][j] * y[i];
        }
    }
    for (std::size_t col = 0; col < p; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < p; ++r) {
            if (std::fabs(static_cast<double>(a[r][col])) >
                std::fabs(static_cast<double>(a[pivot][col]))) {
                pivot = r;
            }
        }
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < p; ++r) {
            if (r == col) continue;
            const long double f = a[r][col] / a[col][col];
            for (std::size_t k = col; k <= p; ++k) a[r][k] -= f * a[col][k];
        }
    }
    std::vector<double> beta(p);
    for (std::size_t j = 0; j < p; ++j) beta[j] = static_cast<double>(a[j][p] / a[j][j]);
    return beta;
}

DesignMatrix raw_design(const std::vector<std::vector<double>>& x, const std::vector<double>& y) {
    DesignMatrix d;
    d.x.resize(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(x[0].size()));
    d.y.resize(static_cast<Eigen::Index>(y.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x[i].size(); ++j) {
            d.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x[i][j];
        }
        d.y(static_cast<Eigen::Index>(i)) = y[i];
        d.row_record_ids.push_back("r" + std::to_string(i));
    }
    for (std::size_t j = 0; j < x[0].size(); ++j) d.column_names.push_back("c" + std::to_string(j));
    return d;
}

Outcome criterion_2(CheckLog& log) {
    std::mt19937 rng(314159);
    std::uniform_int_distribution<int> n_dist(8, 30);
    std::uniform_int_distribution<int> p_dist(1, 5);
    std::uniform_real_distribution<double> x_dist(-3.0, 3.0);
    std::uniform_real_distribution<double> beta_dist(-2.0, 2.0);
    std::normal_distribution<double> noise(0.0, 0.4);
    // Weights span the full contract range [1e-6, 1].
    std::uniform_real_distribution<double> logw_dist(std::log(1e-6), 0.0);

    for (int rep = 0; rep < 100; ++rep) {
        int p = p_dist(rng);
        int n = std::max(n_dist(rng), p + 3);
        std::vector<std::vector<double>> x(static_cast<std::size_t>(n),
                                           std::vector<double>(static_cast<std::size_t>(p) + 1));
        std::vector<double> beta(static_cast<std::size_t>(p) + 1);
        for (auto& b : beta) b = beta_dist(rng);
        std::vector<double> y(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            auto& row = x[static_cast<std::size_t>(i)];
            row[0] = 1.0;
            double mean = beta[0];
            for (int j = 1; j <= p; ++j) {
                row[static_cast<std::size_t>(j)] = x_dist(rng);
                mean += beta[static_cast<std::size_t>(j)] * row[static_cast<std::size_t>(j)];
            }
            y[static_cast<std::size_t>(i)] = mean + noise(rng);
            w[static_cast<std::size_t>(i)] = std::exp(logw_dist(rng));
        }
        const DesignMatrix d = raw_design(x, y);
        const FitResult fit = fit_wls(d, w);
        const auto oracle = oracle_normal_equations(x, y, w);
        for (int j = 0; j <= p; ++j) {
            const double diff = std::abs(fit.coefficients(j) - oracle[static_cast<std::size_t>(j)]);
            log.expect(diff < 1e-8, "rep " + std::to_string(rep) + " coefficient " +
                                        std::to_string(j) + " differs from oracle by " +
                                        format_double(diff, 3));
        }

        // Uniform weights must equal plain OLS (independent lstsq route).
        const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
        const FitResult uniform_fit = fit_wls(d, ones);
        const Eigen::VectorXd ols = d.x.householderQr().solve(d.y);
        for (int j = 0; j <= p; ++j) {
            const double diff = std::abs(uniform_fit.coefficients(j) - ols(j));
            log.expect(diff < 1e-10, "rep " + std::to_string(rep) +
                                         " uniform-weight fit differs from OLS by " +
                                         format_double(diff, 3));
        }
    }
    return log.failures == 0 ? Outcome::Pass : Outcome::Fail;
}

// ---------------------------------------------------------------------------
// Criterion 3: relative-error metric exactness.
// ---------------------------------------------------------------------------
Outcome criterion_3(CheckLog& log) {
    std::mt19937 rng(271828);
    std::uniform_real_distribution<double> value_dist(0.5, 500.0);
    std::uniform_int_distribution<int> n_dist(2, 40);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = n_dist(rng);
        std::vector<double> measured(static_cast<std::size_t>(n));
        for (auto& m : measured) m = value_dist(rng);
        if (measured.size() >= 2 && measured[0] == measured[1]) measured[1] += 1.0;

        // Constant predictor -> exactly 1.
        const std::vector<double> constant(measured.size(), value_dist(rng));
        const double re_const = relative_error(constant, measured);
        log.expect(std::abs(re_const - 1.0) < 1e-12,
                   "constant-predictor RE deviates from 1 by " +
                       format_double(std::abs(re_const - 1.0), 3));

        // Perfect predictions -> exactly 0.
        log.expect(relative_error(measured, measured) == 0.0, "perfect-prediction RE nonzero");

        // Generic predictions against the brute-force two-pass replica.
        std::vector<double> predicted(measured.size());
        for (std::size_t i = 0; i < measured.size(); ++i) {
            predicted[i] = measured[i] * 0.9 + value_dist(rng) * 0.1;
        }
        std::vector<double> residuals(measured.size());
        double rmean = 0.0, mmean = 0.0;
        for (std::size_t i = 0; i < measured.size(); ++i) {
            residuals[i] = measured[i] - predicted[i];
            rmean += residuals[i];
            mmean += measured[i];
        }
        rmean /= static_cast<double>(n);
        mmean /= static_cast<double>(n);
        double rvar = 0.0, mvar = 0.0;
        for (std::size_t i = 0; i < measured.size(); ++i) {
            rvar += (residuals[i] - rmean) * (residuals[i] - rmean);
            mvar += (measured[i] - mmean) * (measured[i] - mmean);
        }
        const double expected = rvar / mvar; // shared n-1 cancels
        const double got = relative_error(predicted, measured);
        log.expect(std::abs(got - expected) < 1e-12,
                   "RE differs from brute force by " + format_double(std::abs(got - expected), 3));
    }
    return log.failures == 0 ? Outcome::Pass : Outcome::Fail;
}

// ---------------------------------------------------------------------------
// Criterion 4: kernel and decay-horizon exactness.
// ---------------------------------------------------------------------------
Outcome criterion_4(CheckLog& log) {
    // Closed forms restated here, independently of the kernel module.
    for (int i = 0; i < 1000; ++i) {
        const double t = i * 0.004; // grid over [0, 4)
        log.expect(std::abs(kernel_weight(KernelType::Gaussian, t) - std::exp(-0.5 * t * t)) <
                       1e-12,
                   "Gaussian weight mismatch at t=" + format_double(t, 6));
        const double epan = t < 1.0 ? 1.0 - t * t : 0.0;
        log.expect(std::abs(kernel_weight(KernelType::Epanechnikov, t) - epan) < 1e-12,
                   "Epanechnikov weight mismatch at t=" + format_double(t, 6));
        const double tri = t < 1.0 ? 1.0 - t : 0.0;
        log.expect(std::abs(kernel_weight(KernelType::Triangular, t) - tri) < 1e-12,
                   "Triangular weight mismatch at t=" + format_double(t, 6));
        log.expect(kernel_weight(KernelType::Uniform, t) == 1.0, "Uniform weight not 1");
    }

    const double horizon = decay_horizon(KernelType::Gaussian, 5.0, 0.01);
    log.expect(std::abs(horizon - 15.17) <= 0.01,
               "decay_horizon(Gaussian, 5, 0.01) = " + format_double(horizon, 6) +
                   ", expected 15.17 +- 0.01");

    for (KernelType k : kNonUniformKernels) {
        for (double b : {1.0, 3.0, 5.0, 18.0, 44.0, 100.0}) {
            for (double kappa : {0.3, 0.05, 0.01, 0.001}) {
                const double closed = decay_horizon(k, b, kappa);
                double lo = 0.0, hi = 1.0;
                while (kernel_weight(k, hi / b) > kappa) hi *= 2.0;
                for (int iter = 0; iter < 200; ++iter) {
                    const double mid = 0.5 * (lo + hi);
                    (kernel_weight(k, mid / b) <= kappa ? hi : lo) = mid;
                }
                log.expect(std::abs(closed - hi) <= 1e-9 * std::max(1.0, closed),
                           "horizon bisection mismatch for " + std::string(to_string(k)) +
                               " b=" + format_double(b, 4) + " kappa=" + format_double(kappa, 4));
            }
        }
    }
    return log.failures == 0 ? Outcome::Pass : Outcome::Fail;
}

// ---------------------------------------------------------------------------
// Criterion 5: synthetic detector validity over 20 fixed seeds per side.
// ---------------------------------------------------------------------------
Outcome criterion_5(CheckLog& log) {
    const auto start = std::chrono::steady_clock::now();
    RunConfig cfg;
    cfg.kernels = {KernelType::Gaussian};
    cfg.jobs = 0; // hardware parallelism

    int stationary_ok = 0;
    int drifting_ok = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ProcessSpec spec;
        spec.seed = seed;
        spec.n_years = 10;
        spec.projects_per_year = 10;
        spec.noise_sigma = 0.3;
        const auto call =
            analyze(gen_stationary(spec), cfg).dataset_call(KernelType::Gaussian);
        if (call.classification == Stationarity::Stationary) ++stationary_ok;
    }
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ProcessSpec spec;
        spec.seed = seed;
        spec.n_years = 10;
        spec.projects_per_year = 10;
        spec.noise_sigma = 0.2;
        spec.slopes = ramp(0.5, 1.5, 10);
        const auto call = analyze(gen_drifting(spec), cfg).dataset_call(KernelType::Gaussian);
        if (call.classification == Stationarity::NonStationary) ++drifting_ok;
    }
    const double elapsed = seconds_since(start);

    log.expect(stationary_ok >= 18, "stationary generator detected on only " +
                                        std::to_string(stationary_ok) + "/20 seeds");
    log.expect(drifting_ok >= 18, "drifting generator detected on only " +
                                      std::to_string(drifting_ok) + "/20 seeds");
    log.expect(elapsed < 60.0, "runtime " + format_double(elapsed, 3) + "s exceeds 60 s");
    log.details.push_back("stationary " + std::to_string(stationary_ok) + "/20, drifting " +
                          std::to_string(drifting_ok) + "/20, " + format_double(elapsed, 3) + "s");
    return log.failures == 0 ? Outcome::Pass : Outcome::Fail;
}

// ---------------------------------------------------------------------------
// Criterion 6: pipeline invariants.
// ---------------------------------------------------------------------------
Outcome criterion_6(CheckLog& log) {
    // Uniform-kernel sweeps have gap identically zero.
    ProcessSpec spec;
    spec.seed = 6;
    spec.n_years = 9;
    spec.projects_per_year = 9;
    const Dataset ds = gen_stationary(spec);
    RunConfig cfg;
    cfg.jobs = 1;
    const AnalysisResult uniform_run = analyze(ds, cfg);
    for (const auto& curve : uniform_run.curves) {
        if (curve.kernel != KernelType::Uniform) continue;
        for (std::size_t i = 0; i < curve.grid.size(); ++i) {
            if (curve.re_train[i]) {
                log.expect(gap(curve, curve.grid[i]) == 0.0, "uniform gap nonzero");
            }
        }
    }

    // Chronological soundness on synthetic datasets (and the real ones when
    // present).
    std::vector<Dataset> datasets{ds};
    {
        ProcessSpec drift_spec;
        drift_spec.seed = 13;
        drift_spec.n_years = 8;
        drift_spec.projects_per_year = 6;
        drift_spec.slopes = ramp(0.8, 1.6, 8);
        drift_spec.noise_sigma = 0.25;
        datasets.push_back(gen_drifting(drift_spec));
    }
    const auto dir = data_dir();
    if (std::filesystem::exists(dir / "nasa93.csv")) {
        datasets.push_back(load_nasa93(dir / "nasa93.csv").dataset);
    }
    if (std::filesystem::exists(dir / "desharnais.csv")) {
        datasets.push_back(load_desharnais(dir / "desharnais.csv").dataset);
    }
    if (std::filesystem::exists(dir / "kitchenham.csv")) {
        datasets.push_back(load_kitchenham(dir / "kitchenham.csv").dataset);
    }
    for (const auto& d : datasets) {
        const auto splits = make_splits(d);
        for (std::size_t s = 0; s < splits.size(); ++s) {
            std::set<std::size_t> training(splits[s].training.begin(), splits[s].training.end());
            for (std::size_t idx : splits[s].test) {
                log.expect(training.count(idx) == 0, d.name + ": train/test overlap");
                for (std::size_t t : splits[s].training) {
                    log.expect(d.records[t].completion_year < d.records[idx].completion_year,
                               d.name + ": training year not before test year");
                }
            }
            if (s + 1 < splits.size()) {
                std::set<std::size_t> next(splits[s + 1].training.begin(),
                                           splits[s + 1].training.end());
                std::set<std::size_t> expected = training;
                for (std::size_t idx : splits[s].test) expected.insert(idx);
                log.expect(next == expected, d.name + ": splits are not nested");
            }
        }
    }

    // Full-run determinism across worker counts.
    {
        RunConfig one;
        one.jobs = 1;
        RunConfig many;
        many.jobs = 6;
        auto a = to_json(analyze(ds, one));
        auto b = to_json(analyze(ds, many));
        b["config"]["jobs"] = 1;
        log.expect(a.dump() == b.dump(), "results differ between --jobs 1 and --jobs 6");
    }

    // Shapiro-Wilk agrees with the committed reference fixtures on W.
    const CsvTable table =
        read_csv(std::filesystem::path(DRIFTSCOPE_FIXTURE_DIR) / "shapiro_wilk_golden.csv");
    const std::size_t w_col = table.require_column("w");
    const std::size_t values_col = table.require_column("values");
    const std::size_t name_col = table.require_column("name");
    for (std::size_t row = 0; row < table.rows.size(); ++row) {
        std::vector<double> sample;
        for (const auto& v : split(table.cell(row, values_col), ';')) {
            sample.push_back(*parse_double(v));
        }
        const NormalityResult r = shapiro_wilk(sample);
        const double expected = *parse_double(table.cell(row, w_col));
        log.expect(std::abs(r.w_statistic - expected) < 1e-4,
                   "Shapiro-Wilk W mismatch on fixture " + table.cell(row, name_col));
    }
    return log.failures == 0 ? Outcome::Pass : Outcome::Fail;
}

struct Criterion {
    int number;
    const char* title;
    Outcome (*run)(CheckLog&);
};

const Criterion kCriteria[] = {
    {1, "paper-verdict reproduction (nasa93/desharnais/kitchenham)", criterion_1},
    {2, "WLS oracle equivalence", criterion_2},
    {3, "relative-error metric exactness", criterion_3},
    {4, "kernel/decay-horizon exactness", criterion_4},
    {5, "synthetic detector validity", criterion_5},
    {6, "pipeline invariants", criterion_6},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[i + 1]);
        }
    }

    int failures = 0;
    for (const auto& criterion : kCriteria) {
        if (only != 0 && criterion.number != only) continue;
        CheckLog log;
        Outcome outcome;
        try {
            outcome = criterion.run(log);
        } catch (const std::exception& e) {
            outcome = Outcome::Fail;
            log.details.push_back(std::string("exception: ") + e.what());
            ++log.failures;
        }
        const char* label = outcome == Outcome::Pass ? "PASS"
                            : outcome == Outcome::Skip ? "SKIP"
                                                       : "FAIL";
        std::printf("%s — criterion %d: %s\n", label, criterion.number, criterion.title);
        for (const auto& detail : log.details) {
            std::printf("       %s\n", detail.c_str());
        }
        if (outcome == Outcome::Fail) ++failures;
    }
    return failures;
}
