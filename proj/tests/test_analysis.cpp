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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "driftscope/analysis.hpp"
#include "driftscope/csv.hpp"
#include "driftscope/report.hpp"
#include "driftscope/synth.hpp"

#include <set>

using namespace driftscope;

namespace {

Dataset demo_dataset(std::uint64_t seed = 7, bool drifting = false) {
    ProcessSpec gen;
    gen.n_years = 8;
    gen.projects_per_year = 8;
    gen.seed = seed;
    if (drifting) {
        gen.noise_sigma = 0.2;
        gen.slopes = ramp(0.5, 1.5, 8);
        return gen_drifting(gen);
    }
    return gen_stationary(gen);
}

} // namespace

TEST_CASE("analyze produces one curve and verdict per (kernel, split)") {
    RunConfig cfg;
    cfg.jobs = 2;
    cfg.grid = {1, 2, 5, 10, 25, 50, 100};
    const AnalysisResult result = analyze(demo_dataset(), cfg);

    const std::size_t n_splits = result.splits.size();
    CHECK(result.curves.size() == cfg.kernels.size() * n_splits);
    CHECK(result.verdicts.size() == result.curves.size());
    CHECK(result.splits.back().is_full_dataset);
    CHECK(result.splits.back().test_size == 0);

    for (std::size_t i = 0; i < result.curves.size(); ++i) {
        CHECK(result.verdicts[i].kernel == result.curves[i].kernel);
        CHECK(result.verdicts[i].split_index == result.curves[i].split_index);
    }
    // Uniform verdicts are always stationary with zero gap.
    for (const auto& v : result.verdicts) {
        if (v.kernel == KernelType::Uniform) {
            CHECK(v.classification == Stationarity::Stationary);
            CHECK(*v.max_gap == 0.0);
        }
    }
    CHECK(result.agreement.rows.size() == n_splits);
}

TEST_CASE("analysis output is independent of the worker count") {
    for (bool drifting : {false, true}) {
        RunConfig one;
        one.jobs = 1;
        RunConfig many;
        many.jobs = 7;
        const auto a = to_json(analyze(demo_dataset(11, drifting), one));
        auto b = to_json(analyze(demo_dataset(11, drifting), many));
        b["config"]["jobs"] = 1; // the only permitted difference
        CHECK(a.dump() == b.dump());
    }
}

TEST_CASE("dataset_call aggregates per-split verdicts with a 2/3 supermajority") {
    AnalysisResult result;
    auto add = [&](Stationarity s) {
        StationarityVerdict v;
        v.kernel = KernelType::Gaussian;
        v.classification = s;
        result.verdicts.push_back(v);
    };
    SUBCASE("six of ten non-stationary stays stationary") {
        for (int i = 0; i < 6; ++i) add(Stationarity::NonStationary);
        for (int i = 0; i < 4; ++i) add(Stationarity::Stationary);
        const auto call = result.dataset_call(KernelType::Gaussian);
        CHECK(call.classification == Stationarity::Stationary);
        CHECK(call.non_stationary_splits == 6);
        CHECK(call.stationary_splits == 4);
    }
    SUBCASE("seven of ten non-stationary flips the call") {
        for (int i = 0; i < 7; ++i) add(Stationarity::NonStationary);
        for (int i = 0; i < 3; ++i) add(Stationarity::Stationary);
        CHECK(result.dataset_call(KernelType::Gaussian).classification ==
              Stationarity::NonStationary);
    }
    SUBCASE("undetermined splits are excluded from the fraction") {
        for (int i = 0; i < 3; ++i) add(Stationarity::NonStationary);
        add(Stationarity::Stationary);
        for (int i = 0; i < 6; ++i) add(Stationarity::Undetermined);
        const auto call = result.dataset_call(KernelType::Gaussian);
        CHECK(call.classification == Stationarity::NonStationary); // 3/4 > 2/3
        CHECK(call.undetermined_splits == 6);
    }
    SUBCASE("all undetermined stays undetermined") {
        for (int i = 0; i < 4; ++i) add(Stationarity::Undetermined);
        CHECK(result.dataset_call(KernelType::Gaussian).classification ==
              Stationarity::Undetermined);
    }
    SUBCASE("other kernels' verdicts are ignored") {
        for (int i = 0; i < 9; ++i) add(Stationarity::NonStationary);
        StationarityVerdict other;
        other.kernel = KernelType::Triangular;
        other.classification = Stationarity::Stationary;
        result.verdicts.push_back(other);
        CHECK(result.dataset_call(KernelType::Triangular).classification ==
              Stationarity::Stationary);
        CHECK(result.dataset_call(KernelType::Gaussian).classification ==
              Stationarity::NonStationary);
    }
}

TEST_CASE("drifting data yields a non-stationary dataset call") {
    RunConfig cfg;
    cfg.kernels = {KernelType::Gaussian};
    cfg.jobs = 2;
    const AnalysisResult result = analyze(demo_dataset(7, true), cfg);
    CHECK(result.dataset_call(KernelType::Gaussian).classification ==
          Stationarity::NonStationary);
    const auto full = result.full_dataset_verdict(KernelType::Gaussian);
    REQUIRE(full.has_value());
    CHECK(full->is_full_dataset);
}

TEST_CASE("JSON round trip preserves the result and the rendered report") {
    RunConfig cfg;
    cfg.jobs = 2;
    cfg.grid = {1, 2, 5, 10, 25, 50, 100};
    const AnalysisResult result = analyze(demo_dataset(3), cfg);
    const nlohmann::json j = to_json(result);
    const AnalysisResult restored = analysis_from_json(j);

    CHECK(to_json(restored).dump() == j.dump());
    const RenderedReport from_memory = render_report(result);
    const RenderedReport from_json = render_report(restored);
    CHECK(from_memory.markdown == from_json.markdown);
    REQUIRE(from_memory.assets.size() == from_json.assets.size());
    for (std::size_t i = 0; i < from_memory.assets.size(); ++i) {
        CHECK(from_memory.assets[i].second == from_json.assets[i].second);
    }
}

TEST_CASE("curves.csv carries one row per grid point with the expected columns") {
    RunConfig cfg;
    cfg.kernels = {KernelType::Uniform, KernelType::Gaussian};
    cfg.jobs = 1;
    cfg.grid = {1, 5, 25};
    const AnalysisResult result = analyze(demo_dataset(5), cfg);
    const CsvTable table = parse_csv(curves_csv(result));
    CHECK(table.columns ==
          std::vector<std::string>{"split", "kernel", "bandwidth", "re_train", "re_test",
                                   "re_train_global", "re_test_global"});
    CHECK(table.rows.size() == result.curves.size() * cfg.grid.size());
    // Uniform rows: re_train equals re_train_global wherever defined.
    const std::size_t kernel_col = table.require_column("kernel");
    const std::size_t train_col = table.require_column("re_train");
    const std::size_t global_col = table.require_column("re_train_global");
    for (std::size_t row = 0; row < table.rows.size(); ++row) {
        if (table.cell(row, kernel_col) == "uniform" && !table.cell(row, train_col).empty()) {
            CHECK(table.cell(row, train_col) == table.cell(row, global_col));
        }
    }
}

TEST_CASE("dump_fits emits design matrices and coefficient tables") {
    RunConfig cfg;
    cfg.kernels = {KernelType::Uniform, KernelType::Gaussian};
    cfg.jobs = 1;
    cfg.grid = {5, 50};
    const Dataset ds = demo_dataset(9);
    const auto files = dump_fits(ds, cfg);

    const auto splits = make_splits(ds);
    CHECK(files.size() == splits.size() + 2); // per-split designs + full split + coefficients
    bool found_coeffs = false;
    for (const auto& [name, bytes] : files) {
        if (name == "coefficients.csv") {
            found_coeffs = true;
            const CsvTable table = parse_csv(bytes);
            CHECK(table.require_column("coefficient") > 0);
            // Uniform baseline rows plus 2 bandwidths per split for Gaussian.
            CHECK(table.rows.size() > 0);
        } else {
            const CsvTable table = parse_csv(bytes);
            CHECK(table.columns.front() == "record_id");
            CHECK(table.columns.back() == "response");
            CHECK(table.rows.size() >= 4);
        }
    }
    CHECK(found_coeffs);
}

TEST_CASE("analyze completes across varied dataset shapes") {
    // Shape fuzzing: uneven yearly counts, year gaps, categorical mixes and
    // short spans must all produce structurally sound results.
    RunConfig cfg;
    cfg.jobs = 2;
    cfg.grid = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        ProcessSpec gen;
        gen.seed = seed;
        gen.n_years = 4 + static_cast<int>(seed);
        gen.projects_per_year = 3 + static_cast<int>(seed % 4) * 3;
        gen.noise_sigma = 0.1 * static_cast<double>(seed);
        if (seed % 2 == 0) {
            gen.mix = CategoricalMix{"kind", {"x", "y", "z"}, {0.5, 0.3, 0.2},
                                     {0.0, 0.2, -0.1}, "x"};
        }
        Dataset ds = gen_stationary(gen);
        if (seed % 3 == 0) {
            // Push the last populated year out to create a calendar gap.
            const int last = gen.start_year + gen.n_years - 1;
            for (auto& r : ds.records) {
                if (r.completion_year == last) r.completion_year += 2;
            }
            ds = make_dataset(ds.name, ds.records, ds.spec);
        }
        const AnalysisResult result = analyze(ds, cfg);
        CHECK(result.curves.size() == cfg.kernels.size() * result.splits.size());
        for (const auto& v : result.verdicts) {
            const bool classified = v.classification != Stationarity::Undetermined;
            if (classified && v.convergence_bandwidth && v.kernel != KernelType::Uniform) {
                CHECK(*v.convergence_bandwidth >= cfg.grid.front());
                CHECK(*v.convergence_bandwidth <= cfg.grid.back());
            }
        }
        const auto call = result.dataset_call(KernelType::Gaussian);
        CHECK(call.stationary_splits + call.non_stationary_splits + call.undetermined_splits ==
              static_cast<int>(result.splits.size()));
    }
}

TEST_CASE("agreement uses only the non-uniform kernels present in the run") {
    RunConfig cfg;
    cfg.kernels = {KernelType::Gaussian};
    cfg.jobs = 1;
    cfg.grid = {1, 5, 25};
    const AnalysisResult result = analyze(demo_dataset(2), cfg);
    CHECK(result.agreement.rows.empty()); // one kernel: no agreement to compute

    RunConfig cfg3;
    cfg3.kernels = {KernelType::Gaussian, KernelType::Epanechnikov, KernelType::Triangular};
    cfg3.jobs = 1;
    cfg3.grid = {1, 5, 25};
    const AnalysisResult result3 = analyze(demo_dataset(2), cfg3);
    for (const auto& row : result3.agreement.rows) {
        CHECK(row.verdicts.size() == 3);
    }
}
