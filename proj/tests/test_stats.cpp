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

#include "driftscope/csv.hpp"
#include "driftscope/error.hpp"
#include "driftscope/stats.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace driftscope;

namespace {

// Plain two-pass variance, kept deliberately separate from the library path.
double brute_force_variance(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return acc / static_cast<double>(xs.size() - 1);
}

struct GoldenFixture {
    std::string name;
    int n;
    double w;
    double p;
    std::vector<double> values;
};

std::vector<GoldenFixture> load_golden() {
    const CsvTable table =
        read_csv(std::filesystem::path(DRIFTSCOPE_FIXTURE_DIR) / "shapiro_wilk_golden.csv");
    std::vector<GoldenFixture> fixtures;
    const std::size_t name_col = table.require_column("name");
    const std::size_t n_col = table.require_column("n");
    const std::size_t w_col = table.require_column("w");
    const std::size_t p_col = table.require_column("p");
    const std::size_t values_col = table.require_column("values");
    for (std::size_t row = 0; row < table.rows.size(); ++row) {
        GoldenFixture f;
        f.name = table.cell(row, name_col);
        f.n = static_cast<int>(*parse_int(table.cell(row, n_col)));
        f.w = *parse_double(table.cell(row, w_col));
        f.p = *parse_double(table.cell(row, p_col));
        for (const auto& v : split(table.cell(row, values_col), ';')) {
            f.values.push_back(*parse_double(v));
        }
        fixtures.push_back(std::move(f));
    }
    return fixtures;
}

} // namespace

TEST_CASE("shapiro_wilk matches the reference implementation on golden fixtures") {
    const auto fixtures = load_golden();
    REQUIRE(fixtures.size() >= 20);
    for (const auto& f : fixtures) {
        CAPTURE(f.name);
        REQUIRE(static_cast<int>(f.values.size()) == f.n);
        const NormalityResult r = shapiro_wilk(f.values);
        CHECK(std::abs(r.w_statistic - f.w) < 1e-4);
        CHECK(std::abs(r.p_value - f.p) < 1e-3);
    }
}

TEST_CASE("shapiro_wilk flags the right-skewed lognormal fixture as non-normal") {
    for (const auto& f : load_golden()) {
        if (f.name == "lognormal_sigma1_n50") {
            const NormalityResult r = shapiro_wilk(f.values, 0.05);
            CHECK(r.non_normal());
            CHECK(r.p_value < 0.05);
        }
    }
}

TEST_CASE("shapiro_wilk degenerate inputs") {
    const std::vector<double> constant{4.2, 4.2, 4.2, 4.2};
    CHECK_THROWS_AS(shapiro_wilk(constant), Error);
    try {
        shapiro_wilk(constant);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroVariance);
    }
    const std::vector<double> tiny{1.0, 2.0};
    CHECK_THROWS_AS(shapiro_wilk(tiny), Error);
    std::vector<double> huge(5001, 0.0);
    for (std::size_t i = 0; i < huge.size(); ++i) huge[i] = static_cast<double>(i);
    CHECK_THROWS_AS(shapiro_wilk(huge), Error);
}

TEST_CASE("shapiro_wilk W is invariant under positive affine transforms") {
    std::mt19937 rng(99);
    std::normal_distribution<double> dist(5.0, 2.0);
    std::vector<double> xs(40);
    for (auto& x : xs) x = dist(rng);
    const double w0 = shapiro_wilk(xs).w_statistic;
    for (auto [a, c] : {std::pair{2.5, 10.0}, std::pair{0.003, -7.0}, std::pair{1e4, 0.0}}) {
        std::vector<double> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = a * xs[i] + c;
        CHECK(std::abs(shapiro_wilk(ys).w_statistic - w0) < 1e-9);
    }
}

TEST_CASE("shapiro_wilk decision respects alpha") {
    // Uniform data fails normality at typical alpha on a large sample.
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> xs(200);
    for (auto& x : xs) x = dist(rng);
    const NormalityResult strict = shapiro_wilk(xs, 0.05);
    CHECK(strict.non_normal());
    const NormalityResult lax = shapiro_wilk(xs, strict.p_value / 2.0);
    CHECK_FALSE(lax.non_normal());
}

TEST_CASE("sample_variance basics") {
    CHECK(sample_variance(std::vector<double>{5, 5, 5}) == 0.0);
    CHECK(sample_variance(std::vector<double>{1, 3}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(sample_variance(std::vector<double>{1.0}), Error);
}

TEST_CASE("sample_variance matches brute-force two-pass on random fixtures") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> dist(-50.0, 150.0);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> xs(20);
        for (auto& x : xs) x = dist(rng);
        const double expected = brute_force_variance(xs);
        CHECK(sample_variance(xs) ==
              doctest::Approx(expected).epsilon(1e-12));
        CHECK(sample_variance(xs) >= 0.0);
    }
}

TEST_CASE("variance is zero iff all elements equal") {
    CHECK(sample_variance(std::vector<double>{3.25, 3.25, 3.25, 3.25}) == 0.0);
    CHECK(sample_variance(std::vector<double>{3.25, 3.25, 3.26}) > 0.0);
}

TEST_CASE("relative_error exact cases") {
    const std::vector<double> measured{3.0, 7.0, 5.0, 9.0, 4.0};

    SUBCASE("perfect prediction gives 0") {
        CHECK(relative_error(measured, measured) == 0.0);
    }
    SUBCASE("constant prediction gives exactly 1") {
        for (double c : {0.0, 5.6, -12.0}) {
            const std::vector<double> constant(measured.size(), c);
            CHECK(std::abs(relative_error(constant, measured) - 1.0) < 1e-12);
        }
    }
    SUBCASE("test-set mean predictor gives exactly 1") {
        double mean = 0.0;
        for (double m : measured) mean += m;
        mean /= static_cast<double>(measured.size());
        const std::vector<double> predictor(measured.size(), mean);
        CHECK(std::abs(relative_error(predictor, measured) - 1.0) < 1e-12);
    }
}

TEST_CASE("relative_error matches an independent two-pass oracle") {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> dist(1.0, 100.0);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> measured(15), predicted(15);
        for (std::size_t i = 0; i < measured.size(); ++i) {
            measured[i] = dist(rng);
            predicted[i] = measured[i] + 0.3 * static_cast<double>(i) - 2.0; // linear trend error
        }
        std::vector<double> residuals(measured.size());
        for (std::size_t i = 0; i < measured.size(); ++i) {
            residuals[i] = measured[i] - predicted[i];
        }
        const double expected = brute_force_variance(residuals) / brute_force_variance(measured);
        CHECK(relative_error(predicted, measured) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("relative_error is invariant under a shared constant shift") {
    const std::vector<double> measured{3.0, 7.0, 5.0, 9.0, 4.0};
    const std::vector<double> predicted{2.5, 8.0, 5.5, 8.0, 5.0};
    const double base = relative_error(predicted, measured);
    for (double shift : {13.5, -4.0, 1e6}) {
        std::vector<double> m2(measured), p2(predicted);
        for (auto& v : m2) v += shift;
        for (auto& v : p2) v += shift;
        CHECK(relative_error(p2, m2) == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("relative_error error paths") {
    const std::vector<double> measured{3.0, 7.0};
    CHECK_THROWS_AS(relative_error(std::vector<double>{1.0}, measured), Error);
    const std::vector<double> constant{5.0, 5.0};
    try {
        relative_error(std::vector<double>{1.0, 2.0}, constant);
        FAIL("expected ConstantMeasured");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConstantMeasured);
    }
}

TEST_CASE("log/back transform") {
    CHECK(log_transform(std::vector<double>{1.0})[0] == 0.0);
    CHECK(log_transform(std::vector<double>{152.0})[0] ==
          doctest::Approx(5.02388052084627639).epsilon(1e-12));
    CHECK_THROWS_AS(log_transform(std::vector<double>{2.0, 0.0}), Error);
    CHECK_THROWS_AS(log_transform(std::vector<double>{-3.0}), Error);

    std::mt19937 rng(55);
    std::uniform_real_distribution<double> dist(1e-6, 1e6);
    std::vector<double> xs(200);
    for (auto& x : xs) x = dist(rng);
    const auto roundtrip = back_transform(log_transform(xs));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(std::abs(roundtrip[i] - xs[i]) / xs[i] < 1e-12);
    }
}
