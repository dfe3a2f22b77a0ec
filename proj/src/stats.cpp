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

#include "driftscope/stats.hpp"

#include "driftscope/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace driftscope {

namespace detail {

// AS 241 PPND16: lower-tail quantile of the standard normal distribution.
double normal_quantile(double p) {
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                             1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        const double den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                             4.2313330701600911252e1) * r + 1.0);
        return q * num / den;
    }
    double r = q < 0.0 ? p : 1.0 - p;
    if (!(r > 0.0)) {
        return q < 0.0 ? -std::numeric_limits<double>::infinity()
                       : std::numeric_limits<double>::infinity();
    }
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        const double num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                                 2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                               3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                             4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        const double den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                                 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                               6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                             2.05319162663775882187e0) * r + 1.0);
        value = num / den;
    } else {
        r -= 5.0;
        const double num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                                 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                               2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                             5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        const double den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                                 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                               1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                             5.99832206555887937690e-1) * r + 1.0);
        value = num / den;
    }
    return q < 0.0 ? -value : value;
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

} // namespace detail

namespace {

// Polynomial with coefficients in ascending order, c[0] constant term.
double poly(std::span<const double> c, double x) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

} // namespace

NormalityResult shapiro_wilk(std::span<const double> sample, double alpha) {
    const int n = static_cast<int>(sample.size());
    if (n < 3) {
        throw Error(ErrorCode::SampleTooSmall,
                    "Shapiro-Wilk needs n >= 3, got " + std::to_string(n));
    }
    if (n > 5000) {
        throw Error(ErrorCode::SampleTooLarge,
                    "Shapiro-Wilk approximation is valid up to n = 5000, got " + std::to_string(n));
    }

    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const double range = x.back() - x.front();
    if (!(range > 0.0) || range < 1e-19) {
        throw Error(ErrorCode::ZeroVariance, "sample has (effectively) zero range");
    }

    // Royston 1995 (AS R94) coefficients.
    static constexpr double c1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
    static constexpr double c2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
    static constexpr double c3[4] = {0.5440, -0.39978, 0.025054, -6.714e-4};
    static constexpr double c4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
    static constexpr double c5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static constexpr double c6[3] = {-0.4803, -0.082676, 0.0030302};
    static constexpr double g[2] = {-2.273, 0.459};

    const int n2 = n / 2;
    std::vector<double> a(n2);
    if (n == 3) {
        a[0] = std::sqrt(0.5);
    } else {
        const double an25 = n + 0.25;
        double summ2 = 0.0;
        for (int i = 0; i < n2; ++i) {
            a[i] = detail::normal_quantile((i + 1 - 0.375) / an25);
            summ2 += a[i] * a[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(static_cast<double>(n));
        const double a1 = poly(c1, rsn) - a[0] / ssumm2;
        int i1;
        double fac;
        if (n > 5) {
            i1 = 2;
            const double a2 = -a[1] / ssumm2 + poly(c2, rsn);
            fac = std::sqrt((summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) /
                            (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
            a[0] = a1;
            a[1] = a2;
        } else {
            i1 = 1;
            fac = std::sqrt((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
            a[0] = a1;
        }
        for (int i = i1; i < n2; ++i) a[i] = -a[i] / fac;
    }

    // W as the squared correlation between the order statistics and the
    // sign-mirrored coefficient vector; 1-W is accumulated directly to avoid
    // cancellation near W = 1.
    auto coeff = [&](int i) -> double { // 0-based position in the full vector
        if (i < n2) return -a[i];
        if (i >= n - n2) return a[n - 1 - i];
        return 0.0; // middle element when n is odd
    };
    const double sx = mean_of(x) / range;
    double sa = 0.0;
    for (int i = 0; i < n; ++i) sa += coeff(i);
    sa /= n;

    double ssa = 0.0, ssx = 0.0, sax = 0.0;
    for (int i = 0; i < n; ++i) {
        const double asa = coeff(i) - sa;
        const double xsx = x[i] / range - sx;
        ssa += asa * asa;
        ssx += xsx * xsx;
        sax += asa * xsx;
    }
    const double ssassx = std::sqrt(ssa * ssx);
    const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    const double w = 1.0 - w1;

    double pw;
    if (n == 3) {
        constexpr double pi6 = 1.90985931710274; // 6/pi
        constexpr double stqr = 1.04719755119660; // asin(sqrt(3/4))
        pw = std::clamp(pi6 * (std::asin(std::sqrt(w)) - stqr), 0.0, 1.0);
    } else {
        const double y = std::log(w1);
        const double xx = std::log(static_cast<double>(n));
        double m, s, z;
        if (n <= 11) {
            const double gamma = poly(g, static_cast<double>(n));
            if (y >= gamma) {
                pw = 1e-99;
                return NormalityResult{w, pw, n, alpha, pw >= alpha};
            }
            m = poly(c3, static_cast<double>(n));
            s = std::exp(poly(c4, static_cast<double>(n)));
            z = (-std::log(gamma - y) - m) / s;
        } else {
            m = poly(c5, xx);
            s = std::exp(poly(c6, xx));
            z = (y - m) / s;
        }
        pw = detail::normal_upper_tail(z);
    }
    return NormalityResult{w, pw, n, alpha, pw >= alpha};
}

double sample_variance(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) {
        throw Error(ErrorCode::SampleTooSmall,
                    "variance needs n >= 2, got " + std::to_string(n));
    }
    const double mean = mean_of(xs);
    double acc = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        acc += d * d;
    }
    return acc / static_cast<double>(n - 1);
}

double relative_error(std::span<const double> predicted, std::span<const double> measured) {
    if (predicted.size() != measured.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    "predicted has " + std::to_string(predicted.size()) + " values, measured " +
                        std::to_string(measured.size()));
    }
    if (measured.size() < 2) {
        throw Error(ErrorCode::SampleTooSmall, "relative error needs n >= 2");
    }
    const auto [mn, mx] = std::minmax_element(measured.begin(), measured.end());
    if (*mn == *mx) {
        throw Error(ErrorCode::ConstantMeasured,
                    "measured values are constant; relative error undefined");
    }
    std::vector<double> residuals(measured.size());
    for (std::size_t i = 0; i < measured.size(); ++i) residuals[i] = measured[i] - predicted[i];
    return sample_variance(residuals) / sample_variance(measured);
}

std::vector<double> log_transform(std::span<const double> xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) {
        if (!(x > 0.0)) {
            throw Error(ErrorCode::NonPositiveValue,
                        "log transform requires positive values, got " + std::to_string(x));
        }
        out.push_back(std::log(x));
    }
    return out;
}

std::vector<double> back_transform(std::span<const double> ys) {
    std::vector<double> out;
    out.reserve(ys.size());
    for (double y : ys) out.push_back(std::exp(y));
    return out;
}

} // namespace driftscope
