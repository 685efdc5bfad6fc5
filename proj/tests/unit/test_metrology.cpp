// Copyright 2026 The cmq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <numbers>

#include "cmq/dense_oracle.hpp"
#include "cmq/metrology.hpp"

using namespace cmq;
using namespace cmq::metrology;

TEST(ErrorPropagation, Values) {
    const double n = 100;
    EXPECT_NEAR(error_propagation(0.25, -n / (4 * std::numbers::pi)), 0.0039478417604357436, 1e-17);
    EXPECT_EQ(error_propagation(0.0, 3.0), 0.0);
    EXPECT_EQ(error_propagation(0.7, 1.0), 0.7);
    EXPECT_THROW(error_propagation(0.3, 0.0), NonIdentifiable);
}

TEST(Precision, ShotScalingIsExact) {
    for (long long n : {8LL, 64LL}) {
        const auto one = precision_b(1.0, n, 1);
        const auto hundred = precision_b(1.0, n, 100);
        EXPECT_DOUBLE_EQ(hundred.delta_g_sq, one.delta_g_sq / 100);
        EXPECT_EQ(hundred.shots, 100);
        EXPECT_DOUBLE_EQ(precision_m(0.9, n, 7).delta_g_sq, precision_m(0.9, n, 1).delta_g_sq / 7);
    }
}

TEST(Precision, HeisenbergConstant) {
    // delta g^2 N^2 -> 4 pi^2 at g = 1.
    double lo = 1e9, hi = 0;
    for (long long n = 32; n <= 1024; n *= 2) {
        const double c = precision_b(1.0, n).delta_g_sq * double(n) * double(n);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    EXPECT_GT(lo, 30.0);
    EXPECT_LT(hi, 45.0);
    EXPECT_NEAR(precision_b(1.0, 1 << 20).delta_g_sq * std::pow(2.0, 40), 4 * std::numbers::pi * std::numbers::pi,
                1e-3);
}

TEST(FitScaling, ObservableB) {
    const auto fit = fit_scaling(Observable::B, 1.0, power_ladder(3, 10));
    EXPECT_GE(fit.slope, -2.1);
    EXPECT_LE(fit.slope, -1.9);
    EXPECT_GT(fit.r_squared, 0.999);
    EXPECT_EQ(fit.points.size(), 8u);
}

TEST(FitScaling, ObservableMIsWorse) {
    const auto m = fit_scaling(Observable::M, 1.0, power_ladder(8, 13));
    const auto b = fit_scaling(Observable::B, 1.0, power_ladder(8, 13));
    EXPECT_GE(m.slope, -1.35);
    EXPECT_LE(m.slope, -1.0);
    EXPECT_GT(m.slope, b.slope);
}

TEST(FitScaling, SyntheticAndInvariance) {
    std::vector<double> x, y, y2;
    for (int k = 2; k <= 9; ++k) {
        x.push_back(std::ldexp(1.0, k));
        y.push_back(3.7 / (x.back() * x.back()));
        y2.push_back(50.0 * y.back());
    }
    const auto f = fit_power_law(x, y);
    EXPECT_NEAR(f.slope, -2.0, 1e-12);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
    const auto g = fit_power_law(x, y2);
    EXPECT_NEAR(g.slope, f.slope, 1e-12);
    EXPECT_NEAR(g.intercept - f.intercept, std::log(50.0), 1e-12);
}

TEST(FitScaling, Errors) {
    EXPECT_THROW(fit_scaling(Observable::B, 1.0, {8, 16, 32}), std::invalid_argument);
    EXPECT_THROW(fit_power_law({2, 2, 2}, {1, 2, 3}), std::invalid_argument);
    EXPECT_THROW(fit_power_law({1, 2}, {1, -2}), std::invalid_argument);
    EXPECT_THROW(fit_scaling(Observable::B, 1.0, {8, 16, 24, 32}), std::invalid_argument);
}

TEST(Estimate, ExactInversion) {
    for (long long n : {16LL, 64LL}) {
        for (double g = 0.9; g <= 1.1 + 1e-12; g += 0.02) {
            const auto curve = [n](double x) { return analytic::expected_b(x, n); };
            const auto slope = [n](double x) { return analytic::expected_b_derivative(x, n); };
            const auto e = estimate_g(analytic::expected_b(g, n), 1000, curve, slope);
            EXPECT_NEAR(e.g_hat, g, 1e-10);
            EXPECT_FALSE(e.out_of_range);
            EXPECT_GT(e.std_error, 0.0);
        }
    }
}

TEST(Estimate, ClampsOutOfRange) {
    const auto curve = [](double x) { return analytic::expected_b(x, 16); };
    const auto slope = [](double x) { return analytic::expected_b_derivative(x, 16); };
    const auto hi = estimate_g(0.999, 100, curve, slope, {0.9, 1.1});
    EXPECT_TRUE(hi.out_of_range);
    EXPECT_EQ(hi.g_hat, 0.9);
    const auto lo = estimate_g(0.0, 100, curve, slope, {0.9, 1.1});
    EXPECT_TRUE(lo.out_of_range);
    EXPECT_EQ(lo.g_hat, 1.1);
}

TEST(Estimate, FromSamples) {
    // 3 of 8 outcomes are -1, so the B mean is 3/8.
    const std::vector<int> s = {1, -1, 1, 1, -1, 1, -1, 1};
    const auto e = estimate_g_b(s, 16);
    EXPECT_NEAR(e.sample_mean, 0.375, 1e-15);
    EXPECT_NEAR(analytic::expected_b(e.g_hat, 16), 0.375, 1e-10);
    EXPECT_THROW(estimate_g_b({1, 0}, 16), std::invalid_argument);
}

TEST(Estimate, MonteCarloMatchesPrediction) {
    EstimationConfig cfg;
    cfg.n_spins = 64;
    cfg.shots = 10000;
    cfg.reps = 200;
    cfg.seed = 7;
    const double ym = 1.0 - 2.0 * analytic::expected_b(1.0, 64);
    const auto rep = run_estimation(cfg, ym);
    EXPECT_GT(rep.mse, rep.predicted / 2);
    EXPECT_LT(rep.mse, rep.predicted * 2);
    EXPECT_LT(std::abs(rep.mean_g - 1.0), 3 * std::sqrt(rep.predicted / cfg.reps));
    const auto again = run_estimation(cfg, ym);
    EXPECT_EQ(again.mse, rep.mse);
}

TEST(Estimate, RootShotLaw) {
    EstimationConfig cfg;
    cfg.n_spins = 16;
    cfg.reps = 400;
    cfg.seed = 11;
    const double ym = 1.0 - 2.0 * analytic::expected_b(1.0, 16);
    cfg.shots = 2000;
    const double a = std::sqrt(run_estimation(cfg, ym).mse);
    cfg.shots = 8000;
    const double b = std::sqrt(run_estimation(cfg, ym).mse);
    EXPECT_NEAR(a / b, 2.0, 0.3);
}

TEST(Estimate, WorkerCountDoesNotChangeResults) {
    EstimationConfig cfg;
    cfg.n_spins = 16;
    cfg.reps = 16;
    cfg.shots = 500;
    const double ym = 0.2;
    const auto serial = parallel_map<long long>(16, [&](std::size_t r) {
        return circuit::count_plus(ym, cfg.shots, circuit::derive_seed(cfg.seed, r));
    }, 1);
    const auto threaded = parallel_map<long long>(16, [&](std::size_t r) {
        return circuit::count_plus(ym, cfg.shots, circuit::derive_seed(cfg.seed, r));
    }, 4);
    EXPECT_EQ(serial, threaded);
}

TEST(CramerRao, Values) {
    EXPECT_EQ(cramer_rao(4.0), 0.25);
    EXPECT_EQ(cramer_rao(4.0, 100), 0.0025);
    EXPECT_THROW(cramer_rao(0.0), std::invalid_argument);
    const double q = dense::qfi_pure(IsingParams::from_ratio(4, 1.0));
    EXPECT_LE(cramer_rao(q), precision_b(1.0, 4).delta_g_sq);
}

TEST(Sequential, BothReadings) {
    EXPECT_EQ(sequential_reference(1.0, 1).printed, 1.0);
    EXPECT_EQ(sequential_reference(1.0, 1).alternate, 1.0);
    EXPECT_DOUBLE_EQ(sequential_reference(10.0, 1).printed, 0.01);
    EXPECT_DOUBLE_EQ(sequential_reference(10.0, 4).printed, 1.0 / 1600);
    EXPECT_DOUBLE_EQ(sequential_reference(10.0, 4).alternate, 1.0 / 400);
}
