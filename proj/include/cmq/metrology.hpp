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

#pragma once

// Error propagation, scaling fits, estimator and reference bounds.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmq/circuit.hpp"
#include "cmq/error.hpp"
#include "cmq/ising_analytic.hpp"
#include "cmq/parallel.hpp"

namespace cmq::metrology {

enum class Observable { B, M };

inline const char* to_string(Observable o) { return o == Observable::B ? "B" : "M"; }

struct PrecisionPoint {
    long long n_spins = 0;
    double g = 0.0;
    double variance = 0.0;
    double derivative = 0.0;
    double delta_g_sq = 0.0;
    long long shots = 1;
};

/// delta g^2 = Var A / (d<A>/dg)^2.
inline double error_propagation(double variance, double derivative) {
    if (derivative == 0.0 || !std::isfinite(derivative)) {
        throw NonIdentifiable("calibration derivative vanishes; g is not identifiable here");
    }
    if (variance < 0.0) throw std::invalid_argument("variance must be nonnegative");
    return variance / (derivative * derivative);
}

inline PrecisionPoint make_point(long long n, double g, double var, double der, long long shots) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    return {n, g, var, der, error_propagation(var, der) / static_cast<double>(shots), shots};
}

inline PrecisionPoint precision_b(double g, long long n, long long shots = 1) {
    return make_point(n, g, analytic::variance_b(g, n), analytic::expected_b_derivative(g, n), shots);
}

inline PrecisionPoint precision_m(double g, long long n, long long shots = 1) {
    return make_point(n, g, analytic::variance_m(g, n), analytic::expected_m_derivative(g, n), shots);
}

inline PrecisionPoint precision(Observable o, double g, long long n, long long shots = 1) {
    return o == Observable::B ? precision_b(g, n, shots) : precision_m(g, n, shots);
}

struct PowerLawFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Least squares of log y against log x.
inline PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DimensionMismatch("fit needs equally many x and y values");
    if (x.size() < 2) throw std::invalid_argument("fit needs at least two points");
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("log-log fit needs positive data");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
        sx += lx.back();
        sy += ly.back();
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("degenerate fit: all x values coincide");
    PowerLawFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
    return f;
}

struct ScalingFit {
    Observable observable = Observable::B;
    std::vector<long long> n_values;
    std::vector<PrecisionPoint> points;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Slope of log(delta g^2) against log N.
inline ScalingFit fit_scaling(Observable o, double g, const std::vector<long long>& n_list, long long shots = 1) {
    if (n_list.size() < 4) throw std::invalid_argument("scaling fit needs at least four sizes");
    ScalingFit fit;
    fit.observable = o;
    fit.n_values = n_list;
    std::vector<double> x, y;
    for (long long n : n_list) {
        require_protocol_size(n);
        fit.points.push_back(precision(o, g, n, shots));
        x.push_back(static_cast<double>(n));
        y.push_back(fit.points.back().delta_g_sq);
    }
    const auto f = fit_power_law(x, y);
    fit.slope = f.slope;
    fit.intercept = f.intercept;
    fit.r_squared = f.r_squared;
    return fit;
}

/// N = 2^lo, ..., 2^hi.
inline std::vector<long long> power_ladder(int lo, int hi) {
    std::vector<long long> out;
    for (int k = lo; k <= hi; ++k) out.push_back(1LL << k);
    return out;
}

struct Estimate {
    double g_hat = 0.0;
    double std_error = 0.0;
    double sample_mean = 0.0;  // mean of the per-shot B outcomes (0 or 1)
    bool out_of_range = false;
};

struct Window {
    double lo = 0.5;
    double hi = 1.5;
};

/// Inverts a strictly monotone calibration curve at the sample mean by bisection.
///
/// Means outside the curve's range on the window are clamped to the nearer end and
/// flagged. The standard error is the plug-in sqrt(p(1-p)/nu) / |curve'(g_hat)|.
inline Estimate estimate_g(double mean, long long shots, const std::function<double(double)>& curve,
                           const std::function<double(double)>& slope, Window w = {}) {
    if (!(w.lo < w.hi)) throw std::invalid_argument("search window must satisfy lo < hi");
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    const double f_lo = curve(w.lo);
    const double f_hi = curve(w.hi);
    if (f_lo == f_hi) throw NonIdentifiable("calibration curve is flat on the search window");
    const bool decreasing = f_hi < f_lo;
    Estimate e;
    e.sample_mean = mean;
    const double top = decreasing ? f_lo : f_hi;
    const double bottom = decreasing ? f_hi : f_lo;
    if (mean >= top) {
        e.g_hat = decreasing ? w.lo : w.hi;
        e.out_of_range = mean > top;
    } else if (mean <= bottom) {
        e.g_hat = decreasing ? w.hi : w.lo;
        e.out_of_range = mean < bottom;
    } else {
        double a = w.lo, b = w.hi;
        while (b - a > 1e-12) {
            const double mid = 0.5 * (a + b);
            const double fm = curve(mid);
            if ((fm > mean) == decreasing) {
                a = mid;
            } else {
                b = mid;
            }
        }
        e.g_hat = 0.5 * (a + b);
    }
    const double p = std::clamp(mean, 0.0, 1.0);
    const double d = slope(e.g_hat);
    e.std_error = d == 0.0 ? std::numeric_limits<double>::infinity()
                           : std::sqrt(p * (1.0 - p) / static_cast<double>(shots)) / std::abs(d);
    return e;
}

/// Sample-based overload: outcomes are Y_probe = +/-1, each mapped to B = (1 - y) / 2.
inline Estimate estimate_g(const std::vector<int>& samples, const std::function<double(double)>& curve,
                           const std::function<double(double)>& slope, Window w = {}) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    long long ones = 0;
    for (int s : samples) {
        if (s != 1 && s != -1) throw std::invalid_argument("samples must be +1 or -1");
        ones += s == -1 ? 1 : 0;
    }
    const auto n = static_cast<long long>(samples.size());
    return estimate_g(static_cast<double>(ones) / static_cast<double>(n), n, curve, slope, w);
}

/// Calibration by the closed-form <B>(g) at fixed N.
inline Estimate estimate_g_b(const std::vector<int>& samples, long long n_spins, Window w = {}) {
    return estimate_g(
        samples, [n_spins](double g) { return analytic::expected_b(g, n_spins); },
        [n_spins](double g) { return analytic::expected_b_derivative(g, n_spins); }, w);
}

/// 1 / (nu QFI).
inline double cramer_rao(double qfi, long long shots = 1) {
    if (!(qfi > 0.0)) throw std::invalid_argument("QFI must be positive");
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    return 1.0 / (static_cast<double>(shots) * qfi);
}

/// Sequential two-qubit reference bound on delta J^2, in both readings.
struct SequentialBound {
    double printed = 0.0;    // (nu T)^-2
    double alternate = 0.0;  // 1 / (nu T^2)
};

inline SequentialBound sequential_reference(double total_time, long long shots = 1) {
    if (!(total_time > 0.0) || shots < 1) throw std::invalid_argument("T and nu must be positive");
    const double nu = static_cast<double>(shots);
    return {1.0 / ((nu * total_time) * (nu * total_time)), 1.0 / (nu * total_time * total_time)};
}

// ---- Monte-Carlo estimation experiment ----

struct EstimationConfig {
    long long n_spins = 16;
    double g_true = 1.0;
    long long shots = 10000;
    int reps = 200;
    std::uint64_t seed = 1;
    Window window{0.5, 1.5};
};

struct EstimationReport {
    double ym = 0.0;          // <Y_probe> that the shots are drawn from
    double b_true = 0.0;      // (1 - ym) / 2
    double mean_g = 0.0;
    double mse = 0.0;
    double predicted = 0.0;   // Var B / (nu (d<B>/dg)^2) at g_true
    double mean_std_error = 0.0;
    int out_of_range = 0;
    std::vector<Estimate> estimates;
};

/// Repeats shots -> estimate_g with the B calibration curve; rep r uses derive_seed(seed, r).
inline EstimationReport run_estimation(const EstimationConfig& cfg, double ym) {
    require_protocol_size(cfg.n_spins);
    if (cfg.reps < 1) throw std::invalid_argument("reps must be >= 1");
    const long long n = cfg.n_spins;
    const auto curve = [n](double g) { return analytic::expected_b(g, n); };
    const auto slope = [n](double g) { return analytic::expected_b_derivative(g, n); };
    EstimationReport rep;
    rep.ym = ym;
    rep.b_true = circuit::b_from_ym(ym);
    rep.predicted = precision_b(cfg.g_true, n, cfg.shots).delta_g_sq;
    rep.estimates = parallel_map<Estimate>(static_cast<std::size_t>(cfg.reps), [&](std::size_t r) {
        const long long plus = circuit::count_plus(ym, cfg.shots, circuit::derive_seed(cfg.seed, r));
        const double mean_b = static_cast<double>(cfg.shots - plus) / static_cast<double>(cfg.shots);
        return estimate_g(mean_b, cfg.shots, curve, slope, cfg.window);
    });
    double sum = 0, sq = 0, se = 0;
    for (const auto& e : rep.estimates) {
        sum += e.g_hat;
        sq += (e.g_hat - cfg.g_true) * (e.g_hat - cfg.g_true);
        se += e.std_error;
        rep.out_of_range += e.out_of_range ? 1 : 0;
    }
    const double k = static_cast<double>(rep.estimates.size());
    rep.mean_g = sum / k;
    rep.mse = sq / k;
    rep.mean_std_error = se / k;
    return rep;
}

}  // namespace cmq::metrology
