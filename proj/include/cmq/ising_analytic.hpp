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

// Closed-form ground-state curves of the periodic-fermion transverse-field Ising chain.
//
// Everything here depends on B and J only through g = B/J, except mode_energy.
// N must be a power of two >= 4 for the curves; sums run in pairwise order.

#include <cmath>
#include <stdexcept>
#include <string>

#include "cmq/types.hpp"

namespace cmq::analytic {

/// Radicands below this are treated as the closed-gap point (g = 1, j = 0).
inline constexpr double kSingularRadicand = 1e-300;

struct BogoliubovAngle {
    double cos_theta = 1.0;
    double sin_theta = 0.0;
    /// Set at the closed-gap point, where (1, 0) is returned by continuity from g > 1.
    bool singular = false;
};

struct ModeData {
    int mode_index = 0;
    double xi = 0.0;
    double cos_theta = 1.0;
    double sin_theta = 0.0;
    double energy = 0.0;
    bool singular = false;
};

namespace detail {

inline void check_mode(const IsingParams& params, int j) {
    if (params.n_spins < 1 || j < 0 || j >= params.n_spins) {
        throw std::out_of_range("mode index " + std::to_string(j) + " outside [0, " +
                                std::to_string(params.n_spins) + ")");
    }
}

inline double mode_momentum(int j, long long n) { return kTwoPi * static_cast<double>(j) / static_cast<double>(n); }

/// g - cos(xi), without cancellation near g = 1, xi = 0.
inline double g_minus_cos(double g, double xi) {
    const double h = std::sin(0.5 * xi);
    return (g - 1.0) + 2.0 * h * h;
}

/// 1 + g^2 - 2 g cos(xi), as (g - cos xi)^2 + sin^2 xi.
inline double radicand(double g, double xi) {
    const double a = g_minus_cos(g, xi);
    const double s = std::sin(xi);
    return a * a + s * s;
}

/// The closed forms need an even chain; the protocol itself wants a power of two.
inline void require_even(long long n) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("number of spins must be even and >= 4, got " + std::to_string(n));
}

}  // namespace detail

/// (cos theta_j, sin theta_j), with the minus sign on the sine.
inline BogoliubovAngle bogoliubov_angle(const IsingParams& params, int j) {
    detail::check_mode(params, j);
    const double g = params.ratio();
    const double xi = detail::mode_momentum(j, params.n_spins);
    const double rad = detail::radicand(g, xi);
    if (rad < kSingularRadicand) {
        return {1.0, 0.0, true};
    }
    const double root = std::sqrt(rad);
    return {detail::g_minus_cos(g, xi) / root, -std::sin(xi) / root, false};
}

/// epsilon_j = 2 J sqrt(1 + g^2 - 2 g cos xi_j), written without dividing by J.
inline double mode_energy(const IsingParams& params, int j) {
    detail::check_mode(params, j);
    const double b = params.field_b;
    const double jj = params.coupling_j;
    const double xi = detail::mode_momentum(j, params.n_spins);
    const double h = std::sin(0.5 * xi);
    const double a = (b - jj) + 2.0 * jj * h * h;
    const double e = 2.0 * std::hypot(a, jj * std::sin(xi));
    return jj < 0.0 ? -e : e;
}

inline ModeData mode_data(const IsingParams& params, int j) {
    const auto angle = bogoliubov_angle(params, j);
    return {j, detail::mode_momentum(j, params.n_spins), angle.cos_theta, angle.sin_theta,
            mode_energy(params, j), angle.singular};
}

/// Ground-state occupation of the first Fourier mode, <b_1^dag b_1>.
inline double expected_b(double g, long long n) {
    detail::require_even(n);
    const double x = kTwoPi / static_cast<double>(n);
    return 0.5 * (1.0 - detail::g_minus_cos(g, x) / std::sqrt(detail::radicand(g, x)));
}

/// d<B>/dg; strictly negative.
inline double expected_b_derivative(double g, long long n) {
    detail::require_even(n);
    const double x = kTwoPi / static_cast<double>(n);
    const double s = std::sin(x);
    const double rad = detail::radicand(g, x);
    return -(s * s) / (2.0 * rad * std::sqrt(rad));
}

/// Var[B] = <B>(1 - <B>) because B is a projector.
inline double variance_b(double g, long long n) {
    detail::require_even(n);
    const double x = kTwoPi / static_cast<double>(n);
    const double s = std::sin(x);
    return (s * s) / (4.0 * detail::radicand(g, x));
}

/// Average magnetization M = (1/N) sum Z_j in the even-parity ground state.
inline double expected_m(double g, long long n) {
    detail::require_even(n);
    const double sum = pairwise_sum(1, n / 2, [&](long long j) {
        const double xi = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        return detail::g_minus_cos(g, xi) / std::sqrt(detail::radicand(g, xi));
    });
    return (2.0 / static_cast<double>(n)) * (1.0 + sum);
}

inline double expected_m_derivative(double g, long long n) {
    detail::require_even(n);
    const double sum = pairwise_sum(1, n / 2, [&](long long j) {
        const double xi = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        const double s = std::sin(xi);
        const double rad = detail::radicand(g, xi);
        return (s * s) / (rad * std::sqrt(rad));
    });
    return (2.0 / static_cast<double>(n)) * sum;
}

/// Var[M] = (4/N^2) sum_{j=1}^{N/2-1} sin^2(theta_j).
///
/// Modes 0 and N/2 stay empty in the even ground state and carry no variance, so the
/// bracket has no constant term. This is the value the exact diagonalization gives.
inline double variance_m(double g, long long n) {
    detail::require_even(n);
    const double sum = pairwise_sum(1, n / 2, [&](long long j) {
        const double xi = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        const double s = std::sin(xi);
        return (s * s) / detail::radicand(g, xi);
    });
    const double nn = static_cast<double>(n);
    return (4.0 / (nn * nn)) * sum;
}

}  // namespace cmq::analytic
