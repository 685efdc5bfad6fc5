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

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cmq {

using Complex = std::complex<double>;

// Dense storage is row-major throughout.
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealRowVector = Eigen::Matrix<double, 1, Eigen::Dynamic>;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

/// log2 of a power of two.
constexpr int log2_exact(long long n) {
    int m = 0;
    while ((1LL << m) < n) ++m;
    return m;
}

/// Chain length accepted by the metrology protocol: N = 2^m with N >= 4.
inline void require_protocol_size(long long n) {
    if (!is_power_of_two(n) || n < 4) {
        throw std::invalid_argument("number of spins must be a power of two >= 4, got " +
                                    std::to_string(n));
    }
}

/// Parameters of the transverse-field Ising chain H = -J sum X_j X_{j+1} - B sum Z_j.
struct IsingParams {
    int n_spins = 4;
    double field_b = 1.0;
    double coupling_j = 1.0;

    /// g = B / J.
    double ratio() const {
        if (coupling_j == 0.0) {
            throw std::invalid_argument("ratio g = B/J requested with J = 0");
        }
        return field_b / coupling_j;
    }

    /// Unit coupling, B = g.
    static IsingParams from_ratio(int n_spins, double g) { return {n_spins, g, 1.0}; }

    void validate() const { require_protocol_size(n_spins); }
};

/// Sum of f(begin), ..., f(end - 1) in pairwise (tree) order.
///
/// The recursion splits [begin, end) at its midpoint, so the rounding error grows
/// like O(log n) ulp and the result does not depend on the thread layout.
template <typename F>
double pairwise_sum(long long begin, long long end, F&& f) {
    const long long n = end - begin;
    if (n <= 0) return 0.0;
    if (n == 1) return f(begin);
    const long long mid = begin + n / 2;
    return pairwise_sum(begin, mid, f) + pairwise_sum(mid, end, f);
}

}  // namespace cmq
