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

// Digitized adiabatic ramp J: 0 -> J at fixed B, compressed to SO(2N).
//
// Step l (l = 0..L) applies U_1(J, l) = exp(i J (l/L) Delta H_1) and then
// U_0(B) = exp(i B Delta H_0), so
//
//     U = V_L ... V_0,   V_l = U_0(B) U_1(J, l),
//     R = R_L ... R_0,   R_l = R_0(B) R_1(J, l),
//
// with R_0(B) = exp(4 B Delta h_0) and R_1(J, l) = exp(4 J (l/L) Delta h_1). In the
// Majorana basis H_0 = sum Z_j couples (x_2j, x_2j+1) and H_1 couples
// (x_2j+1, x_2j+2 mod 2N), so both factors are planar rotations; h_1 = A h_0 A^T for the
// cyclic shift A.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cmq/matchgate.hpp"
#include "cmq/types.hpp"

namespace cmq::adiabatic {

/// Defaults T = c_t N^2 and L = min(c_l N^5, l_cap).
struct ScheduleConfig {
    double c_t = 10.0;
    double c_l = 1.0;
    long long l_cap = 1'000'000;
};

/// Total time T split into L + 1 slices of width Delta = T / (L + 1).
class TrotterSchedule {
  public:
    TrotterSchedule(double total_time, long long steps) : total_time_(total_time), steps_(steps) {
        if (!(total_time > 0.0) || !std::isfinite(total_time)) {
            throw std::invalid_argument("total time must be positive and finite");
        }
        if (steps < 1) {
            throw std::invalid_argument("number of Trotter steps must be >= 1");
        }
        delta_ = total_time / static_cast<double>(steps + 1);
    }

    double total_time() const { return total_time_; }
    long long steps() const { return steps_; }
    double delta() const { return delta_; }

    /// Ising interaction time of step l: 2 l Delta / L. The values sum to T.
    double tau(long long l) const {
        return 2.0 * static_cast<double>(l) * delta_ / static_cast<double>(steps_);
    }

    /// Ramp fraction l / L.
    double ramp(long long l) const { return static_cast<double>(l) / static_cast<double>(steps_); }

  private:
    double total_time_;
    long long steps_;
    double delta_ = 0.0;
};

inline TrotterSchedule build_schedule(int n_spins, std::optional<double> total_time = std::nullopt,
                                      std::optional<long long> steps = std::nullopt,
                                      const ScheduleConfig& config = {}) {
    require_protocol_size(n_spins);
    const double n = static_cast<double>(n_spins);
    const double t = total_time.value_or(config.c_t * n * n);
    long long l = 0;
    if (steps) {
        l = *steps;
    } else {
        const double wanted = config.c_l * std::pow(n, 5);
        l = wanted >= static_cast<double>(config.l_cap) ? config.l_cap
                                                         : static_cast<long long>(std::llround(wanted));
    }
    return TrotterSchedule(t, l);
}

/// Trotter error proxy L Delta^2 (a comparable scale, not a rigorous bound).
inline double trotter_error_bound(const TrotterSchedule& schedule) {
    return static_cast<double>(schedule.steps()) * schedule.delta() * schedule.delta();
}

/// Cyclic shift A = sum_j |j+1><j| + |0><2N-1| on the 2N-dim Majorana index space.
class ShiftOperator {
  public:
    explicit ShiftOperator(int dim) : dim_(dim) {
        if (dim <= 0 || dim % 2 != 0) {
            throw DimensionMismatch("shift operator dimension must be even and positive");
        }
    }

    int dim() const { return dim_; }
    int image(int j) const { return (j + 1) % dim_; }
    int preimage(int j) const { return (j + dim_ - 1) % dim_; }

    RealMatrix matrix() const {
        RealMatrix a = RealMatrix::Zero(dim_, dim_);
        for (int j = 0; j < dim_; ++j) a(image(j), j) = 1.0;
        return a;
    }

  private:
    int dim_;
};

/// h_0 = (1/2) (1_N (x) iY): N blocks [[0, 1/2], [-1/2, 0]].
inline matchgate::AntisymmetricGenerator h0_generator(int n_spins) {
    matchgate::AntisymmetricGenerator h(2 * n_spins);
    for (int j = 0; j < n_spins; ++j) h.set(2 * j, 2 * j + 1, 0.5);
    return h;
}

/// h_1 = A h_0 A^T.
inline matchgate::AntisymmetricGenerator h1_generator(int n_spins) {
    const auto h0 = h0_generator(n_spins);
    const ShiftOperator a(2 * n_spins);
    matchgate::AntisymmetricGenerator h1(2 * n_spins);
    for (int j = 0; j < h0.dim(); ++j) {
        for (int k = j + 1; k < h0.dim(); ++k) {
            if (h0(j, k) != 0.0) h1.set(a.image(j), a.image(k), h0(j, k));
        }
    }
    return h1;
}

/// Per-step generator pair; tests swap h_1 for h_0 to reach the commuting limit.
struct StepGenerators {
    matchgate::AntisymmetricGenerator field;
    matchgate::AntisymmetricGenerator coupling;

    static StepGenerators ising(int n_spins) { return {h0_generator(n_spins), h1_generator(n_spins)}; }
};

/// R_0(B) = exp(4 B Delta h_0): angle 2 B Delta in every (2j, 2j+1) plane.
inline matchgate::OrthogonalRotation r0_rotation(double field_b, const TrotterSchedule& schedule,
                                                 int n_spins) {
    return matchgate::exp_generator(h0_generator(n_spins).scaled(field_b * schedule.delta()));
}

/// R_1(J, l) = exp(4 J (l/L) Delta h_1): angle J tau(l) in every (2j+1, 2j+2) plane.
inline matchgate::OrthogonalRotation r1_rotation(double coupling_j, long long l,
                                                 const TrotterSchedule& schedule, int n_spins) {
    if (l < 0 || l > schedule.steps()) {
        throw std::out_of_range("Trotter step " + std::to_string(l) + " outside [0, L]");
    }
    return matchgate::exp_generator(
        h1_generator(n_spins).scaled(coupling_j * schedule.ramp(l) * schedule.delta()));
}

namespace detail {

inline std::vector<std::pair<std::array<int, 2>, double>> unit_planes(
    const matchgate::AntisymmetricGenerator& h) {
    auto planes = h.disjoint_planes();
    if (!planes) {
        throw std::invalid_argument("Trotter generators must couple disjoint planes");
    }
    return *planes;
}

}  // namespace detail

/// R(B, J) = R_0 R_1(L) ... R_0 R_1(0), built by in-place plane rotations.
inline matchgate::OrthogonalRotation adiabatic_rotation(const IsingParams& params,
                                                        const TrotterSchedule& schedule,
                                                        const StepGenerators& generators) {
    const int dim = 2 * params.n_spins;
    if (generators.field.dim() != dim || generators.coupling.dim() != dim) {
        throw DimensionMismatch("step generators do not match the chain length");
    }
    std::vector<matchgate::PlaneRotation> field;
    for (const auto& [pq, w] : detail::unit_planes(generators.field)) {
        field.push_back(matchgate::PlaneRotation::from_angle(pq[0], pq[1],
                                                             4.0 * w * params.field_b * schedule.delta()));
    }
    const auto coupling = detail::unit_planes(generators.coupling);
    auto r = matchgate::OrthogonalRotation::identity(dim);
    for (long long l = 0; l <= schedule.steps(); ++l) {
        const double scale = 4.0 * params.coupling_j * schedule.ramp(l) * schedule.delta();
        if (scale != 0.0) {
            for (const auto& [pq, w] : coupling) {
                r.apply_left(matchgate::PlaneRotation::from_angle(pq[0], pq[1], w * scale));
            }
        }
        for (const auto& g : field) r.apply_left(g);
    }
    r.check_invariants();
    return r;
}

inline matchgate::OrthogonalRotation adiabatic_rotation(const IsingParams& params,
                                                        const TrotterSchedule& schedule) {
    return adiabatic_rotation(params, schedule, StepGenerators::ising(params.n_spins));
}

/// Applies R^T to a vector on the 2N-dim Majorana index space in O(L N) time.
///
/// R^T = R_0^T ... R_L^T with R_l^T = R_1(J, l)^T R_0(B)^T, so l runs from L down to 0
/// and within a step the field rotation comes first. Every plane rotation is applied in
/// closed form, which is what makes large L affordable.
inline ComplexVector apply_transpose(const IsingParams& params, const TrotterSchedule& schedule,
                                     ComplexVector v) {
    const int n = params.n_spins;
    const int dim = 2 * n;
    if (v.size() != dim) {
        throw DimensionMismatch("vector does not match the Majorana dimension");
    }
    const double field_angle = 2.0 * params.field_b * schedule.delta();
    const double cf = std::cos(field_angle);
    const double sf = std::sin(field_angle);
    auto rotate_t = [&v](int p, int q, double c, double s) {
        // G^T: rows (p, q) of G^T are (c, -s), (s, c).
        const Complex a = v(p);
        const Complex b = v(q);
        v(p) = c * a - s * b;
        v(q) = s * a + c * b;
    };
    for (long long l = schedule.steps(); l >= 0; --l) {
        for (int j = 0; j < n; ++j) rotate_t(2 * j, 2 * j + 1, cf, sf);
        const double angle = params.coupling_j * schedule.tau(l);
        if (angle != 0.0) {
            const double c = std::cos(angle);
            const double s = std::sin(angle);
            for (int j = 0; j < n; ++j) rotate_t(2 * j + 1, (2 * j + 2) % dim, c, s);
        }
    }
    return v;
}

}  // namespace cmq::adiabatic
