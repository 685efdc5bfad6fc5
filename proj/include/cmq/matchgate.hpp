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

// Matchgate compression: a product of nearest-neighbour matchgates U = exp(-iH),
// H = i sum_{jk} h_jk x_j x_k, acts on the 2N Majorana operators as
//
//     U^dag x_j U = sum_k R_jk x_k,    R = exp(4h) in SO(2N),
//
// so every quadratic expectation value on |0...0> follows from R S R^T with the
// vacuum covariance S = 1_N (x) iY.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmq/error.hpp"
#include "cmq/types.hpp"

namespace cmq::matchgate {

/// Rotation G in the (p, q) plane with G_pp = G_qq = c, G_pq = s, G_qp = -s.
///
/// This is exp(theta * [[0, 1], [-1, 0]]) with c = cos(theta), s = sin(theta).
struct PlaneRotation {
    int p = 0;
    int q = 1;
    double c = 1.0;
    double s = 0.0;

    static PlaneRotation from_angle(int p, int q, double theta) {
        return {p, q, std::cos(theta), std::sin(theta)};
    }
    PlaneRotation transpose() const { return {p, q, c, -s}; }
};

/// Real antisymmetric 2N x 2N generator h.
///
/// Only the strictly upper triangle is ever read from callers; the lower triangle is
/// written as its negative, so h + h^T = 0 holds exactly.
class AntisymmetricGenerator {
  public:
    explicit AntisymmetricGenerator(int dim) : h_(RealMatrix::Zero(check_dim(dim), dim)) {}

    static AntisymmetricGenerator from_upper(const RealMatrix& m) {
        if (m.rows() != m.cols()) {
            throw DimensionMismatch("generator must be square");
        }
        AntisymmetricGenerator out(static_cast<int>(m.rows()));
        for (int j = 0; j < out.dim(); ++j) {
            for (int k = j + 1; k < out.dim(); ++k) {
                out.set(j, k, m(j, k));
            }
        }
        return out;
    }

    int dim() const { return static_cast<int>(h_.rows()); }
    double operator()(int j, int k) const { return h_(j, k); }
    const RealMatrix& matrix() const { return h_; }

    /// h_jk = value, h_kj = -value.
    void set(int j, int k, double value) {
        if (j == k) {
            throw std::invalid_argument("diagonal of an antisymmetric generator is fixed at zero");
        }
        h_(j, k) = value;
        h_(k, j) = -value;
    }

    AntisymmetricGenerator scaled(double factor) const {
        AntisymmetricGenerator out(*this);
        out.h_ *= factor;
        return out;
    }

    /// Planes (p < q, weight h_pq) when every index couples to at most one other index.
    ///
    /// Such a generator exponentiates to independent planar rotations.
    std::optional<std::vector<std::pair<std::array<int, 2>, double>>> disjoint_planes() const {
        std::vector<std::pair<std::array<int, 2>, double>> planes;
        std::vector<int> partner(dim(), -1);
        for (int j = 0; j < dim(); ++j) {
            for (int k = j + 1; k < dim(); ++k) {
                if (h_(j, k) == 0.0) continue;
                if (partner[j] != -1 || partner[k] != -1) return std::nullopt;
                partner[j] = k;
                partner[k] = j;
                planes.push_back({{j, k}, h_(j, k)});
            }
        }
        return planes;
    }

  private:
    static int check_dim(int dim) {
        if (dim <= 0 || dim % 2 != 0) {
            throw DimensionMismatch("generator dimension must be even and positive, got " +
                                    std::to_string(dim));
        }
        return dim;
    }

    RealMatrix h_;
};

/// Element of SO(2N) describing a matchgate circuit in the Majorana picture.
class OrthogonalRotation {
  public:
    static constexpr double kOrthogonalityTol = 1e-10;
    static constexpr double kDeterminantTol = 1e-8;

    static OrthogonalRotation identity(int dim) {
        return OrthogonalRotation(RealMatrix::Identity(dim, dim));
    }

    /// Wraps a matrix after checking R R^T = 1 and det R = +1.
    static OrthogonalRotation from_matrix(RealMatrix m) {
        OrthogonalRotation out(std::move(m));
        out.check_invariants();
        return out;
    }

    int dim() const { return static_cast<int>(r_.rows()); }
    const RealMatrix& matrix() const { return r_; }
    double operator()(int j, int k) const { return r_(j, k); }

    OrthogonalRotation operator*(const OrthogonalRotation& rhs) const {
        if (rhs.dim() != dim()) {
            throw DimensionMismatch("composing rotations of different dimension");
        }
        return OrthogonalRotation(RealMatrix(r_ * rhs.r_));
    }

    OrthogonalRotation transpose() const { return OrthogonalRotation(RealMatrix(r_.transpose())); }

    /// R <- G R.
    void apply_left(const PlaneRotation& g) {
        for (int k = 0; k < dim(); ++k) {
            const double a = r_(g.p, k);
            const double b = r_(g.q, k);
            r_(g.p, k) = g.c * a + g.s * b;
            r_(g.q, k) = -g.s * a + g.c * b;
        }
    }

    /// max |R R^T - 1|.
    double orthogonality_residual() const {
        const RealMatrix gram = r_ * r_.transpose();
        return (gram - RealMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
    }

    double determinant() const { return r_.determinant(); }

    void check_invariants() const {
        if (r_.rows() != r_.cols() || r_.rows() == 0 || r_.rows() % 2 != 0) {
            throw DimensionMismatch("rotation must be a non-empty even-dimensional square matrix");
        }
        const double ortho = orthogonality_residual();
        if (!(ortho < kOrthogonalityTol)) {
            throw Error("matrix is not orthogonal: max|RR^T - 1| = " + std::to_string(ortho));
        }
        const double det = determinant();
        if (!(std::abs(det - 1.0) < kDeterminantTol)) {
            throw Error("rotation has determinant " + std::to_string(det) + ", expected +1");
        }
    }

  private:
    explicit OrthogonalRotation(RealMatrix m) : r_(std::move(m)) {}

    RealMatrix r_;
};

namespace detail {

/// exp(A) by scaling and squaring with the degree-13 Pade approximant.
inline RealMatrix expm_pade13(const RealMatrix& a) {
    static constexpr std::array<double, 14> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};
    static constexpr double theta13 = 5.371920351148152;

    const auto n = a.rows();
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    }
    const RealMatrix s = a / std::ldexp(1.0, squarings);
    const RealMatrix id = RealMatrix::Identity(n, n);
    const RealMatrix s2 = s * s;
    const RealMatrix s4 = s2 * s2;
    const RealMatrix s6 = s4 * s2;

    const RealMatrix u_inner = s6 * (b[13] * s6 + b[11] * s4 + b[9] * s2) + b[7] * s6 + b[5] * s4 +
                               b[3] * s2 + b[1] * id;
    const RealMatrix u = s * u_inner;
    const RealMatrix v = s6 * (b[12] * s6 + b[10] * s4 + b[8] * s2) + b[6] * s6 + b[4] * s4 +
                         b[2] * s2 + b[0] * id;

    RealMatrix result = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) {
        result = result * result;
    }
    return result;
}

}  // namespace detail

/// Planar rotations making up exp(4h) for a generator with disjoint coupling planes.
inline std::optional<std::vector<PlaneRotation>> plane_rotations(const AntisymmetricGenerator& h) {
    auto planes = h.disjoint_planes();
    if (!planes) return std::nullopt;
    std::vector<PlaneRotation> out;
    out.reserve(planes->size());
    for (const auto& [pq, w] : *planes) {
        out.push_back(PlaneRotation::from_angle(pq[0], pq[1], 4.0 * w));
    }
    return out;
}

/// R = exp(4h).
///
/// Generators whose couplings form disjoint planes (the block structure used by every
/// Trotter factor) are exponentiated in closed form; anything else goes through Pade.
inline OrthogonalRotation exp_generator(const AntisymmetricGenerator& h) {
    if (auto rotations = plane_rotations(h)) {
        RealMatrix r = RealMatrix::Identity(h.dim(), h.dim());
        for (const auto& g : *rotations) {
            r(g.p, g.p) = g.c;
            r(g.p, g.q) = g.s;
            r(g.q, g.p) = -g.s;
            r(g.q, g.q) = g.c;
        }
        return OrthogonalRotation::from_matrix(std::move(r));
    }
    return OrthogonalRotation::from_matrix(detail::expm_pade13(4.0 * h.matrix()));
}

/// S_jk = <0|(-i x_j x_k)|0> for j != k: N copies of [[0, 1], [-1, 0]].
struct VacuumCovariance {
    RealMatrix entries;

    int dim() const { return static_cast<int>(entries.rows()); }
};

inline VacuumCovariance vacuum_covariance(int n_spins) {
    if (n_spins < 1) {
        throw std::invalid_argument("vacuum covariance needs at least one mode");
    }
    RealMatrix s = RealMatrix::Zero(2 * n_spins, 2 * n_spins);
    for (int j = 0; j < n_spins; ++j) {
        s(2 * j, 2 * j + 1) = 1.0;
        s(2 * j + 1, 2 * j) = -1.0;
    }
    return {std::move(s)};
}

/// Row j of R: coefficients of U^dag x_j U in the x_k basis.
inline RealRowVector conjugate_modes(const OrthogonalRotation& r, int j) {
    if (j < 0 || j >= r.dim()) {
        throw std::out_of_range("Majorana index " + std::to_string(j) + " outside [0, " +
                                std::to_string(r.dim()) + ")");
    }
    return r.matrix().row(j);
}

/// R S R^T, using the block structure of S.
inline RealMatrix rotated_covariance(const OrthogonalRotation& r) {
    const RealMatrix& m = r.matrix();
    RealMatrix rs(m.rows(), m.cols());
    for (int k = 0; k < m.cols() / 2; ++k) {
        rs.col(2 * k) = -m.col(2 * k + 1);
        rs.col(2 * k + 1) = m.col(2 * k);
    }
    return rs * m.transpose();
}

/// <Z_0> = [R S R^T]_{0,1} after the circuit, starting from |0...0>.
inline double expectation_z0(const OrthogonalRotation& r) {
    if (r.dim() < 2) {
        throw DimensionMismatch("need at least one mode");
    }
    const RealMatrix& m = r.matrix();
    double acc = 0.0;
    for (int k = 0; k < m.cols() / 2; ++k) {
        acc += m(0, 2 * k) * m(1, 2 * k + 1) - m(0, 2 * k + 1) * m(1, 2 * k);
    }
    return acc;
}

/// Gamma_jk = <0|U^dag x_j x_k U|0> = delta_jk + i [R S R^T]_jk.
inline ComplexMatrix majorana_two_point(const OrthogonalRotation& r) {
    const RealMatrix c = rotated_covariance(r);
    ComplexMatrix gamma(c.rows(), c.cols());
    for (Eigen::Index j = 0; j < c.rows(); ++j) {
        for (Eigen::Index k = 0; k < c.cols(); ++k) {
            gamma(j, k) = j == k ? Complex(1.0, 0.0) : Complex(0.0, c(j, k));
        }
    }
    return gamma;
}

/// sum_{l,m} b_lm x_l x_m with b = b^dag.
class QuadraticObservable {
  public:
    static constexpr double kHermitianTol = 1e-12;

    explicit QuadraticObservable(ComplexMatrix coeffs) : b_(std::move(coeffs)) {
        if (b_.rows() != b_.cols() || b_.rows() % 2 != 0) {
            throw DimensionMismatch("observable coefficients must be an even square matrix");
        }
        const double err = (b_ - b_.adjoint()).cwiseAbs().maxCoeff();
        if (!(err <= kHermitianTol)) {
            throw NonHermitian("coefficient matrix differs from its adjoint by " + std::to_string(err));
        }
    }

    int dim() const { return static_cast<int>(b_.rows()); }
    const ComplexMatrix& coeffs() const { return b_; }

  private:
    ComplexMatrix b_;
};

/// Re sum_jk b_jk Gamma_jk; the imaginary part must vanish.
inline double expectation_quadratic(const ComplexMatrix& gamma, const QuadraticObservable& obs) {
    if (gamma.rows() != obs.dim() || gamma.cols() != obs.dim()) {
        throw DimensionMismatch("observable and two-point matrix sizes differ");
    }
    const Complex value = obs.coeffs().cwiseProduct(gamma).sum();
    if (std::abs(value.imag()) > 1e-10) {
        throw NonHermitian("quadratic expectation has imaginary part " + std::to_string(value.imag()));
    }
    return value.real();
}

inline double expectation_quadratic(const OrthogonalRotation& r, const QuadraticObservable& obs) {
    if (r.dim() != obs.dim()) {
        throw DimensionMismatch("observable and rotation sizes differ");
    }
    return expectation_quadratic(majorana_two_point(r), obs);
}

/// Majorana coefficients of the first-Fourier-mode occupation.
///
/// b_{2j+s, 2k+t} = f(s, t) e^{i 2 pi (k - j) / N} / (4N) with f = {1, i, -i, 1}, the last
/// entry being the x_{2j+1} x_{2k+1} sector. With this phase convention the operator is
/// b_{N-1}^dag b_{N-1}; pair creation keeps n_1 = n_{N-1}, so expectations on every state
/// reachable from |0...0> equal those of b_1^dag b_1.
inline QuadraticObservable observable_b_coefficients(int n_spins) {
    require_protocol_size(n_spins);
    const int dim = 2 * n_spins;
    const double scale = 1.0 / (4.0 * n_spins);
    const std::array<Complex, 4> sector = {Complex(1, 0), Complex(0, 1), Complex(0, -1), Complex(1, 0)};
    ComplexMatrix b(dim, dim);
    for (int j = 0; j < n_spins; ++j) {
        for (int k = 0; k < n_spins; ++k) {
            const double phi = kTwoPi * static_cast<double>(k - j) / n_spins;
            const Complex phase = scale * Complex(std::cos(phi), std::sin(phi));
            for (int s = 0; s < 2; ++s) {
                for (int t = 0; t < 2; ++t) {
                    b(2 * j + s, 2 * k + t) = sector[2 * s + t] * phase;
                }
            }
        }
    }
    return QuadraticObservable(std::move(b));
}

}  // namespace cmq::matchgate
