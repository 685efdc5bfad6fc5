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

// Brute-force 2^N reference for the Ising chain.
//
// Qubit 0 is the most significant bit of the basis index. Jordan-Wigner:
// x_2j = Z_<j X_j, x_2j+1 = Z_<j Y_j, c_j = (x_2j + i x_2j+1)/2 = |0><1| on qubit j
// (with the string), so |0...0> is the empty fermionic vacuum.

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cmq/adiabatic.hpp"
#include "cmq/error.hpp"
#include "cmq/types.hpp"

namespace cmq::dense {

inline constexpr int kOperatorCap = 12;
inline constexpr int kEvolutionCap = 10;

inline void check_size(int n_spins, int cap) {
    if (n_spins < 1) throw std::invalid_argument("number of spins must be positive");
    if (n_spins > cap) {
        throw SizeCapExceeded("dense oracle limited to N <= " + std::to_string(cap) + ", got " +
                              std::to_string(n_spins));
    }
}

/// phase * X^x_mask Z^z_mask (Z acts first).
struct PauliString {
    int n_spins = 1;
    std::uint64_t x_mask = 0;
    std::uint64_t z_mask = 0;
    Complex phase = 1.0;

    std::uint64_t bit(int q) const { return std::uint64_t{1} << (n_spins - 1 - q); }

    static PauliString identity(int n) { return {n, 0, 0, 1.0}; }
    static PauliString x(int n, int q) {
        PauliString p = identity(n);
        p.x_mask = p.bit(q);
        return p;
    }
    static PauliString z(int n, int q) {
        PauliString p = identity(n);
        p.z_mask = p.bit(q);
        return p;
    }
    /// Y = i X Z.
    static PauliString y(int n, int q) {
        PauliString p = identity(n);
        p.x_mask = p.z_mask = p.bit(q);
        p.phase = Complex(0.0, 1.0);
        return p;
    }
    /// Z-tilde = prod_j Z_j.
    static PauliString parity(int n) {
        PauliString p = identity(n);
        p.z_mask = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        return p;
    }

    PauliString operator*(const PauliString& rhs) const {
        if (rhs.n_spins != n_spins) throw DimensionMismatch("Pauli strings on different registers");
        // Z^a X^b = (-1)^{|a & b|} X^b Z^a.
        const int swaps = std::popcount(z_mask & rhs.x_mask);
        const double sign = (swaps % 2) ? -1.0 : 1.0;
        return {n_spins, x_mask ^ rhs.x_mask, z_mask ^ rhs.z_mask, sign * phase * rhs.phase};
    }

    PauliString scaled(Complex f) const { return {n_spins, x_mask, z_mask, phase * f}; }

    /// P|i> = phase (-1)^{|i & z|} |i ^ x>.
    ComplexVector apply(const ComplexVector& v) const {
        ComplexVector out(v.size());
        for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(v.size()); ++i) {
            const double s = (std::popcount(i & z_mask) % 2) ? -1.0 : 1.0;
            out(static_cast<Eigen::Index>(i ^ x_mask)) = phase * s * v(static_cast<Eigen::Index>(i));
        }
        return out;
    }
};

/// Majorana operator x_a as a Pauli string.
inline PauliString majorana(int n_spins, int a) {
    if (a < 0 || a >= 2 * n_spins) throw std::out_of_range("Majorana index out of range");
    const int j = a / 2;
    PauliString p = (a % 2 == 0) ? PauliString::x(n_spins, j) : PauliString::y(n_spins, j);
    for (int q = 0; q < j; ++q) p = PauliString::z(n_spins, q) * p;
    return p;
}

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

/// Sparse complex operator on 2^N amplitudes.
class DenseOperator {
  public:
    static constexpr double kHermitianTol = 1e-12;

    DenseOperator(int n_spins, SparseMatrix m) : n_(n_spins), m_(std::move(m)) {
        check_size(n_spins, kOperatorCap);
        if (m_.rows() != (Eigen::Index{1} << n_spins) || m_.cols() != m_.rows()) {
            throw DimensionMismatch("operator does not match 2^N");
        }
    }

    static DenseOperator from_pauli_sum(int n_spins, const std::vector<PauliString>& terms) {
        check_size(n_spins, kOperatorCap);
        const Eigen::Index dim = Eigen::Index{1} << n_spins;
        std::vector<Eigen::Triplet<Complex>> trips;
        trips.reserve(terms.size() * static_cast<std::size_t>(dim));
        for (const auto& t : terms) {
            for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dim); ++i) {
                const double s = (std::popcount(i & t.z_mask) % 2) ? -1.0 : 1.0;
                trips.emplace_back(static_cast<Eigen::Index>(i ^ t.x_mask), static_cast<Eigen::Index>(i),
                                   t.phase * s);
            }
        }
        SparseMatrix m(dim, dim);
        m.setFromTriplets(trips.begin(), trips.end());
        m.prune(Complex(0.0, 0.0));
        return DenseOperator(n_spins, std::move(m));
    }

    int n_spins() const { return n_; }
    Eigen::Index dim() const { return m_.rows(); }
    const SparseMatrix& sparse() const { return m_; }
    ComplexMatrix to_dense() const { return ComplexMatrix(m_); }

    ComplexVector apply(const ComplexVector& v) const {
        if (v.size() != dim()) throw DimensionMismatch("vector does not match operator");
        return m_ * v;
    }

    double hermiticity_residual() const {
        const SparseMatrix diff = m_ - SparseMatrix(m_.adjoint());
        double worst = 0.0;
        for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
            for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
        }
        return worst;
    }

    void require_hermitian() const {
        const double r = hermiticity_residual();
        if (!(r < kHermitianTol)) {
            throw NonHermitian("operator is not Hermitian: residual " + std::to_string(r));
        }
    }

    DenseOperator operator*(const DenseOperator& rhs) const {
        if (rhs.n_ != n_) throw DimensionMismatch("operators on different registers");
        return DenseOperator(n_, SparseMatrix(m_ * rhs.m_));
    }

  private:
    int n_;
    SparseMatrix m_;
};

/// Normalized state vector over N spins.
class DenseState {
  public:
    static constexpr double kNormTol = 1e-12;

    DenseState(int n_spins, ComplexVector amplitudes) : n_(n_spins), amp_(std::move(amplitudes)) {
        check_size(n_spins, kOperatorCap);
        if (amp_.size() != (Eigen::Index{1} << n_spins)) throw DimensionMismatch("state does not match 2^N");
        const double err = std::abs(amp_.norm() - 1.0);
        if (!(err < kNormTol)) throw Error("state is not normalized: |norm - 1| = " + std::to_string(err));
    }

    static DenseState all_zero(int n_spins) {
        check_size(n_spins, kOperatorCap);
        ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << n_spins);
        v(0) = 1.0;
        return DenseState(n_spins, std::move(v));
    }

    int n_spins() const { return n_; }
    const ComplexVector& amplitudes() const { return amp_; }

  private:
    int n_;
    ComplexVector amp_;
};

/// Terms of sum_j X_j X_{j+1} with the closing term X_{N-1} Z-tilde X_0 = -i x_{2N-1} x_0.
inline std::vector<PauliString> coupling_terms(int n_spins) {
    std::vector<PauliString> terms;
    for (int j = 0; j + 1 < n_spins; ++j) {
        terms.push_back(PauliString::x(n_spins, j) * PauliString::x(n_spins, j + 1));
    }
    if (n_spins >= 2) {
        terms.push_back(PauliString::x(n_spins, n_spins - 1) * PauliString::parity(n_spins) *
                        PauliString::x(n_spins, 0));
    }
    return terms;
}

inline std::vector<PauliString> field_terms(int n_spins) {
    std::vector<PauliString> terms;
    for (int j = 0; j < n_spins; ++j) terms.push_back(PauliString::z(n_spins, j));
    return terms;
}

/// H = -J sum X_j X_{j+1} - B sum Z_j.
inline DenseOperator build_hamiltonian(const IsingParams& params) {
    check_size(params.n_spins, kOperatorCap);
    if (params.n_spins < 2) throw std::invalid_argument("the chain needs at least two spins");
    std::vector<PauliString> terms;
    for (const auto& t : coupling_terms(params.n_spins)) terms.push_back(t.scaled(-params.coupling_j));
    for (const auto& t : field_terms(params.n_spins)) terms.push_back(t.scaled(-params.field_b));
    auto h = DenseOperator::from_pauli_sum(params.n_spins, terms);
    h.require_hermitian();
    return h;
}

inline DenseOperator parity_operator(int n_spins) {
    return DenseOperator::from_pauli_sum(n_spins, {PauliString::parity(n_spins)});
}

/// M = (1/N) sum Z_j.
inline DenseOperator observable_m_dense(int n_spins) {
    std::vector<PauliString> terms;
    for (const auto& t : field_terms(n_spins)) terms.push_back(t.scaled(1.0 / n_spins));
    return DenseOperator::from_pauli_sum(n_spins, terms);
}

/// c_j = (x_2j + i x_2j+1) / 2.
inline DenseOperator annihilator(int n_spins, int j) {
    return DenseOperator::from_pauli_sum(
        n_spins, {majorana(n_spins, 2 * j).scaled(0.5), majorana(n_spins, 2 * j + 1).scaled(Complex(0.0, 0.5))});
}

/// b_q^dag b_q with b_q = N^{-1/2} sum_j e^{-i 2 pi q j / N} c_j.
inline DenseOperator observable_b_dense(int n_spins, int mode = 1) {
    check_size(n_spins, kOperatorCap);
    const Eigen::Index dim = Eigen::Index{1} << n_spins;
    SparseMatrix b(dim, dim);
    for (int j = 0; j < n_spins; ++j) {
        const double phi = -kTwoPi * static_cast<double>(mode) * j / n_spins;
        const Complex w = Complex(std::cos(phi), std::sin(phi)) / std::sqrt(static_cast<double>(n_spins));
        b += w * annihilator(n_spins, j).sparse();
    }
    SparseMatrix n = SparseMatrix(b.adjoint()) * b;
    n.prune(Complex(0.0, 0.0), 1e-15);
    return DenseOperator(n_spins, std::move(n));
}

inline double expectation(const DenseState& s, const DenseOperator& op) {
    if (s.n_spins() != op.n_spins()) throw DimensionMismatch("state and operator sizes differ");
    return s.amplitudes().dot(op.apply(s.amplitudes())).real();
}

/// <A^2> - <A>^2 for Hermitian A.
inline double variance(const DenseState& s, const DenseOperator& op) {
    if (s.n_spins() != op.n_spins()) throw DimensionMismatch("state and operator sizes differ");
    const ComplexVector av = op.apply(s.amplitudes());
    const double mean = s.amplitudes().dot(av).real();
    return av.squaredNorm() - mean * mean;
}

struct GroundState {
    DenseState state;
    double energy;
    double gap;  // to the next level of the even sector
};

namespace detail {

inline std::vector<std::uint64_t> even_basis(int n_spins) {
    std::vector<std::uint64_t> idx;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n_spins); ++i) {
        if (std::popcount(i) % 2 == 0) idx.push_back(i);
    }
    return idx;
}

}  // namespace detail

/// Lowest eigenvector of H inside the Z-tilde = +1 sector.
///
/// H is real in this basis, so the sector block is diagonalized as a real symmetric matrix.
/// Gauge: the largest-magnitude amplitude (first one on ties) is real positive.
inline GroundState ground_state_even_full(const IsingParams& params) {
    const DenseOperator h = build_hamiltonian(params);
    const auto basis = detail::even_basis(params.n_spins);
    const auto dim = static_cast<Eigen::Index>(basis.size());
    std::vector<Eigen::Index> pos(static_cast<std::size_t>(h.dim()), -1);
    for (Eigen::Index k = 0; k < dim; ++k) pos[basis[static_cast<std::size_t>(k)]] = k;
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index r = 0; r < h.dim(); ++r) {
        for (SparseMatrix::InnerIterator it(h.sparse(), r); it; ++it) {
            const Eigen::Index pr = pos[static_cast<std::size_t>(r)];
            const Eigen::Index pc = pos[static_cast<std::size_t>(it.col())];
            if ((pr < 0) != (pc < 0)) throw Error("Hamiltonian mixes parity sectors");
            if (pr < 0) continue;
            block(pr, pc) = it.value().real();
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
    if (es.info() != Eigen::Success) throw Error("even-sector eigensolver failed");
    const double gap = dim > 1 ? es.eigenvalues()(1) - es.eigenvalues()(0) : INFINITY;
    if (gap < 1e-10) {
        throw DegenerateGroundState("even-sector ground state is degenerate (gap " + std::to_string(gap) + ")");
    }
    Eigen::VectorXd v = es.eigenvectors().col(0);
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < dim; ++k) {
        if (std::abs(v(k)) > std::abs(v(best)) + 1e-12) best = k;
    }
    if (v(best) < 0) v = -v;
    ComplexVector amp = ComplexVector::Zero(h.dim());
    for (Eigen::Index k = 0; k < dim; ++k) amp(static_cast<Eigen::Index>(basis[static_cast<std::size_t>(k)])) = v(k);
    amp /= amp.norm();
    return {DenseState(params.n_spins, std::move(amp)), es.eigenvalues()(0), gap};
}

inline DenseState ground_state_even(const IsingParams& params) { return ground_state_even_full(params).state; }

/// (cos a) v + i (sin a) P v for a Pauli string with P^2 = 1.
inline void apply_pauli_rotation(ComplexVector& v, const PauliString& p, double a) {
    const ComplexVector pv = p.apply(v);
    v = std::cos(a) * v + Complex(0.0, std::sin(a)) * pv;
}

/// prod_l U_0(B) U_1(J, l) |0...0>, U_0 = exp(i B Delta H_0), U_1 = exp(i J (l/L) Delta H_1).
///
/// H_0 = sum Z_j and H_1 = sum X_j X_{j+1} (closing term included); all terms of each
/// family commute, so each factor is a product of exact Pauli rotations.
inline DenseState trotter_evolve(const IsingParams& params, const adiabatic::TrotterSchedule& schedule) {
    check_size(params.n_spins, kEvolutionCap);
    const auto h0 = field_terms(params.n_spins);
    const auto h1 = coupling_terms(params.n_spins);
    ComplexVector v = DenseState::all_zero(params.n_spins).amplitudes();
    const double field_angle = params.field_b * schedule.delta();
    for (long long l = 0; l <= schedule.steps(); ++l) {
        const double a1 = params.coupling_j * schedule.ramp(l) * schedule.delta();
        if (a1 != 0.0) {
            for (const auto& t : h1) apply_pauli_rotation(v, t, a1);
        }
        for (const auto& t : h0) apply_pauli_rotation(v, t, field_angle);
    }
    v /= v.norm();
    return DenseState(params.n_spins, std::move(v));
}

inline double overlap_sq(const DenseState& a, const DenseState& b) {
    if (a.n_spins() != b.n_spins()) throw DimensionMismatch("states of different size");
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

namespace detail {

inline ComplexVector aligned_ground(int n_spins, double g, double coupling_j, const ComplexVector& ref) {
    ComplexVector v = ground_state_even(IsingParams{n_spins, g * coupling_j, coupling_j}).amplitudes();
    const Complex o = ref.dot(v);
    if (std::abs(o) > 0) v *= std::conj(o) / std::abs(o);
    return v;
}

inline double qfi_central(const IsingParams& params, double step) {
    const double g = params.ratio();
    const ComplexVector psi = ground_state_even(params).amplitudes();
    const ComplexVector plus = aligned_ground(params.n_spins, g + step, params.coupling_j, psi);
    const ComplexVector minus = aligned_ground(params.n_spins, g - step, params.coupling_j, psi);
    const ComplexVector d = (plus - minus) / (2.0 * step);
    return 4.0 * (d.squaredNorm() - std::norm(psi.dot(d)));
}

}  // namespace detail

/// Pure-state QFI 4(<d psi|d psi> - |<psi|d psi>|^2) with respect to g = B/J at fixed J.
///
/// Central differences with the overlap gauge fixed real positive; the step is accepted
/// only when halving it changes the result by less than 1%.
inline double qfi_pure(const IsingParams& params, double fd_step = 1e-4) {
    check_size(params.n_spins, kEvolutionCap);
    if (!(fd_step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    const double coarse = detail::qfi_central(params, fd_step);
    const double fine = detail::qfi_central(params, 0.5 * fd_step);
    if (std::abs(coarse - fine) > 0.01 * std::abs(fine)) {
        throw Error("QFI finite difference not converged: " + std::to_string(coarse) + " vs " +
                    std::to_string(fine));
    }
    return std::max(fine, 0.0);
}

}  // namespace cmq::dense
