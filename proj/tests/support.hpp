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

// Reference constructions used only by the tests. They deliberately avoid the library's
// own code paths: Pauli operators come from Kronecker products of 2x2 matrices and
// matrix exponentials from a truncated product formula.

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "cmq/types.hpp"

namespace cmq::ref {

using Cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat pauli(char p) {
    Mat m(2, 2);
    switch (p) {
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, Cd(0, -1), Cd(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: m = Mat::Identity(2, 2);
    }
    return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Tensor product with factor 0 leftmost (qubit 0 = most significant bit).
inline Mat string_op(const std::string& s) {
    Mat out = Mat::Identity(1, 1);
    for (char c : s) out = kron(out, pauli(c));
    return out;
}

inline Mat site(int n, int q, char p) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[static_cast<std::size_t>(q)] = p;
    return string_op(s);
}

/// x_2j = Z..Z X_j, x_2j+1 = Z..Z Y_j.
inline Mat majorana_kron(int n, int a) {
    std::string s(static_cast<std::size_t>(n), 'I');
    const int j = a / 2;
    for (int q = 0; q < j; ++q) s[static_cast<std::size_t>(q)] = 'Z';
    s[static_cast<std::size_t>(j)] = a % 2 ? 'Y' : 'X';
    return string_op(s);
}

/// -J sum X_j X_j+1 - B sum Z_j, closing term X_{N-1} (Z...Z) X_0.
inline Mat hamiltonian_kron(int n, double b, double j) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Mat h = Mat::Zero(dim, dim);
    for (int q = 0; q + 1 < n; ++q) h -= j * site(n, q, 'X') * site(n, q + 1, 'X');
    h -= j * site(n, n - 1, 'X') * string_op(std::string(static_cast<std::size_t>(n), 'Z')) * site(n, 0, 'X');
    for (int q = 0; q < n; ++q) h -= b * site(n, q, 'Z');
    return h;
}

/// exp(i H t) for Hermitian H via its eigendecomposition.
inline Mat expi(const Mat& h, double t) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Eigen::VectorXcd ph(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < ph.size(); ++k) ph(k) = std::exp(Cd(0, t * es.eigenvalues()(k)));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

/// Truncated Taylor series of exp(A / 2^s), squared s times; s keeps the scaled norm below 1/2.
inline RealMatrix product_exp(const RealMatrix& a) {
    int s = 0;
    while (a.cwiseAbs().rowwise().sum().maxCoeff() / std::ldexp(1.0, s) > 0.5) ++s;
    const RealMatrix x = a / std::ldexp(1.0, s);
    RealMatrix term = RealMatrix::Identity(a.rows(), a.cols());
    RealMatrix r = term;
    for (int k = 1; k <= 30; ++k) {
        term = term * x / static_cast<double>(k);
        r += term;
    }
    for (int i = 0; i < s; ++i) r = r * r;
    return r;
}

inline RealMatrix random_upper(int dim, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, scale);
    RealMatrix m = RealMatrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int k = i + 1; k < dim; ++k) m(i, k) = nd(rng);
    return m;
}

inline double central_difference(const auto& f, double x, double h) { return (f(x + h) - f(x - h)) / (2.0 * h); }

}  // namespace cmq::ref
