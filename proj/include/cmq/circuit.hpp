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

// Gate-level compressed protocol on m + 2 qubits.
//
// Register layout: data qubits 0..m-1, probe qubit m, auxiliary qubit m+1. Qubit q is
// bit (n_qubits - 1 - q) of the basis index, so qubit 0 is the most significant bit and
// the data+probe register holds the Majorana index a = 2k + t directly (k = data label,
// t = probe bit).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmq/adiabatic.hpp"
#include "cmq/error.hpp"
#include "cmq/types.hpp"

namespace cmq::circuit {

enum class GateKind { X, HT, RY, RXX, CX };

struct Gate {
    GateKind kind = GateKind::X;
    std::vector<int> qubits;  // CX: controls followed by the target
    double angle = 0.0;

    static Gate x(int q) { return {GateKind::X, {q}, 0.0}; }
    static Gate ht(int q) { return {GateKind::HT, {q}, 0.0}; }
    /// exp(-i angle Y).
    static Gate ry(double angle, int q) { return {GateKind::RY, {q}, angle}; }
    /// exp(-i angle X (x) X).
    static Gate rxx(double angle, int q1, int q2) { return {GateKind::RXX, {q1, q2}, angle}; }
    static Gate cx(std::vector<int> controls, int target) {
        controls.push_back(target);
        return {GateKind::CX, std::move(controls), 0.0};
    }

    int target() const { return qubits.back(); }
    std::vector<int> controls() const {
        if (kind != GateKind::CX) return {};
        return {qubits.begin(), qubits.end() - 1};
    }

    bool operator==(const Gate&) const = default;

    /// Throws unless all indices are in [0, n_qubits) and pairwise distinct.
    void validate(int n_qubits) const {
        const std::size_t want = kind == GateKind::RXX ? 2 : (kind == GateKind::CX ? 0 : 1);
        if ((want != 0 && qubits.size() != want) || qubits.empty()) {
            throw std::invalid_argument("gate has the wrong number of qubits");
        }
        for (std::size_t i = 0; i < qubits.size(); ++i) {
            if (qubits[i] < 0 || qubits[i] >= n_qubits) {
                throw std::out_of_range("gate qubit " + std::to_string(qubits[i]) + " outside register");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (qubits[i] == qubits[j]) throw std::invalid_argument("gate qubits must be distinct");
            }
        }
        if (!std::isfinite(angle)) throw std::invalid_argument("gate angle must be finite");
    }
};

struct ProgramMetadata {
    int n_spins = 4;
    double field_b = 0.0;
    double coupling_j = 0.0;
    double total_time = 0.0;
    long long steps = 0;

    bool operator==(const ProgramMetadata&) const = default;
};

struct GateProgram {
    int n_qubits = 0;
    std::optional<ProgramMetadata> metadata;
    std::vector<Gate> gates;

    void append(const GateProgram& other) {
        gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    }
    void validate() const {
        for (const auto& g : gates) g.validate(n_qubits);
    }
};

/// Complex amplitudes over n qubits, qubit 0 most significant.
class StateVector {
  public:
    explicit StateVector(int n_qubits) : n_(n_qubits), amp_(ComplexVector::Zero(dim_of(n_qubits))) {
        amp_(0) = 1.0;
    }
    StateVector(int n_qubits, ComplexVector amplitudes) : n_(n_qubits), amp_(std::move(amplitudes)) {
        if (amp_.size() != dim_of(n_qubits)) {
            throw DimensionMismatch("amplitude vector does not match qubit count");
        }
    }

    int n_qubits() const { return n_; }
    Eigen::Index dim() const { return amp_.size(); }
    const ComplexVector& amplitudes() const { return amp_; }
    Complex operator[](Eigen::Index i) const { return amp_(i); }
    double norm() const { return amp_.norm(); }

    std::uint64_t mask(int q) const { return std::uint64_t{1} << (n_ - 1 - q); }

    void apply(const Gate& g) {
        g.validate(n_);
        switch (g.kind) {
            case GateKind::X:
                apply_single(g.qubits[0], 0.0, 1.0, 1.0, 0.0);
                break;
            case GateKind::HT: {
                const double r = 1.0 / std::sqrt(2.0);
                apply_single(g.qubits[0], 0.0, Complex(r, -r), Complex(r, r), 0.0);
                break;
            }
            case GateKind::RY: {
                const double c = std::cos(g.angle);
                const double s = std::sin(g.angle);
                apply_single(g.qubits[0], c, -s, s, c);
                break;
            }
            case GateKind::RXX:
                apply_rxx(g.qubits[0], g.qubits[1], g.angle);
                break;
            case GateKind::CX:
                apply_cx(g);
                break;
        }
    }

    void apply(const GateProgram& program) {
        if (program.n_qubits != n_) throw DimensionMismatch("program and register sizes differ");
        for (const auto& g : program.gates) apply(g);
    }

  private:
    static Eigen::Index dim_of(int n) {
        if (n < 1 || n > 30) throw std::invalid_argument("qubit count must be in [1, 30]");
        return Eigen::Index{1} << n;
    }

    void apply_single(int q, Complex u00, Complex u01, Complex u10, Complex u11) {
        const std::uint64_t bit = mask(q);
        for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dim()); ++i) {
            if (i & bit) continue;
            const Complex a0 = amp_(i);
            const Complex a1 = amp_(i | bit);
            amp_(i) = u00 * a0 + u01 * a1;
            amp_(i | bit) = u10 * a0 + u11 * a1;
        }
    }

    void apply_rxx(int q1, int q2, double angle) {
        const std::uint64_t flip = mask(q1) | mask(q2);
        const Complex c(std::cos(angle), 0.0);
        const Complex ms(0.0, -std::sin(angle));
        for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dim()); ++i) {
            const std::uint64_t j = i ^ flip;
            if (j < i) continue;
            const Complex a = amp_(i);
            const Complex b = amp_(j);
            amp_(i) = c * a + ms * b;
            amp_(j) = ms * a + c * b;
        }
    }

    void apply_cx(const Gate& g) {
        std::uint64_t ctrl = 0;
        for (int q : g.controls()) ctrl |= mask(q);
        const std::uint64_t bit = mask(g.target());
        for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dim()); ++i) {
            if ((i & bit) || (i & ctrl) != ctrl) continue;
            std::swap(amp_(i), amp_(i | bit));
        }
    }

    int n_;
    ComplexVector amp_;
};

/// m data qubits, one probe and one auxiliary qubit.
class CompressedRegister {
  public:
    explicit CompressedRegister(int m) : m_(check_m(m)), state_(m + 2) {}
    CompressedRegister(int m, ComplexVector amplitudes)
        : m_(check_m(m)), state_(m + 2, std::move(amplitudes)) {}

    int m() const { return m_; }
    int n_spins() const { return 1 << m_; }
    int probe() const { return m_; }
    int aux() const { return m_ + 1; }
    int n_qubits() const { return m_ + 2; }
    StateVector& state() { return state_; }
    const StateVector& state() const { return state_; }

    void apply(const Gate& g) { state_.apply(g); }
    void apply(const GateProgram& p) { state_.apply(p); }

  private:
    static int check_m(int m) {
        if (m < 1 || m > 20) throw std::invalid_argument("register size m must be in [1, 20]");
        return m;
    }

    int m_;
    StateVector state_;
};

/// Majorana-space vector Phi_{2k+t} = e^{i 2 pi k / N} (1, i)_t / sqrt(2N).
inline ComplexVector phi_vector(int m) {
    const int n = 1 << m;
    ComplexVector v(2 * n);
    const double norm = 1.0 / std::sqrt(2.0 * n);
    for (int k = 0; k < n; ++k) {
        const double phase = kTwoPi * static_cast<double>(k) / n;
        const Complex e(std::cos(phase), std::sin(phase));
        v(2 * k) = norm * e;
        v(2 * k + 1) = norm * Complex(0.0, 1.0) * e;
    }
    return v;
}

/// Phi (x) |+>_aux. Data qubit q carries the relative phase e^{i 2 pi 2^{-(q+1)}}.
inline CompressedRegister register_from_majorana(int m, const ComplexVector& v) {
    const Eigen::Index dim = Eigen::Index{2} << m;
    if (v.size() != dim) throw DimensionMismatch("Majorana vector does not match register");
    ComplexVector amp(2 * dim);
    const double r = 1.0 / std::sqrt(2.0);
    for (Eigen::Index a = 0; a < dim; ++a) {
        amp(2 * a) = r * v(a);
        amp(2 * a + 1) = r * v(a);
    }
    return CompressedRegister(m, std::move(amp));
}

inline CompressedRegister initial_state(int m) {
    if (m < 1) throw std::invalid_argument("register size m must be >= 1");
    return register_from_majorana(m, phi_vector(m));
}

/// Cyclic increment |j> -> |j+1 mod 2N> on data+probe (qubit m is the least significant).
///
/// Gates, in application order: CX({1..m} -> 0), CX({2..m} -> 1), ..., CX({m} -> m-1), X(m).
inline GateProgram decompose_shift(int m) {
    if (m < 1) throw std::invalid_argument("register size m must be >= 1");
    GateProgram p;
    p.n_qubits = m + 2;
    for (int t = 0; t < m; ++t) {
        std::vector<int> controls;
        for (int c = t + 1; c <= m; ++c) controls.push_back(c);
        p.gates.push_back(Gate::cx(std::move(controls), t));
    }
    p.gates.push_back(Gate::x(m));
    return p;
}

/// A^dag: the shift ladder in reverse (every gate is an involution).
inline GateProgram decompose_shift_inverse(int m) {
    GateProgram p = decompose_shift(m);
    std::reverse(p.gates.begin(), p.gates.end());
    return p;
}

/// HT(probe) RXX(J tau(l))(probe, aux) HT(probe): exp(-i J tau(l) Y) on the probe when the
/// auxiliary qubit is |+>.
inline GateProgram s1_aux_gates(double coupling_j, long long l, const adiabatic::TrotterSchedule& schedule,
                                int m) {
    if (l < 0 || l > schedule.steps()) throw std::out_of_range("Trotter step outside [0, L]");
    GateProgram p;
    p.n_qubits = m + 2;
    p.gates = {Gate::ht(m), Gate::rxx(coupling_j * schedule.tau(l), m, m + 1), Gate::ht(m)};
    return p;
}

/// R_l^T = R_1(J, l)^T R_0(B)^T as gates: RY(2 B Delta) on the probe, then A^dag, S1, A.
inline GateProgram trotter_step_gates(double field_b, double coupling_j, long long l,
                                      const adiabatic::TrotterSchedule& schedule, int m) {
    GateProgram p;
    p.n_qubits = m + 2;
    p.gates.push_back(Gate::ry(2.0 * field_b * schedule.delta(), m));
    p.append(decompose_shift_inverse(m));
    p.append(s1_aux_gates(coupling_j, l, schedule, m));
    p.append(decompose_shift(m));
    return p;
}

/// Full R^T program: steps l = L, L-1, ..., 0.
inline GateProgram full_program(const IsingParams& params, const adiabatic::TrotterSchedule& schedule) {
    params.validate();
    const int m = log2_exact(params.n_spins);
    GateProgram p;
    p.n_qubits = m + 2;
    p.metadata = ProgramMetadata{params.n_spins, params.field_b, params.coupling_j,
                                 schedule.total_time(), schedule.steps()};
    for (long long l = schedule.steps(); l >= 0; --l) {
        p.append(trotter_step_gates(params.field_b, params.coupling_j, l, schedule, m));
    }
    return p;
}

/// Dense unitary of a program (column i is the image of basis state i).
inline ComplexMatrix program_matrix(const GateProgram& program) {
    program.validate();
    const Eigen::Index dim = Eigen::Index{1} << program.n_qubits;
    ComplexMatrix u(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        ComplexVector e = ComplexVector::Zero(dim);
        e(i) = 1.0;
        StateVector s(program.n_qubits, std::move(e));
        s.apply(program);
        u.col(i) = s.amplitudes();
    }
    return u;
}

/// Gate-by-gate simulation of R^T acting on Phi (x) |+>.
inline CompressedRegister run_circuit(const IsingParams& params, const adiabatic::TrotterSchedule& schedule) {
    params.validate();
    const int m = log2_exact(params.n_spins);
    CompressedRegister reg = initial_state(m);
    const GateProgram shift = decompose_shift(m);
    const GateProgram shift_inv = decompose_shift_inverse(m);
    const Gate field = Gate::ry(2.0 * params.field_b * schedule.delta(), m);
    for (long long l = schedule.steps(); l >= 0; --l) {
        reg.apply(field);
        reg.apply(shift_inv);
        reg.apply(s1_aux_gates(params.coupling_j, l, schedule, m));
        reg.apply(shift);
    }
    return reg;
}

/// Same final state as run_circuit, computed by rotating Phi in closed form (O(L N)).
inline CompressedRegister run_compressed(const IsingParams& params, const adiabatic::TrotterSchedule& schedule) {
    params.validate();
    const int m = log2_exact(params.n_spins);
    return register_from_majorana(m, adiabatic::apply_transpose(params, schedule, phi_vector(m)));
}

/// <Y> on the probe qubit.
inline double measure_ym(const CompressedRegister& reg) {
    const StateVector& s = reg.state();
    const std::uint64_t bit = s.mask(reg.probe());
    double acc = 0.0;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(s.dim()); ++i) {
        if (i & bit) continue;
        acc += 2.0 * (std::conj(s[i]) * s[i | bit]).imag();
    }
    return acc;
}

/// <+|rho_aux|+>.
inline double aux_fidelity(const CompressedRegister& reg) {
    const StateVector& s = reg.state();
    const std::uint64_t bit = s.mask(reg.aux());
    double acc = 0.0;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(s.dim()); ++i) {
        if (i & bit) continue;
        acc += 0.5 * std::norm(s[i] + s[i | bit]);
    }
    return acc;
}

/// <B> = (1 - <Y_probe>) / 2 on R^T Phi.
inline double b_from_ym(double ym) { return 0.5 * (1.0 - ym); }

inline double expectation_b_gate(const IsingParams& params, const adiabatic::TrotterSchedule& schedule) {
    return b_from_ym(measure_ym(run_circuit(params, schedule)));
}

/// SplitMix64 finalizer, used to give each repetition or worker its own stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform in [0, 1) from the top 53 bits, identical on every platform.
inline double uniform53(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// nu i.i.d. outcomes of Y on the probe, +1 with probability (1 + <Y>) / 2.
inline std::vector<int> sample_ym(double ym, long long shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    const double p_plus = std::clamp(0.5 * (1.0 + ym), 0.0, 1.0);
    std::mt19937_64 rng(seed);
    std::vector<int> out(static_cast<std::size_t>(shots));
    for (auto& s : out) s = uniform53(rng) < p_plus ? 1 : -1;
    return out;
}

inline std::vector<int> sample_ym(const CompressedRegister& reg, long long shots, std::uint64_t seed) {
    return sample_ym(measure_ym(reg), shots, seed);
}

/// Number of +1 outcomes only; same stream as sample_ym.
inline long long count_plus(double ym, long long shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    const double p_plus = std::clamp(0.5 * (1.0 + ym), 0.0, 1.0);
    std::mt19937_64 rng(seed);
    long long n = 0;
    for (long long i = 0; i < shots; ++i) n += uniform53(rng) < p_plus ? 1 : 0;
    return n;
}

// ---- gate counting ----

struct GateCounts {
    long long total = 0;
    long long controlled = 0;  // CX gates with any number of controls
    long long single = 0;
    long long two_qubit = 0;
    long long lowered = 0;  // after expanding k-controlled X into Toffoli chains
};

/// Toffoli-chain cost of a k-controlled X with k - 2 borrowed ancillas: 1 for k <= 2,
/// 2k - 3 Toffolis otherwise.
inline long long lowered_cost(std::size_t controls) {
    return controls <= 2 ? 1 : 2 * static_cast<long long>(controls) - 3;
}

inline GateCounts count_gates(const GateProgram& program) {
    GateCounts c;
    for (const auto& g : program.gates) {
        ++c.total;
        switch (g.kind) {
            case GateKind::CX:
                ++c.controlled;
                c.lowered += lowered_cost(g.qubits.size() - 1);
                break;
            case GateKind::RXX:
                ++c.two_qubit;
                ++c.lowered;
                break;
            default:
                ++c.single;
                ++c.lowered;
                break;
        }
    }
    return c;
}

/// Gates of one shift ladder: m controlled X gates and the closing X.
inline long long shift_gate_count(int m) { return static_cast<long long>(decompose_shift(m).gates.size()); }

// ---- text format ----

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline int parse_int(const std::string& s, int line) {
    const std::string t = trim(s);
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (t.empty() || used != t.size()) {
        throw ParseError("line " + std::to_string(line) + ": bad qubit index '" + t + "'");
    }
    return v;
}

inline double parse_double(const std::string& s, int line) {
    const std::string t = trim(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (t.empty() || used != t.size()) {
        throw ParseError("line " + std::to_string(line) + ": bad number '" + t + "'");
    }
    return v;
}

inline std::vector<int> parse_list(const std::string& s, int line) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_int(item, line));
    if (out.empty()) throw ParseError("line " + std::to_string(line) + ": empty qubit list");
    return out;
}

}  // namespace detail

inline std::string dump_gate(const Gate& g) {
    switch (g.kind) {
        case GateKind::X:
            return "X " + std::to_string(g.qubits.at(0));
        case GateKind::HT:
            return "HT " + std::to_string(g.qubits.at(0));
        case GateKind::RY:
            return "RY(" + detail::fmt17(g.angle) + ") " + std::to_string(g.qubits.at(0));
        case GateKind::RXX:
            return "RXX(" + detail::fmt17(g.angle) + ") " + std::to_string(g.qubits.at(0)) + "," +
                   std::to_string(g.qubits.at(1));
        case GateKind::CX:
            return "CX " + detail::join(g.controls()) + " -> " + std::to_string(g.target());
    }
    throw std::logic_error("unknown gate kind");
}

/// One gate per line, with optional "# qubits=.." and "# N=.. B=.. J=.. T=.. L=.." headers.
inline std::string dump_program(const GateProgram& program) {
    program.validate();
    std::string out = "# qubits=" + std::to_string(program.n_qubits) + "\n";
    if (program.metadata) {
        const auto& md = *program.metadata;
        out += "# N=" + std::to_string(md.n_spins) + " B=" + detail::fmt17(md.field_b) +
               " J=" + detail::fmt17(md.coupling_j) + " T=" + detail::fmt17(md.total_time) +
               " L=" + std::to_string(md.steps) + "\n";
    }
    for (const auto& g : program.gates) {
        if (g.kind == GateKind::CX && g.qubits.size() == 1) {
            throw std::invalid_argument("CX without controls cannot be serialized; use X");
        }
        out += dump_gate(g);
        out += '\n';
    }
    return out;
}

inline Gate parse_gate(const std::string& raw, int line) {
    const std::string s = detail::trim(raw);
    const auto err = [line](const std::string& what) {
        return ParseError("line " + std::to_string(line) + ": " + what);
    };
    auto angle_and_rest = [&](std::size_t prefix) {
        const auto close = s.find(')', prefix);
        if (s.size() <= prefix || s[prefix] != '(' || close == std::string::npos) {
            throw err("expected '(angle)'");
        }
        return std::pair{detail::parse_double(s.substr(prefix + 1, close - prefix - 1), line),
                         s.substr(close + 1)};
    };
    if (s.rfind("RXX", 0) == 0) {
        auto [angle, rest] = angle_and_rest(3);
        const auto q = detail::parse_list(rest, line);
        if (q.size() != 2) throw err("RXX takes two qubits");
        return Gate::rxx(angle, q[0], q[1]);
    }
    if (s.rfind("RY", 0) == 0) {
        auto [angle, rest] = angle_and_rest(2);
        return Gate::ry(angle, detail::parse_int(rest, line));
    }
    if (s.rfind("HT ", 0) == 0) return Gate::ht(detail::parse_int(s.substr(3), line));
    if (s.rfind("X ", 0) == 0) return Gate::x(detail::parse_int(s.substr(2), line));
    if (s.rfind("CX ", 0) == 0) {
        const auto arrow = s.find("->");
        if (arrow == std::string::npos) throw err("CX needs '->'");
        return Gate::cx(detail::parse_list(s.substr(3, arrow - 3), line),
                        detail::parse_int(s.substr(arrow + 2), line));
    }
    throw err("unknown gate '" + s + "'");
}

inline GateProgram parse_program(const std::string& text) {
    GateProgram p;
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    int max_qubit = -1;
    bool have_qubits = false;
    while (std::getline(ss, raw)) {
        ++line;
        const std::string s = detail::trim(raw);
        if (s.empty()) continue;
        if (s[0] == '#') {
            std::stringstream hs(s.substr(1));
            std::string tok;
            ProgramMetadata md;
            bool is_meta = false;
            while (hs >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) throw ParseError("line " + std::to_string(line) + ": bad header");
                const std::string key = tok.substr(0, eq);
                const std::string val = tok.substr(eq + 1);
                if (key == "qubits") {
                    p.n_qubits = detail::parse_int(val, line);
                    have_qubits = true;
                } else if (key == "N") {
                    md.n_spins = detail::parse_int(val, line);
                    is_meta = true;
                } else if (key == "B") {
                    md.field_b = detail::parse_double(val, line);
                } else if (key == "J") {
                    md.coupling_j = detail::parse_double(val, line);
                } else if (key == "T") {
                    md.total_time = detail::parse_double(val, line);
                } else if (key == "L") {
                    md.steps = std::stoll(val);
                } else {
                    throw ParseError("line " + std::to_string(line) + ": unknown header key " + key);
                }
            }
            if (is_meta) p.metadata = md;
            continue;
        }
        Gate g = parse_gate(s, line);
        for (int q : g.qubits) max_qubit = std::max(max_qubit, q);
        p.gates.push_back(std::move(g));
    }
    if (!have_qubits) {
        p.n_qubits = p.metadata ? log2_exact(p.metadata->n_spins) + 2 : max_qubit + 1;
    }
    try {
        p.validate();
    } catch (const std::exception& e) {
        throw ParseError(e.what());
    }
    return p;
}

}  // namespace cmq::circuit
