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

// Acceptance report: one PASS/FAIL line per criterion, measured values alongside.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cmq/cmq.hpp"

namespace {

using namespace cmq;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [x]");
    }
};

std::string fmt(const char* f, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome criterion1() {
    Outcome o;
    double worst_b = 0, worst_m = 0;
    for (int n : {4, 8}) {
        const auto b_op = dense::observable_b_dense(n);
        const auto m_op = dense::observable_m_dense(n);
        for (double g : {0.5, 0.8, 1.0, 1.2, 1.5}) {
            const auto psi = dense::ground_state_even({n, g, 1.0});
            worst_b = std::max(worst_b, std::abs(dense::expectation(psi, b_op) - analytic::expected_b(g, n)));
            worst_m = std::max(worst_m, std::abs(dense::expectation(psi, m_op) - analytic::expected_m(g, n)));
        }
    }
    o.require(worst_b < 1e-9, "max|dB|=" + fmt("%.2e", worst_b));
    o.require(worst_m < 1e-9, "max|dM|=" + fmt("%.2e", worst_m));
    return o;
}

Outcome criterion2() {
    Outcome o;
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> coef(0.2, 2.0);
    std::uniform_int_distribution<long long> steps(1, 64);
    double worst_gate = 0, worst_dense = 0;
    int cases = 0;
    for (int n : {4, 8}) {
        for (int trial = 0; trial < 6; ++trial) {
            const IsingParams p{n, coef(rng), coef(rng)};
            const adiabatic::TrotterSchedule s(coef(rng) * 10.0, steps(rng));
            const double matrix = matchgate::expectation_quadratic(adiabatic::adiabatic_rotation(p, s),
                                                                   matchgate::observable_b_coefficients(n));
            worst_gate = std::max(worst_gate, std::abs(matrix - circuit::expectation_b_gate(p, s)));
            if (n == 4) {
                const double d = dense::expectation(dense::trotter_evolve(p, s), dense::observable_b_dense(n));
                worst_dense = std::max(worst_dense, std::abs(matrix - d));
            }
            ++cases;
        }
    }
    o.require(worst_gate < 1e-9, std::to_string(cases) + " cases, max|gate-matrix|=" + fmt("%.2e", worst_gate));
    o.require(worst_dense < 1e-9, "N=4 max|dense-matrix|=" + fmt("%.2e", worst_dense));
    return o;
}

Outcome criterion3() {
    Outcome o;
    const auto fit = metrology::fit_scaling(metrology::Observable::B, 1.0, metrology::power_ladder(3, 10));
    o.require(fit.slope >= -2.1 && fit.slope <= -1.9, "slope=" + fmt("%.4f", fit.slope));
    double dev = 0;
    for (long long n = 64; n <= 1024; n *= 2) dev = std::max(dev, std::abs(analytic::variance_b(1.0, n) / 0.25 - 1));
    o.require(dev < 0.02, "max|VarB/(1/4)-1| (N>=64)=" + fmt("%.2e", dev));
    double lo = INFINITY, hi = 0;
    for (long long n = 32; n <= 1024; n *= 2) {
        const double c = metrology::precision_b(1.0, n).delta_g_sq * static_cast<double>(n * n);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    o.require(lo > 0 && std::isfinite(hi), "dg^2 N^2 in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "]");
    return o;
}

Outcome criterion4() {
    Outcome o;
    const auto ns = metrology::power_ladder(8, 13);
    const auto fm = metrology::fit_scaling(metrology::Observable::M, 1.0, ns);
    const auto fb = metrology::fit_scaling(metrology::Observable::B, 1.0, metrology::power_ladder(3, 10));
    double lo = INFINITY, hi = 0;
    for (const auto& p : fm.points) {
        const double nn = static_cast<double>(p.n_spins);
        const double c = p.delta_g_sq * nn * std::log(nn);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    const double spread = (hi - lo) / (hi + lo);
    o.require(spread < 0.25, "dg^2 N lnN in [" + fmt("%.3f", lo) + ", " + fmt("%.3f", hi) + "] spread=+/-" +
                                 fmt("%.1f", 100 * spread) + "%");
    o.require(fm.slope >= -1.35 && fm.slope <= -1.0, "slope=" + fmt("%.4f", fm.slope));
    o.require(fm.slope > fb.slope, "B slope=" + fmt("%.4f", fb.slope));
    return o;
}

Outcome criterion5() {
    Outcome o;
    const IsingParams p{4, 1.0, 1.0};
    const adiabatic::TrotterSchedule s(160.0, 1024);
    const auto reg = circuit::run_circuit(p, s);
    const double b = circuit::b_from_ym(circuit::measure_ym(reg));
    const double err = std::abs(b - 0.14644660940672627);
    const double overlap = dense::overlap_sq(dense::ground_state_even(p), dense::trotter_evolve(p, s));
    o.require(err < 5e-3, "|<B>-0.1464466|=" + fmt("%.3e", err));
    o.require(overlap > 0.99, "overlap=" + fmt("%.6f", overlap));
    // Trotter proxy L*Delta^2 must fall as L grows at fixed T.
    double prev = INFINITY;
    bool mono = true;
    for (long long l : {256LL, 1024LL, 4096LL, 16384LL}) {
        const double proxy = adiabatic::trotter_error_bound(adiabatic::TrotterSchedule(160.0, l));
        mono = mono && proxy < prev;
        prev = proxy;
    }
    o.require(mono, "proxy monotone in L");
    return o;
}

Outcome criterion6() {
    Outcome o;
    metrology::EstimationConfig cfg;
    cfg.n_spins = 16;
    cfg.g_true = 1.0;
    cfg.shots = 10000;
    cfg.reps = 200;
    cfg.seed = 20260101;
    const IsingParams p{16, 1.0, 1.0};
    const auto s = adiabatic::build_schedule(16);
    const auto rep = metrology::run_estimation(cfg, circuit::measure_ym(circuit::run_circuit(p, s)));
    const double ratio = rep.mse / rep.predicted;
    o.require(ratio >= 0.5 && ratio <= 2.0, "N=16 MSE/pred=" + fmt("%.3f", ratio) + " (MSE=" + fmt("%.3e", rep.mse) + ")");
    for (int n : {4, 8}) {
        const IsingParams q{n, 1.0, 1.0};
        auto c = cfg;
        c.n_spins = n;
        const auto r = metrology::run_estimation(c, circuit::measure_ym(circuit::run_circuit(q, adiabatic::build_schedule(n))));
        const double cr = metrology::cramer_rao(dense::qfi_pure(q), c.shots);
        o.require(r.mse >= cr, "N=" + std::to_string(n) + " MSE/CR=" + fmt("%.3f", r.mse / cr));
    }
    return o;
}

Outcome criterion7() {
    Outcome o;
    bool perm = true, cycle = true;
    for (int m = 1; m <= 5; ++m) {
        const long long n = 1LL << m;
        const auto u = circuit::program_matrix(circuit::decompose_shift(m));
        // Data and probe qubits hold the Majorana index a; A sends a to a+1 mod 2N, aux untouched.
        const int q = m + 2;
        ComplexMatrix expected = ComplexMatrix::Zero(1 << q, 1 << q);
        for (long long a = 0; a < 2 * n; ++a)
            for (int aux = 0; aux < 2; ++aux) expected((((a + 1) % (2 * n)) << 1) | aux, (a << 1) | aux) = 1.0;
        perm = perm && (u - expected).cwiseAbs().maxCoeff() == 0.0;
        ComplexMatrix power = ComplexMatrix::Identity(1 << q, 1 << q);
        for (long long k = 0; k < 2 * n; ++k) power = u * power;
        cycle = cycle && (power - ComplexMatrix::Identity(1 << q, 1 << q)).cwiseAbs().maxCoeff() == 0.0;
    }
    o.require(perm, "shift exact for m<=5");
    o.require(cycle, "A^{2N}=I");
    bool ladder = true;
    for (int m = 1; m <= 10; ++m) {
        const auto c = circuit::count_gates(circuit::decompose_shift(m));
        ladder = ladder && c.controlled == m && c.total == m + 1 && circuit::shift_gate_count(m) == m + 1;
    }
    o.require(ladder, "ladder gates = m+1");
    double worst_tau = 0;
    for (long long l : {1LL, 7LL, 1024LL, 1000000LL}) {
        const adiabatic::TrotterSchedule s(2560.0, l);
        const double sum = pairwise_sum(0, l + 1, [&](long long k) { return s.tau(k); });
        worst_tau = std::max(worst_tau, std::abs(sum / s.total_time() - 1));
    }
    o.require(worst_tau < 1e-9, "max|sum tau/T-1|=" + fmt("%.1e", worst_tau));
    double worst_ortho = 0;
    bool invariants = true;
    for (int n : {4, 8, 16}) {
        const auto r = adiabatic::adiabatic_rotation({n, 0.9, 1.1}, adiabatic::TrotterSchedule(50.0, 300));
        try {
            r.check_invariants();
        } catch (const std::exception&) {
            invariants = false;
        }
        worst_ortho = std::max(worst_ortho, r.orthogonality_residual());
    }
    o.require(invariants, "SO(2N) invariants, max|RR^T-1|=" + fmt("%.1e", worst_ortho));
    return o;
}

}  // namespace

int main() {
    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("%s criterion %zu: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
