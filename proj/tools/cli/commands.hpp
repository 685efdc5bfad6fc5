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

// Command layer of the cmq tool. Every command turns a RunConfig into a Report; main()
// only parses flags and writes the rendered report.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cmq/cmq.hpp"
#include "json.hpp"

namespace cmq::cli {

using nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Command { sweep, scaling, compare, estimate, dump, oracle };
enum class Format { csv, json };

inline const char* to_string(Command c) {
    switch (c) {
        case Command::sweep: return "sweep";
        case Command::scaling: return "scaling";
        case Command::compare: return "compare";
        case Command::estimate: return "estimate";
        case Command::dump: return "dump";
        case Command::oracle: return "oracle";
    }
    return "?";
}

/// Thrown for configurations rejected before any computation.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    Command command = Command::sweep;
    std::vector<long long> n_list;
    std::vector<double> g_list;
    std::optional<double> field_b;
    double coupling_j = 1.0;
    std::optional<double> total_time;
    std::optional<long long> steps;
    adiabatic::ScheduleConfig schedule;
    long long shots = 10000;
    std::optional<std::uint64_t> seed;
    int reps = 200;
    std::string out;
    Format format = Format::csv;
};

using Value = std::variant<long long, double, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
};

struct Failure {
    std::string check;
    std::string detail;
};

struct Report {
    std::string schema;
    ordered_json config;
    Table table;
    ordered_json summary = ordered_json::object();
    std::vector<Failure> failures;
    std::vector<std::string> warnings;
    std::optional<std::string> raw;  // dump: program text replaces the table

    void check(bool ok, const std::string& name, const std::string& detail) {
        if (!ok) failures.push_back({name, detail});
    }
};

// ---- formatting ----

inline std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

inline std::string csv_field(const Value& v) {
    if (const auto* d = std::get_if<double>(&v)) return fmt("%.12g", *d);
    if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    const auto& s = std::get<std::string>(v);
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

/// RFC 4180: CRLF line ends, fields quoted only when needed.
inline std::string render_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_field(t.columns[i]);
    out += "\r\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
        out += "\r\n";
    }
    return out;
}

inline ordered_json to_json(const Value& v) {
    return std::visit([](const auto& x) { return ordered_json(x); }, v);
}

inline ordered_json failures_json(const Report& r) {
    ordered_json f = ordered_json::array();
    for (const auto& x : r.failures) f.push_back({{"check", x.check}, {"detail", x.detail}});
    return f;
}

/// Doubles are written in shortest round-trip form.
inline std::string render_json(const Report& r) {
    ordered_json j;
    j["schema"] = r.schema;
    j["version"] = kSchemaVersion;
    j["config"] = r.config;
    if (r.raw) {
        j["program"] = *r.raw;
    } else {
        j["columns"] = r.table.columns;
        ordered_json rows = ordered_json::array();
        for (const auto& row : r.table.rows) {
            ordered_json o;
            for (std::size_t i = 0; i < row.size(); ++i) o[r.table.columns[i]] = to_json(row[i]);
            rows.push_back(std::move(o));
        }
        j["rows"] = std::move(rows);
    }
    j["summary"] = r.summary;
    j["failures"] = failures_json(r);
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

/// What goes to stdout (or --out).
inline std::string render(const Report& r, Format f) {
    if (f == Format::json) return render_json(r);
    if (r.raw) return *r.raw;
    return render_csv(r.table);
}

/// Side channel for CSV and dump output: config, summary, failures and warnings.
inline std::string render_side(const Report& r) {
    ordered_json j;
    j["schema"] = r.schema;
    j["version"] = kSchemaVersion;
    j["config"] = r.config;
    j["summary"] = r.summary;
    j["failures"] = failures_json(r);
    j["warnings"] = r.warnings;
    return j.dump() + "\n";
}

// ---- config ----

inline ordered_json resolved_config(const RunConfig& c) {
    ordered_json j;
    j["command"] = to_string(c.command);
    j["n"] = c.n_list;
    j["g"] = c.g_list;
    j["b"] = c.field_b ? ordered_json(*c.field_b) : ordered_json(nullptr);
    j["j"] = c.coupling_j;
    j["t_total"] = c.total_time ? ordered_json(*c.total_time) : ordered_json(nullptr);
    j["l_steps"] = c.steps ? ordered_json(*c.steps) : ordered_json(nullptr);
    j["c_t"] = c.schedule.c_t;
    j["c_l"] = c.schedule.c_l;
    j["l_cap"] = c.schedule.l_cap;
    j["shots"] = c.shots;
    j["seed"] = c.seed ? ordered_json(*c.seed) : ordered_json(nullptr);
    j["reps"] = c.reps;
    j["format"] = c.format == Format::csv ? "csv" : "json";
    return j;
}

/// Fills command defaults and rejects configurations the modules would refuse.
inline RunConfig validate(RunConfig c) {
    auto need = [](bool ok, const std::string& what) {
        if (!ok) throw UsageError(what);
    };
    if (c.n_list.empty()) {
        switch (c.command) {
            case Command::estimate: c.n_list = {16}; break;
            case Command::scaling: break;
            default: c.n_list = {4}; break;
        }
    }
    for (long long n : c.n_list) {
        need(is_power_of_two(n) && n >= 4, "--n values must be powers of two >= 4");
    }
    if (c.field_b) {
        need(c.g_list.empty(), "--b and --g are mutually exclusive");
        need(c.coupling_j != 0.0 || c.command == Command::oracle, "--j must be nonzero");
        if (c.coupling_j != 0.0) c.g_list = {*c.field_b / c.coupling_j};
    } else {
        need(c.coupling_j != 0.0, "--j must be nonzero unless --b is given");
    }
    if (c.g_list.empty() && c.command == Command::scaling) c.g_list = {1.0};
    if (c.g_list.empty() && (c.command == Command::estimate || c.command == Command::dump)) c.g_list = {1.0};
    need(!c.g_list.empty() || (c.field_b && c.coupling_j == 0.0), "no g values given (use --g or --b)");
    for (double g : c.g_list) need(std::isfinite(g) && g >= 0.0, "--g values must be finite and >= 0");
    if (c.total_time) need(*c.total_time > 0.0, "--t-total must be positive");
    if (c.steps) need(*c.steps >= 1, "--l-steps must be >= 1");
    need(c.schedule.c_t > 0 && c.schedule.c_l > 0 && c.schedule.l_cap >= 1, "schedule constants must be positive");
    need(c.shots >= 1, "--shots must be >= 1");
    need(c.reps >= 1, "--reps must be >= 1");
    if (c.command == Command::estimate) need(c.seed.has_value(), "estimate needs --seed");
    if (c.command == Command::compare) {
        for (long long n : c.n_list) need(n <= 8, "compare runs the gate and dense paths; --n must be <= 8");
    }
    if (c.command == Command::oracle) {
        for (long long n : c.n_list) need(n <= dense::kEvolutionCap, "oracle is limited to --n <= 10");
    }
    if (c.command == Command::dump) need(c.n_list.size() == 1 && c.g_list.size() == 1, "dump takes one --n and one --g");
    if (c.command == Command::estimate) need(c.n_list.size() == 1 && c.g_list.size() == 1, "estimate takes one --n and one --g");
    std::sort(c.n_list.begin(), c.n_list.end());
    c.n_list.erase(std::unique(c.n_list.begin(), c.n_list.end()), c.n_list.end());
    std::sort(c.g_list.begin(), c.g_list.end());
    c.g_list.erase(std::unique(c.g_list.begin(), c.g_list.end()), c.g_list.end());
    return c;
}

inline adiabatic::TrotterSchedule schedule_for(const RunConfig& c, long long n) {
    return adiabatic::build_schedule(static_cast<int>(n), c.total_time, c.steps, c.schedule);
}

inline IsingParams params_for(const RunConfig& c, long long n, double g) {
    return {static_cast<int>(n), g * c.coupling_j, c.coupling_j};
}

inline std::vector<std::pair<long long, double>> grid(const RunConfig& c) {
    std::vector<std::pair<long long, double>> pts;
    for (long long n : c.n_list)
        for (double g : c.g_list) pts.emplace_back(n, g);
    return pts;
}

// ---- commands ----

inline Report cmd_sweep(const RunConfig& c) {
    Report r;
    r.schema = "cmq.sweep";
    r.config = resolved_config(c);
    r.table.columns = {"N", "g", "b", "db_dg", "var_b", "m", "dm_dg", "var_m"};
    const auto pts = grid(c);
    r.table.rows = parallel_map<std::vector<Value>>(pts.size(), [&](std::size_t i) {
        const auto [n, g] = pts[i];
        return std::vector<Value>{n,
                                  g,
                                  analytic::expected_b(g, n),
                                  analytic::expected_b_derivative(g, n),
                                  analytic::variance_b(g, n),
                                  analytic::expected_m(g, n),
                                  analytic::expected_m_derivative(g, n),
                                  analytic::variance_m(g, n)};
    });
    return r;
}

struct ScalingWindows {
    double b_lo = -2.1, b_hi = -1.9;
    double m_lo = -1.35, m_hi = -1.0;
    double m_spread = 0.25;
    double var_b_tol = 0.02;
};

inline Report cmd_scaling(const RunConfig& c, ScalingWindows w = {}) {
    Report r;
    r.schema = "cmq.scaling";
    r.config = resolved_config(c);
    const double g = c.g_list.front();
    const auto b_list = c.n_list.empty() ? metrology::power_ladder(3, 10) : c.n_list;
    const auto m_list = c.n_list.empty() ? metrology::power_ladder(8, 13) : c.n_list;
    const auto fb = metrology::fit_scaling(metrology::Observable::B, g, b_list, c.shots);
    const auto fm = metrology::fit_scaling(metrology::Observable::M, g, m_list, c.shots);
    r.table.columns = {"observable", "N", "variance", "derivative", "delta_g_sq", "normalized"};
    double lo = INFINITY, hi = 0.0;
    for (const auto& p : fb.points) {
        const double nn = static_cast<double>(p.n_spins);
        r.table.rows.push_back({std::string("B"), p.n_spins, p.variance, p.derivative, p.delta_g_sq,
                                p.delta_g_sq * nn * nn * static_cast<double>(p.shots)});
    }
    for (const auto& p : fm.points) {
        const double nn = static_cast<double>(p.n_spins);
        const double norm = p.delta_g_sq * nn * std::log(nn) * static_cast<double>(p.shots);
        lo = std::min(lo, norm);
        hi = std::max(hi, norm);
        r.table.rows.push_back({std::string("M"), p.n_spins, p.variance, p.derivative, p.delta_g_sq, norm});
    }
    // Half-range relative to the midrange: the reading of "varies by +/- x".
    const double spread = (hi - lo) / (hi + lo);
    double var_b_dev = 0.0;
    for (long long n : b_list) {
        if (n >= 64) var_b_dev = std::max(var_b_dev, std::abs(analytic::variance_b(g, n) / 0.25 - 1.0));
    }
    r.summary = {{"g", g},
                 {"slope_b", fb.slope},
                 {"r2_b", fb.r_squared},
                 {"slope_m", fm.slope},
                 {"r2_m", fm.r_squared},
                 {"m_nlogn_spread", spread},
                 {"var_b_max_rel_dev_n_ge_64", var_b_dev}};
    r.check(fb.slope >= w.b_lo && fb.slope <= w.b_hi, "slope_b",
            fmt("%.6g", fb.slope) + " outside [" + fmt("%g", w.b_lo) + ", " + fmt("%g", w.b_hi) + "]");
    r.check(fm.slope >= w.m_lo && fm.slope <= w.m_hi, "slope_m",
            fmt("%.6g", fm.slope) + " outside [" + fmt("%g", w.m_lo) + ", " + fmt("%g", w.m_hi) + "]");
    r.check(fm.slope > fb.slope, "m_worse_than_b", "M slope is not above the B slope");
    r.check(spread < w.m_spread, "m_nlogn_spread",
            "delta g^2 N log N for M varies by " + fmt("%.3g", 100 * spread) + "% (limit " +
                fmt("%g", 100 * w.m_spread) + "%)");
    if (g == 1.0) {
        r.check(var_b_dev < w.var_b_tol, "var_b_quarter",
                "Var B deviates from 1/4 by " + fmt("%.3g", 100 * var_b_dev) + "% for N >= 64");
    }
    return r;
}

inline void warn_proxy(Report& r, const adiabatic::TrotterSchedule& s, long long n, double target) {
    const double proxy = adiabatic::trotter_error_bound(s);
    if (proxy > target) {
        r.warnings.push_back("N=" + std::to_string(n) + ": Trotter proxy L*Delta^2 = " + fmt("%.4g", proxy) +
                             " exceeds target " + fmt("%.3g", target));
    }
}

inline Report cmd_compare(const RunConfig& c, double tol = 1e-9) {
    Report r;
    r.schema = "cmq.compare";
    r.config = resolved_config(c);
    r.table.columns = {"N",     "g",      "T",     "L",           "proxy",        "analytic",
                       "matrix", "gate", "dense_trotter", "dense_ground", "d_matrix_gate", "d_matrix_dense",
                       "d_analytic_ground", "d_analytic_matrix"};
    const auto pts = grid(c);
    r.table.rows = parallel_map<std::vector<Value>>(pts.size(), [&](std::size_t i) {
        const auto [n, g] = pts[i];
        const auto p = params_for(c, n, g);
        const auto s = schedule_for(c, n);
        const double analytic = analytic::expected_b(g, n);
        const double matrix = matchgate::expectation_quadratic(adiabatic::adiabatic_rotation(p, s),
                                                               matchgate::observable_b_coefficients(p.n_spins));
        const double gate = circuit::expectation_b_gate(p, s);
        const auto b_dense = dense::observable_b_dense(p.n_spins);
        const double trotter = dense::expectation(dense::trotter_evolve(p, s), b_dense);
        const double ground = dense::expectation(dense::ground_state_even(p), b_dense);
        return std::vector<Value>{n,
                                  g,
                                  s.total_time(),
                                  s.steps(),
                                  adiabatic::trotter_error_bound(s),
                                  analytic,
                                  matrix,
                                  gate,
                                  trotter,
                                  ground,
                                  std::abs(matrix - gate),
                                  std::abs(matrix - trotter),
                                  std::abs(analytic - ground),
                                  std::abs(analytic - matrix)};
    });
    for (const auto& row : r.table.rows) {
        const auto where = "N=" + std::to_string(std::get<long long>(row[0])) + " g=" + fmt("%g", std::get<double>(row[1]));
        r.check(std::get<double>(row[10]) < tol, "matrix_vs_gate", where + " delta " + fmt("%.3g", std::get<double>(row[10])));
        r.check(std::get<double>(row[11]) < tol, "matrix_vs_dense", where + " delta " + fmt("%.3g", std::get<double>(row[11])));
        r.check(std::get<double>(row[12]) < tol, "analytic_vs_ground", where + " delta " + fmt("%.3g", std::get<double>(row[12])));
    }
    for (long long n : c.n_list) warn_proxy(r, schedule_for(c, n), n, 1e-2);
    r.summary = {{"tolerance", tol}, {"points", r.table.rows.size()}};
    return r;
}

inline Report cmd_estimate(const RunConfig& c) {
    Report r;
    r.schema = "cmq.estimate";
    r.config = resolved_config(c);
    const long long n = c.n_list.front();
    const double g = c.g_list.front();
    const auto p = params_for(c, n, g);
    const auto s = schedule_for(c, n);
    const auto reg = circuit::run_circuit(p, s);
    const double ym = circuit::measure_ym(reg);
    metrology::EstimationConfig ec;
    ec.n_spins = n;
    ec.g_true = g;
    ec.shots = c.shots;
    ec.reps = c.reps;
    ec.seed = *c.seed;
    ec.window = {std::max(0.0, g - 0.5), g + 0.5};
    const auto rep = metrology::run_estimation(ec, ym);
    r.table.columns = {"rep", "g_hat", "std_error", "sample_mean", "out_of_range"};
    for (std::size_t i = 0; i < rep.estimates.size(); ++i) {
        const auto& e = rep.estimates[i];
        r.table.rows.push_back({static_cast<long long>(i), e.g_hat, e.std_error, e.sample_mean, e.out_of_range});
    }
    const double ratio = rep.mse / rep.predicted;
    const double bias = rep.mean_g - g;
    const double bias_se = std::sqrt(rep.predicted / static_cast<double>(c.reps));
    r.summary = {{"N", n},
                 {"g", g},
                 {"T", s.total_time()},
                 {"L", s.steps()},
                 {"proxy", adiabatic::trotter_error_bound(s)},
                 {"ym", ym},
                 {"b_circuit", rep.b_true},
                 {"b_analytic", analytic::expected_b(g, n)},
                 {"mse", rep.mse},
                 {"predicted", rep.predicted},
                 {"mse_over_predicted", ratio},
                 {"mean_g", rep.mean_g},
                 {"bias", bias},
                 {"bias_over_se", bias / bias_se},
                 {"mean_std_error", rep.mean_std_error},
                 {"out_of_range", rep.out_of_range}};
    r.check(ratio >= 0.5 && ratio <= 2.0, "mse_vs_prediction", "MSE/prediction = " + fmt("%.4g", ratio));
    r.check(std::abs(bias) < 3 * bias_se, "unbiased", "bias " + fmt("%.3g", bias) + " exceeds 3 standard errors");
    if (n <= dense::kEvolutionCap) {
        const double cr = metrology::cramer_rao(dense::qfi_pure(p), c.shots);
        r.summary["cramer_rao"] = cr;
        r.check(rep.mse >= cr, "cramer_rao", "MSE " + fmt("%.4g", rep.mse) + " below bound " + fmt("%.4g", cr));
    }
    warn_proxy(r, s, n, std::sqrt(rep.predicted));
    return r;
}

inline Report cmd_dump(const RunConfig& c) {
    Report r;
    r.schema = "cmq.dump";
    r.config = resolved_config(c);
    const long long n = c.n_list.front();
    const auto p = params_for(c, n, c.g_list.front());
    const auto s = schedule_for(c, n);
    const auto prog = circuit::full_program(p, s);
    r.raw = circuit::dump_program(prog);
    const int m = log2_exact(n);
    const auto step = circuit::trotter_step_gates(p.field_b, p.coupling_j, 0, s, m);
    const auto counts = circuit::count_gates(prog);
    const auto per_step = circuit::count_gates(step);
    std::vector<double> ms, lowered;
    for (int k = 4; k <= 32; k *= 2) {
        ms.push_back(k);
        lowered.push_back(static_cast<double>(
            circuit::count_gates(circuit::trotter_step_gates(p.field_b, p.coupling_j, 0, s, k)).lowered));
    }
    const double growth = metrology::fit_power_law(ms, lowered).slope;
    r.summary = {{"m", m},
                 {"qubits", prog.n_qubits},
                 {"total_gates", counts.total},
                 {"gates_per_step", per_step.total},
                 {"shift_gates_per_ladder", circuit::shift_gate_count(m)},
                 {"controlled_per_step", per_step.controlled},
                 {"lowered_per_step", per_step.lowered},
                 {"lowered_growth_exponent", growth}};
    r.check(circuit::shift_gate_count(m) == m + 1, "shift_ladder", "ladder does not have m+1 gates");
    r.check(growth <= 2.2, "lowered_growth", "per-step lowered count grows like m^" + fmt("%.3g", growth));
    return r;
}

inline Report cmd_oracle(const RunConfig& c, double tol = 1e-9) {
    Report r;
    r.schema = "cmq.oracle";
    r.config = resolved_config(c);
    r.table.columns = {"N", "B", "J", "energy", "gap", "b", "m", "var_b", "var_m", "parity", "qfi", "trotter_overlap",
                       "b_trotter"};
    std::vector<std::pair<long long, std::pair<double, double>>> pts;
    for (long long n : c.n_list) {
        if (c.coupling_j == 0.0) {
            pts.push_back({n, {*c.field_b, 0.0}});
        } else {
            for (double g : c.g_list) pts.push_back({n, {g * c.coupling_j, c.coupling_j}});
        }
    }
    r.table.rows = parallel_map<std::vector<Value>>(pts.size(), [&](std::size_t i) {
        const long long n = pts[i].first;
        const IsingParams p{static_cast<int>(n), pts[i].second.first, pts[i].second.second};
        const auto gs = dense::ground_state_even_full(p);
        const auto b_op = dense::observable_b_dense(p.n_spins);
        const auto m_op = dense::observable_m_dense(p.n_spins);
        std::vector<Value> row{n,
                               p.field_b,
                               p.coupling_j,
                               gs.energy,
                               gs.gap,
                               dense::expectation(gs.state, b_op),
                               dense::expectation(gs.state, m_op),
                               dense::variance(gs.state, b_op),
                               dense::variance(gs.state, m_op),
                               dense::expectation(gs.state, dense::parity_operator(p.n_spins))};
        if (p.coupling_j != 0.0) {
            const auto s = schedule_for(c, n);
            const auto evolved = dense::trotter_evolve(p, s);
            row.push_back(dense::qfi_pure(p));
            row.push_back(dense::overlap_sq(gs.state, evolved));
            row.push_back(dense::expectation(evolved, b_op));
        } else {
            row.insert(row.end(), {std::string(), std::string(), std::string()});
        }
        return row;
    });
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& row = r.table.rows[i];
        const long long n = pts[i].first;
        const double jj = pts[i].second.second;
        const auto where = "N=" + std::to_string(n) + " B=" + fmt("%g", pts[i].second.first) + " J=" + fmt("%g", jj);
        r.check(std::abs(std::get<double>(row[9]) - 1.0) < 1e-12, "parity", where);
        if (jj != 0.0) {
            const double g = pts[i].second.first / jj;
            r.check(std::abs(std::get<double>(row[5]) - analytic::expected_b(g, n)) < tol, "b_vs_analytic", where);
            r.check(std::abs(std::get<double>(row[6]) - analytic::expected_m(g, n)) < tol, "m_vs_analytic", where);
        }
    }
    return r;
}

inline Report run(const RunConfig& raw) {
    const RunConfig c = validate(raw);
    switch (c.command) {
        case Command::sweep: return cmd_sweep(c);
        case Command::scaling: return cmd_scaling(c);
        case Command::compare: return cmd_compare(c);
        case Command::estimate: return cmd_estimate(c);
        case Command::dump: return cmd_dump(c);
        case Command::oracle: return cmd_oracle(c);
    }
    throw std::logic_error("unknown command");
}

}  // namespace cmq::cli
