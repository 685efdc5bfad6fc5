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

#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/commands.hpp"

namespace cmq::cli {

/// Builds the option tree. Options live on the top-level app; subcommands fall through to it,
/// so `cmq sweep --n 4` and `cmq --n 4 sweep` are equivalent.
inline void configure(CLI::App& app, RunConfig& c) {
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file with option defaults (flags override it)");
    app.add_option("--n", c.n_list, "system sizes (powers of two)")->delimiter(',');
    app.add_option("--g", c.g_list, "field ratios B/J")->delimiter(',');
    app.add_option("--b", c.field_b, "field strength B (instead of --g)");
    app.add_option("--j", c.coupling_j, "coupling J")->capture_default_str();
    app.add_option("--t-total", c.total_time, "adiabatic time T");
    app.add_option("--l-steps", c.steps, "Trotter steps L");
    app.add_option("--c-t", c.schedule.c_t, "T = c_t N^2")->capture_default_str();
    app.add_option("--c-l", c.schedule.c_l, "L = c_l T^2 / target")->capture_default_str();
    app.add_option("--l-cap", c.schedule.l_cap, "upper limit on L")->capture_default_str();
    app.add_option("--shots", c.shots, "shots per estimate")->capture_default_str();
    app.add_option("--seed", c.seed, "RNG seed");
    app.add_option("--reps", c.reps, "Monte-Carlo repetitions")->capture_default_str();
    app.add_option("--out", c.out, "output file (default stdout)");
    const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};
    app.add_option("--format", c.format, "csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->capture_default_str();

    const std::vector<std::pair<Command, const char*>> subs{
        {Command::sweep, "analytic <B>, <M>, derivatives and variances on an (N, g) grid"},
        {Command::scaling, "precision scaling fits for B and M"},
        {Command::compare, "analytic vs matrix vs gate vs dense values"},
        {Command::estimate, "Monte-Carlo estimation of g from simulated shots"},
        {Command::dump, "write the compressed gate program"},
        {Command::oracle, "dense exact-diagonalization reference values"}};
    for (const auto& [cmd, help] : subs) {
        app.add_subcommand(to_string(cmd), help)->fallthrough()->callback([&c, cmd = cmd] { c.command = cmd; });
    }
}

/// Parses argv-style arguments (without the program name). Throws CLI::ParseError.
inline RunConfig parse(const std::vector<std::string>& args) {
    CLI::App app{"cmq"};
    RunConfig c;
    configure(app, c);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    return c;
}

}  // namespace cmq::cli
