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

#include <cstdio>
#include <fstream>
#include <iostream>

#include "cli/parse.hpp"

int main(int argc, char** argv) {
    CLI::App app{"cmq: compressed matchgate simulation of the transverse-field Ising probe"};
    cmq::cli::RunConfig cfg;
    cmq::cli::configure(app, cfg);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    cmq::cli::Report report;
    try {
        report = cmq::cli::run(cfg);
    } catch (const cmq::cli::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    const std::string body = cmq::cli::render(report, cfg.format);
    if (cfg.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!(f << body)) {
            std::cerr << "error: cannot write " << cfg.out << "\n";
            return 3;
        }
    }
    if (cfg.format == cmq::cli::Format::csv) {
        std::cerr << cmq::cli::render_side(report);
    } else {
        for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
        if (!report.failures.empty()) std::cerr << cmq::cli::failures_json(report).dump() << "\n";
    }
    return report.failures.empty() ? 0 : 1;
}
