// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The uavnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: runs one scenario file.
//
//   uavnet --scenario <path> [--seed <u64>] [--out <dir>] [--threads <n>] [--print-scenario]

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "uavnet/scenario/run.hpp"
#include "uavnet/scenario/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"uavnet: UAV network scenario runner"};
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    unsigned threads = 1;
    bool print_only = false;
    app.add_option("--scenario", scenario_path, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "Override the scenario seed");
    app.add_option("--out", out, "Output directory (default: the scenario's output key)");
    app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--print-scenario", print_only, "Print the canonical scenario with defaults filled in and exit");
    CLI11_PARSE(app, argc, argv);

    using namespace uavnet;
    try {
        auto s = scenario::load_scenario(scenario_path);
        if (seed) s.seed = *seed;
        if (print_only) {
            std::cout << scenario::serialize_scenario(s);
            return 0;
        }
        scenario::RunOptions opt;
        opt.out_dir = out ? *out : s.output;
        opt.threads = threads;
        const auto res = scenario::run_scenario(s, opt);
        for (const auto& f : res.files) std::cout << f.string() << '\n';
        return 0;
    } catch (const parse_error& e) {
        std::cerr << "error: " << scenario_path << ": " << e.what() << '\n';
        return 2;
    } catch (const config_error& e) {
        std::cerr << "error: " << scenario_path << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
