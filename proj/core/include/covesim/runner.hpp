// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "covesim/config.hpp"
#include "covesim/coverage.hpp"
#include "covesim/tb.hpp"

namespace covesim::cli {

struct RunResult {
    struct Row {
        std::string name;
        bool passed = false;
        std::string message;
        uint64_t sim_time_ps = 0;
        double wall_seconds = 0.0;
        std::string cumulative_percent;
    };
    std::vector<Row> rows;
    std::string total_percent;
    std::string cov_yaml_path;
    std::string cov_text_path;
    bool all_passed = false;
    cov::CoverageSnapshot coverage;
};

/// Runs the selected tests serially against one coverage database, writes
/// the coverage reports (and optional VCD / memory dump), and prints the
/// summary table. Throws covesim::Error subtypes for infrastructure
/// problems; test failures only show up in the result.
RunResult run_with_config(const RunConfig &cfg, std::ostream &out);

/// Benchmark mode: ladders per design, CSV written to cfg.bench_out.
/// Returns false when any timed run failed.
bool bench_with_config(const RunConfig &cfg, std::ostream &out);

/// Full CLI behavior minus flag parsing: returns the process exit code
/// (0 pass, 1 test failure; infrastructure errors still throw).
int main_with_config(const RunConfig &cfg, std::ostream &out);

/// Per-test VCD path: the configured path as-is for a single test, with
/// the test name spliced in before the extension otherwise.
std::string vcd_path_for(const std::string &base, const std::string &test,
                         bool single);

} // namespace covesim::cli
