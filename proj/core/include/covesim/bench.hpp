// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "covesim/config.hpp"

namespace covesim::cli {

/// One timed simulation run. wall_seconds wraps the kernel run() only;
/// process startup and report writing are excluded.
struct BenchRecord {
    std::string design;
    uint64_t transactions = 0;
    uint64_t run_index = 0;
    double wall_seconds = 0.0;
    uint64_t events = 0;
};

struct BenchPlan {
    std::vector<std::string> designs;
    uint64_t repeats = 5; // floor of 3 enforced
    uint64_t seed = 1;
};

/// The per-design transaction ladders; the I2C suite is a single rung of
/// its three fixed tests.
const std::vector<uint64_t> &bench_ladder(const std::string &design);

/// Runs every design x rung x repeat serially; any failing test aborts
/// with the failure message.
std::vector<BenchRecord> run_bench(const BenchPlan &plan, std::ostream &log);

std::string bench_csv(const std::vector<BenchRecord> &records);

double median(std::vector<double> values);

/// (transactions, median wall seconds) per rung for one design.
std::vector<std::pair<uint64_t, double>>
rung_medians(const std::vector<BenchRecord> &records,
             const std::string &design);

} // namespace covesim::cli
