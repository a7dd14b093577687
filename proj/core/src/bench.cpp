// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "covesim/tb.hpp"

namespace covesim::cli {

const std::vector<uint64_t> &bench_ladder(const std::string &design) {
    static const std::vector<uint64_t> kAlu{20000, 40000, 60000};
    static const std::vector<uint64_t> kAdc{210, 410, 610};
    static const std::vector<uint64_t> kI2c{1};
    if (design == "alu") return kAlu;
    if (design == "adc") return kAdc;
    if (design == "i2c") return kI2c;
    throw ConfigError("no benchmark ladder for design: " + design);
}

namespace {

// One timed run; the coverage database is rebuilt per run so no state
// leaks between repetitions.
BenchRecord one_run(const std::string &design, uint64_t transactions,
                    uint64_t run_index, uint64_t seed) {
    cov::CoverageDb db;
    cov::load_model(db, cov::builtin_model(design));

    tb::TbOptions opts;
    opts.seed = seed;
    opts.transactions = transactions;

    BenchRecord rec;
    rec.design = design;
    rec.transactions = transactions;
    rec.run_index = run_index;

    if (design == "i2c") {
        auto outs = tb::run_i2c_tests(opts, db);
        for (const auto &o : outs) {
            if (!o.passed)
                throw Error("bench run failed: " + o.name + ": " + o.message);
            rec.wall_seconds += o.report.wall_seconds;
            rec.events += o.report.events;
        }
    } else {
        tb::TestOutcome out = design == "alu"
                                  ? tb::run_alu_test(transactions, opts, db)
                                  : tb::run_adc_test(transactions, opts, db);
        if (!out.passed)
            throw Error("bench run failed: " + out.name + ": " + out.message);
        rec.wall_seconds = out.report.wall_seconds;
        rec.events = out.report.events;
    }
    return rec;
}

} // namespace

std::vector<BenchRecord> run_bench(const BenchPlan &plan, std::ostream &log) {
    if (plan.repeats < 3)
        throw ConfigError("bench repeats must be at least 3, got " +
                          std::to_string(plan.repeats));
    if (plan.designs.empty())
        throw ConfigError("bench needs at least one design");

    std::vector<BenchRecord> records;
    for (const auto &design : plan.designs) {
        const auto &ladder = bench_ladder(design);
        for (uint64_t rung : ladder) {
            std::vector<double> walls;
            for (uint64_t rep = 0; rep < plan.repeats; ++rep) {
                records.push_back(one_run(design, rung, rep, plan.seed));
                walls.push_back(records.back().wall_seconds);
            }
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "bench %s transactions=%llu median=%.6f s over %llu runs",
                          design.c_str(),
                          static_cast<unsigned long long>(rung),
                          median(walls),
                          static_cast<unsigned long long>(plan.repeats));
            log << buf << "\n";
        }
    }
    return records;
}

std::string bench_csv(const std::vector<BenchRecord> &records) {
    std::string out = "design,transactions,run_index,wall_seconds,events\n";
    char buf[160];
    for (const auto &r : records) {
        std::snprintf(buf, sizeof buf, "%s,%llu,%llu,%.9f,%llu\n",
                      r.design.c_str(),
                      static_cast<unsigned long long>(r.transactions),
                      static_cast<unsigned long long>(r.run_index),
                      r.wall_seconds,
                      static_cast<unsigned long long>(r.events));
        out += buf;
    }
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) throw RangeError("median of nothing");
    std::sort(values.begin(), values.end());
    size_t n = values.size();
    if (n % 2) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::vector<std::pair<uint64_t, double>>
rung_medians(const std::vector<BenchRecord> &records,
             const std::string &design) {
    std::vector<std::pair<uint64_t, double>> out;
    for (uint64_t rung : bench_ladder(design)) {
        std::vector<double> walls;
        for (const auto &r : records)
            if (r.design == design && r.transactions == rung)
                walls.push_back(r.wall_seconds);
        if (!walls.empty()) out.emplace_back(rung, median(std::move(walls)));
    }
    return out;
}

} // namespace covesim::cli
