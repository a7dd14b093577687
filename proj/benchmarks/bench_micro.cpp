// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the kernel primitives. The transactions-vs-runtime
// harness lives in the covesim CLI (--bench); these measure the pieces.

#include <benchmark/benchmark.h>

#include "covesim/coverage.hpp"
#include "covesim/crv.hpp"
#include "covesim/kernel.hpp"
#include "covesim/logic.hpp"
#include "covesim/tb.hpp"

using namespace covesim;

static void BM_bitwise_and_32(benchmark::State &state) {
    auto a = LogicVector::parse("32'hDEADBEEF");
    auto b = LogicVector::parse("32'h0F0F0F0F");
    for (auto _ : state) {
        auto r = bitwise_and(a, b);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_bitwise_and_32);

static void BM_arith_add_32(benchmark::State &state) {
    auto a = LogicVector::from_unsigned(0x12345678, 32);
    auto b = LogicVector::from_unsigned(0x9ABCDEF0, 32);
    for (auto _ : state) {
        auto r = arith(ArithOp::Add, a, b);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_arith_add_32);

static void BM_resolve_three_drivers(benchmark::State &state) {
    std::vector<Driver> drivers{{Logic::Z, Strength::Strong},
                                {Logic::Zero, Strength::Strong},
                                {Logic::One, Strength::PullUp}};
    for (auto _ : state) {
        auto r = resolve(drivers);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_resolve_three_drivers);

static void BM_rng_next(benchmark::State &state) {
    crv::Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(rng.next());
}
BENCHMARK(BM_rng_next);

static void BM_randomize_filtered(benchmark::State &state) {
    crv::Rng rng(1);
    std::vector<crv::RandomVar> vars{crv::RandomVar::interval("x", 0, 7),
                                     crv::RandomVar::interval("y", 0, 7)};
    crv::ConstraintSet cs;
    cs.add("ne", [](const crv::Assignment &a) {
        return a.at("x") != a.at("y");
    });
    for (auto _ : state) {
        auto a = crv::randomize(vars, cs, rng);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_randomize_filtered);

static void BM_coverage_sample_alu_model(benchmark::State &state) {
    cov::CoverageDb db;
    cov::load_model(db, cov::builtin_model("alu"));
    int64_t v = -100;
    for (auto _ : state) {
        db.sample({{"a", v}, {"b", -v}, {"op", (v + 100) & 7}});
        if (++v > 100) v = -100;
    }
}
BENCHMARK(BM_coverage_sample_alu_model);

static void BM_kernel_clock_throughput(benchmark::State &state) {
    // events processed per toggle-heavy run
    for (auto _ : state) {
        sim::Kernel k;
        auto clk = k.create_signal("top.clk", 1);
        sim::spawn_clock(k, clk, sim::nanoseconds(20));
        auto rep = k.run(sim::microseconds(100));
        benchmark::DoNotOptimize(rep.events);
    }
}
BENCHMARK(BM_kernel_clock_throughput)->Unit(benchmark::kMicrosecond);

static void BM_alu_testbench_1k(benchmark::State &state) {
    for (auto _ : state) {
        cov::CoverageDb db;
        cov::load_model(db, cov::builtin_model("alu"));
        tb::TbOptions opts;
        opts.seed = 1;
        auto out = tb::run_alu_test(1000, opts, db);
        benchmark::DoNotOptimize(out.report.events);
    }
}
BENCHMARK(BM_alu_testbench_1k)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
