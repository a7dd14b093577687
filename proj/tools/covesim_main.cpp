// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
//
// covesim command line: runs the built-in testbenches against the selected
// design, collects functional coverage, and measures transactions-vs-runtime
// ladders in bench mode. Exit codes: 0 all tests pass, 1 test failure,
// 2 configuration or infrastructure error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "covesim/config.hpp"
#include "covesim/runner.hpp"

using covesim::cli::RunConfig;

int main(int argc, char **argv) {
    CLI::App app{"covesim - constrained-random functional verification with "
                 "coverage"};
    app.get_formatter()->column_width(34);

    std::string toplevel, test_filter, config_file, cov_out, vcd_out;
    std::string bench_out, cov_model, mem_init, mem_dump;
    std::string transactions_s, seed_s, horizon_s, repeats_s;
    bool fail_fast = false, bench = false;

    app.add_option("--toplevel", toplevel, "design to verify: alu, i2c, adc");
    app.add_option("--test", test_filter, "test name filter (glob, default *)");
    app.add_option("--transactions", transactions_s,
                   "transactions per test (default 20000 alu / 210 adc / 1 i2c)");
    app.add_option("--seed", seed_s, "random seed, decimal or 64'h literal");
    app.add_option("--cov-out", cov_out,
                   "coverage report prefix (writes <prefix>.yaml and .txt)");
    app.add_option("--vcd", vcd_out, "write a VCD waveform to this path");
    app.add_option("--config", config_file, "key = value configuration file");
    app.add_flag("--fail-fast", fail_fast, "abort on the first failing test");
    app.add_flag("--bench", bench, "transactions-vs-runtime benchmark mode");
    app.add_option("--repeats", repeats_s, "bench repetitions per rung (>= 3)");
    app.add_option("--horizon", horizon_s,
                   "simulation horizon (ps, or ns/us/ms/s suffix)");
    app.add_option("--cov-model", cov_model,
                   "coverage model file replacing the built-in definition");
    app.add_option("--mem-init", mem_init,
                   "i2c memory preload image (32 hex byte lines)");
    app.add_option("--mem-dump", mem_dump,
                   "write the final i2c memory image to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e); // prints help, exit 0
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        std::cerr << app.help() << std::flush;
        return 2;
    }

    try {
        RunConfig cfg;
        if (!config_file.empty())
            cfg = covesim::cli::parse_config_file(config_file);

        // command line wins over file values
        if (!toplevel.empty()) cfg.toplevel = toplevel;
        if (!test_filter.empty()) cfg.test_filter = test_filter;
        if (!transactions_s.empty())
            covesim::cli::apply_config_entry(cfg, "transactions",
                                             transactions_s);
        if (!seed_s.empty()) covesim::cli::apply_config_entry(cfg, "seed", seed_s);
        if (!cov_out.empty()) cfg.cov_out = cov_out;
        if (!vcd_out.empty()) cfg.vcd_out = vcd_out;
        if (!bench_out.empty()) cfg.bench_out = bench_out;
        if (!cov_model.empty()) cfg.cov_model_file = cov_model;
        if (!mem_init.empty()) cfg.mem_init_file = mem_init;
        if (!mem_dump.empty()) cfg.mem_dump_file = mem_dump;
        if (!horizon_s.empty())
            covesim::cli::apply_config_entry(cfg, "horizon", horizon_s);
        if (!repeats_s.empty())
            covesim::cli::apply_config_entry(cfg, "repeats", repeats_s);
        if (fail_fast) cfg.fail_fast = true;
        if (bench) cfg.bench = true;

        return covesim::cli::main_with_config(cfg, std::cout);
    } catch (const covesim::Error &e) {
        std::cerr << "covesim: error: " << e.what() << "\n";
        return 2;
    }
}
