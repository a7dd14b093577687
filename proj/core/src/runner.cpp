// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/runner.hpp"

#include <cstdio>
#include <ostream>

#include "covesim/bench.hpp"

namespace covesim::cli {

std::string vcd_path_for(const std::string &base, const std::string &test,
                         bool single) {
    if (single) return base;
    size_t dot = base.rfind('.');
    size_t slash = base.rfind('/');
    if (dot == std::string::npos || (slash != std::string::npos && slash > dot))
        return base + "." + test + ".vcd";
    return base.substr(0, dot) + "." + test + base.substr(dot);
}

namespace {

std::string human_time(uint64_t ps) {
    char buf[48];
    if (ps >= 1000000000ull)
        std::snprintf(buf, sizeof buf, "%.3f ms", double(ps) / 1e9);
    else if (ps >= 1000000ull)
        std::snprintf(buf, sizeof buf, "%.3f us", double(ps) / 1e6);
    else
        std::snprintf(buf, sizeof buf, "%llu ps",
                      static_cast<unsigned long long>(ps));
    return buf;
}

} // namespace

RunResult run_with_config(const RunConfig &cfg, std::ostream &out) {
    validate_config(cfg);

    cov::CoverageDb db;
    if (cfg.cov_model_file.empty())
        cov::load_model(db, cov::builtin_model(cfg.toplevel));
    else
        cov::load_model(db, cov::read_file(cfg.cov_model_file));
    db.set_seed(cfg.seed);

    const auto &reg = tb::TestRegistry::builtin();
    std::vector<const tb::TestCase *> selected;
    for (const tb::TestCase *tc : reg.filter(cfg.test_filter))
        if (tc->toplevel == cfg.toplevel) selected.push_back(tc);
    if (selected.empty())
        throw ConfigError("no tests of toplevel '" + cfg.toplevel +
                          "' match filter '" + cfg.test_filter + "'");

    tb::TbOptions opts;
    opts.transactions = cfg.transactions;
    opts.seed = cfg.seed;
    opts.horizon_ps = cfg.horizon_ps;
    opts.fail_fast = cfg.fail_fast;
    if (!cfg.mem_init_file.empty())
        opts.mem_init = dut::parse_mem_image(cov::read_file(cfg.mem_init_file));

    out << "covesim run: toplevel=" << cfg.toplevel << " seed=" << cfg.seed
        << " transactions="
        << (cfg.transactions ? std::to_string(cfg.transactions)
                             : std::to_string(default_transactions(
                                   cfg.toplevel)) + " (default)")
        << "\n";

    RunResult result;
    result.all_passed = true;
    std::optional<std::array<uint8_t, dut::kI2cMemBytes>> last_memory;

    for (const tb::TestCase *tc : selected) {
        tb::TbOptions test_opts = opts;
        if (!cfg.vcd_out.empty())
            test_opts.vcd_path =
                vcd_path_for(cfg.vcd_out, tc->name, selected.size() == 1);
        tb::TestOutcome o = tc->run(test_opts, db);

        RunResult::Row row;
        row.name = o.name;
        row.passed = o.passed;
        row.message = o.message;
        row.sim_time_ps = o.report.sim_time_ps;
        row.wall_seconds = o.report.wall_seconds;
        row.cumulative_percent = cov::render_percent(db.total_percent());
        result.rows.push_back(row);
        result.all_passed &= o.passed;
        if (o.i2c_memory) last_memory = o.i2c_memory;
        if (cfg.fail_fast && !o.passed) break;
    }

    auto snap = db.snapshot();
    result.coverage = snap;
    result.total_percent = cov::render_percent(snap.total_percent());
    result.cov_yaml_path = cfg.cov_out + ".yaml";
    result.cov_text_path = cfg.cov_out + ".txt";
    cov::write_file(result.cov_yaml_path, cov::export_yaml(snap));
    cov::write_file(result.cov_text_path, cov::export_text(snap));
    if (!cfg.mem_dump_file.empty() && last_memory)
        cov::write_file(cfg.mem_dump_file, dut::format_mem_image(*last_memory));

    // summary table
    size_t name_w = 4;
    for (const auto &r : result.rows) name_w = std::max(name_w, r.name.size());
    name_w += 2;
    auto pad = [&out](const std::string &s, size_t w) {
        out << s;
        for (size_t i = s.size(); i < w; ++i) out << ' ';
    };
    pad("test", name_w);
    out << "result  sim_time      wall_s     coverage%\n";
    for (const auto &r : result.rows) {
        pad(r.name, name_w);
        pad(r.passed ? "PASS" : "FAIL", 8);
        pad(human_time(r.sim_time_ps), 14);
        char wall[32];
        std::snprintf(wall, sizeof wall, "%.4f", r.wall_seconds);
        pad(wall, 11);
        out << r.cumulative_percent << "\n";
        if (!r.passed && !r.message.empty())
            out << "    " << r.message << "\n";
    }
    out << "total coverage: " << result.total_percent << "% -> "
        << result.cov_yaml_path << ", " << result.cov_text_path << "\n";
    return result;
}

bool bench_with_config(const RunConfig &cfg, std::ostream &out) {
    if (cfg.repeats < 3)
        throw ConfigError("repeats must be at least 3, got " +
                          std::to_string(cfg.repeats));
    BenchPlan plan;
    if (!cfg.toplevel.empty()) {
        validate_config(cfg);
        plan.designs = {cfg.toplevel};
    } else {
        plan.designs = {"alu", "adc"};
    }
    plan.repeats = cfg.repeats;
    plan.seed = cfg.seed;

    out << "covesim bench: seed=" << cfg.seed << " repeats=" << cfg.repeats
        << "\n";
    std::vector<BenchRecord> records;
    try {
        records = run_bench(plan, out);
    } catch (const Error &e) {
        out << "bench aborted: " << e.what() << "\n";
        return false;
    }
    cov::write_file(cfg.bench_out, bench_csv(records));
    out << "bench csv -> " << cfg.bench_out << " (" << records.size()
        << " rows)\n";
    return true;
}

int main_with_config(const RunConfig &cfg, std::ostream &out) {
    if (cfg.bench) return bench_with_config(cfg, out) ? 0 : 1;
    RunResult result = run_with_config(cfg, out);
    return result.all_passed ? 0 : 1;
}

} // namespace covesim::cli
