// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "covesim/errors.hpp"

namespace covesim::cli {

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Run settings. File values come from a `key = value` config file;
/// command-line flags win over file values, file values over defaults.
struct RunConfig {
    std::string toplevel;          // alu | i2c | adc
    std::string test_filter = "*"; // `module` in the config file
    uint64_t transactions = 0;     // 0 = per-design default (20000 / 1 / 210)
    uint64_t seed = 1;
    std::string cov_out = "coverage"; // prefix: writes <prefix>.yaml/.txt
    std::string vcd_out;              // empty = no waveform
    std::string bench_out = "bench.csv";
    bool fail_fast = false;
    uint64_t horizon_ps = UINT64_MAX;
    std::string cov_model_file; // user coverage model, built-in when empty
    std::string mem_init_file;  // i2c memory preload image
    std::string mem_dump_file;  // i2c memory dump destination
    bool bench = false;
    uint64_t repeats = 5;
};

/// Integer values accept plain decimals or textual vector literals
/// (`32'hDEADBEEF`); times accept ps/ns/us/ms/s suffixes (plain = ps).
uint64_t parse_int_value(const std::string &value, const std::string &key);
uint64_t parse_time_value(const std::string &value, const std::string &key);
bool parse_bool_value(const std::string &value, const std::string &key);

void apply_config_entry(RunConfig &cfg, const std::string &key,
                        const std::string &value);
RunConfig parse_config_text(const std::string &text);
RunConfig parse_config_file(const std::string &path);

/// Checks the final merged configuration (toplevel, counts, repeats).
void validate_config(const RunConfig &cfg);

/// The per-design default transaction counts.
uint64_t default_transactions(const std::string &toplevel);

} // namespace covesim::cli
