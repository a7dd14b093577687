// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/config.hpp"

#include <fstream>
#include <sstream>

#include "covesim/logic.hpp"

namespace covesim::cli {

namespace {

std::string trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

uint64_t parse_int_value(const std::string &value, const std::string &key) {
    if (value.empty())
        throw ConfigError("key '" + key + "': expected an integer, got nothing");
    if (value.find('\'') != std::string::npos) {
        try {
            return LogicVector::parse(value).to_unsigned();
        } catch (const Error &e) {
            throw ConfigError("key '" + key +
                              "': bad vector literal: " + e.what());
        }
    }
    uint64_t out = 0;
    for (char c : value) {
        if (c < '0' || c > '9')
            throw ConfigError("key '" + key + "': expected an integer, got '" +
                              value + "'");
        uint64_t next = out * 10 + static_cast<uint64_t>(c - '0');
        if (next / 10 != out)
            throw ConfigError("key '" + key + "': integer overflows 64 bits");
        out = next;
    }
    return out;
}

uint64_t parse_time_value(const std::string &value, const std::string &key) {
    static const std::pair<std::string, uint64_t> kUnits[] = {
        {"ps", 1ull},
        {"ns", 1000ull},
        {"us", 1000000ull},
        {"ms", 1000000000ull},
        {"s", 1000000000000ull},
    };
    for (const auto &[suffix, scale] : kUnits) {
        if (value.size() > suffix.size() &&
            value.compare(value.size() - suffix.size(), suffix.size(),
                          suffix) == 0) {
            std::string digits = value.substr(0, value.size() - suffix.size());
            if (digits.find_first_not_of("0123456789") == std::string::npos &&
                !digits.empty())
                return parse_int_value(digits, key) * scale;
        }
    }
    return parse_int_value(value, key); // plain picoseconds
}

bool parse_bool_value(const std::string &value, const std::string &key) {
    if (value == "true" || value == "1" || value == "yes" || value == "on")
        return true;
    if (value == "false" || value == "0" || value == "no" || value == "off")
        return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + value +
                      "'");
}

void apply_config_entry(RunConfig &cfg, const std::string &key,
                        const std::string &value) {
    if (key == "toplevel") cfg.toplevel = value;
    else if (key == "module") cfg.test_filter = value;
    else if (key == "transactions") {
        cfg.transactions = parse_int_value(value, key);
        if (cfg.transactions == 0)
            throw ConfigError("transactions must be at least 1");
    }
    else if (key == "seed") cfg.seed = parse_int_value(value, key);
    else if (key == "cov_out") cfg.cov_out = value;
    else if (key == "vcd_out") cfg.vcd_out = value;
    else if (key == "bench_out") cfg.bench_out = value;
    else if (key == "fail_fast") cfg.fail_fast = parse_bool_value(value, key);
    else if (key == "horizon") cfg.horizon_ps = parse_time_value(value, key);
    else if (key == "cov_model") cfg.cov_model_file = value;
    else if (key == "mem_init") cfg.mem_init_file = value;
    else if (key == "mem_dump") cfg.mem_dump_file = value;
    else if (key == "repeats") cfg.repeats = parse_int_value(value, key);
    else throw ConfigError("unknown config key: '" + key + "'");
}

RunConfig parse_config_text(const std::string &text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key");
        apply_config_entry(cfg, key, value);
    }
    return cfg;
}

RunConfig parse_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in.is_open()) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

uint64_t default_transactions(const std::string &toplevel) {
    if (toplevel == "alu") return 20000;
    if (toplevel == "adc") return 210;
    return 1; // i2c: one pass of each scenario
}

void validate_config(const RunConfig &cfg) {
    if (cfg.toplevel != "alu" && cfg.toplevel != "i2c" && cfg.toplevel != "adc")
        throw ConfigError("toplevel must be one of alu, i2c, adc; got '" +
                          cfg.toplevel + "'");
    if (!cfg.mem_init_file.empty() && cfg.toplevel != "i2c")
        throw ConfigError("mem_init requires toplevel = i2c");
    if (!cfg.mem_dump_file.empty() && cfg.toplevel != "i2c")
        throw ConfigError("mem_dump requires toplevel = i2c");
    if (cfg.repeats < 3)
        throw ConfigError("repeats must be at least 3, got " +
                          std::to_string(cfg.repeats));
}

} // namespace covesim::cli
