// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covesim/coverage.hpp"
#include "covesim/crv.hpp"
#include "covesim/dut.hpp"
#include "covesim/kernel.hpp"

namespace covesim::tb {

class RegistryError : public Error {
public:
    using Error::Error;
};
class BfmStateError : public Error {
public:
    using Error::Error;
};
class TestFailure : public Error {
public:
    using Error::Error;
};

// --- reference models (independent of the dut implementations) ---

/// Host-arithmetic ALU model; shares no code with dut::alu_eval.
uint32_t alu_ref(int32_t a, int32_t b, uint8_t op);

/// Separately coded quantizer with the same transfer law as the ADC core.
uint16_t adc_ref(double volts);

// --- scoreboard ---

/// Queue-compare checker: the reference model pushes expected transactions,
/// every DUT response is checked against the queue head exactly once.
/// Mismatches fail the owning test with values and simulation time.
template <typename Expected, typename Actual = Expected>
class Scoreboard {
public:
    using Compare = std::function<std::optional<std::string>(const Expected &,
                                                             const Actual &)>;
    using Describe = std::function<std::string(const Actual &)>;

    Scoreboard(std::string name, Compare cmp, Describe describe)
        : name_(std::move(name)), cmp_(std::move(cmp)),
          describe_(std::move(describe)) {}

    void expect(Expected e) { queue_.push_back(std::move(e)); }

    void check(const Actual &actual, uint64_t time_ps) {
        ++compared_;
        if (queue_.empty()) {
            fail(name_ + ": response " + describe_(actual) +
                 " with no expected transaction time=" +
                 std::to_string(time_ps) + " ps");
        }
        Expected exp = std::move(queue_.front());
        queue_.pop_front();
        if (auto msg = cmp_(exp, actual)) {
            fail(name_ + ": " + *msg + " time=" + std::to_string(time_ps) +
                 " ps");
        }
    }

    uint64_t compared() const { return compared_; }
    uint64_t mismatches() const { return mismatches_; }
    const std::vector<std::string> &mismatch_log() const { return log_; }
    bool pending() const { return !queue_.empty(); }

private:
    [[noreturn]] void fail(std::string msg) {
        ++mismatches_;
        log_.push_back(msg);
        throw TestFailure(msg);
    }

    std::string name_;
    Compare cmp_;
    Describe describe_;
    std::deque<Expected> queue_;
    uint64_t compared_ = 0;
    uint64_t mismatches_ = 0;
    std::vector<std::string> log_;
};

// --- I2C master bus functional model ---

struct I2cBfmConfig {
    sim::SimTime bit_period = sim::nanoseconds(2500); // 400 kHz
    uint8_t device_select = 0;                        // A2 A1 A0
};

/// Transaction-level master for the EEPROM-style slave. Open-drain only:
/// the master drives SDA/SCL low or releases them; SCL is generated here
/// exclusively (no clock stretching). When a CoverageDb is attached the
/// protocol condition points (c_start, c_stop, c_ack, c_nack, c_write,
/// c_read, c_repeated_start) are sampled as the conditions occur.
class I2cMasterBfm {
public:
    I2cMasterBfm(sim::Kernel &k, sim::SignalId sda, sim::SignalId scl,
                 I2cBfmConfig cfg = {}, cov::CoverageDb *cov = nullptr);

    // bit-level primitives
    sim::Task<> start();
    sim::Task<> repeated_start();
    sim::Task<> stop();
    sim::Task<bool> write_byte(uint8_t b);
    sim::Task<uint8_t> read_byte(bool send_ack);

    // composed memory transactions
    sim::Task<> byte_write(uint8_t addr, uint8_t data);
    sim::Task<> page_write(uint8_t addr, std::vector<uint8_t> data);
    sim::Task<uint8_t> random_read(uint8_t addr);
    sim::Task<std::vector<uint8_t>> sequential_read(uint8_t addr, size_t n);
    /// Directed write-protect sequence: address and word-address bytes must
    /// ACK, the data byte must NACK, memory stays untouched.
    sim::Task<> write_protected_attempt(uint8_t addr, uint8_t data);

    bool bus_idle() const { return bus_idle_; }

private:
    uint8_t ctrl_byte(bool read) const;
    void drive_sda_low();
    void release_sda();
    void drive_scl_low();
    void release_scl();
    void sample(const char *label, int64_t value);

    sim::Kernel &k_;
    sim::SignalId sda_, scl_;
    sim::WriterId writer_;
    sim::SimTime q_; // quarter bit period
    uint8_t select_;
    cov::CoverageDb *cov_;
    bool bus_idle_ = true;
};

// --- test registry ---

struct TbOptions {
    uint64_t transactions = 0; // 0 = the test's default
    uint64_t seed = 1;
    std::string vcd_path;          // empty = no waveform
    bool initialize_inputs = true; // ALU: drive a/b/op before the first cycle
    bool i2c_pullup = true;        // attach the SDA/SCL pull-up wrapper
    bool i2c_page_wrap = true;
    std::optional<std::array<uint8_t, dut::kI2cMemBytes>> mem_init;
    uint64_t horizon_ps = UINT64_MAX;
    bool fail_fast = false;
};

struct TestOutcome {
    std::string name;
    bool passed = false;
    std::string message;
    sim::RunReport report;
    std::optional<std::array<uint8_t, dut::kI2cMemBytes>> i2c_memory;
};

using TestRunner =
    std::function<TestOutcome(const TbOptions &, cov::CoverageDb &)>;

struct TestCase {
    std::string name;
    std::string toplevel; // alu | i2c | adc
    uint64_t default_transactions = 1;
    std::vector<std::string> tags;
    TestRunner run;
};

/// Shell-style glob with * and ? over test names.
bool glob_match(std::string_view pattern, std::string_view text);

class TestRegistry {
public:
    void register_test(TestCase tc); // RegistryError on duplicate names
    std::vector<const TestCase *> discover() const;
    std::vector<const TestCase *> filter(std::string_view glob) const;
    const TestCase *find(std::string_view name) const;

    /// The five built-in testbenches.
    static const TestRegistry &builtin();

private:
    std::vector<TestCase> tests_;
};

// --- direct entry points ---

TestOutcome run_alu_test(uint64_t transactions, const TbOptions &opts,
                         cov::CoverageDb &db);
TestOutcome run_adc_test(uint64_t transactions, const TbOptions &opts,
                         cov::CoverageDb &db);
/// Runs the three I2C tests back to back against one coverage database.
std::vector<TestOutcome> run_i2c_tests(const TbOptions &opts,
                                       cov::CoverageDb &db);

/// Randomized operation soak with a shadow memory model compared against
/// the slave memory at every STOP.
TestOutcome run_i2c_soak(uint64_t operations, const TbOptions &opts);

} // namespace covesim::tb
