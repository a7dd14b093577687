// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/tb.hpp"

namespace covesim::tb {

// --- bus functional model ---

I2cMasterBfm::I2cMasterBfm(sim::Kernel &k, sim::SignalId sda, sim::SignalId scl,
                           I2cBfmConfig cfg, cov::CoverageDb *cov)
    : k_(k), sda_(sda), scl_(scl), writer_(k.new_writer()),
      q_(cfg.bit_period / 4), select_(cfg.device_select), cov_(cov) {
    // open-drain idle: both lines released, the pull-up supplies the high
    k_.release(sda_, writer_);
    k_.release(scl_, writer_);
}

uint8_t I2cMasterBfm::ctrl_byte(bool read) const {
    auto device = static_cast<uint8_t>((dut::kI2cAddressPrefix << 3) |
                                       (select_ & 7));
    return static_cast<uint8_t>((device << 1) | (read ? 1 : 0));
}

void I2cMasterBfm::drive_sda_low() {
    k_.write(sda_, LogicVector(1, Logic::Zero), writer_);
}
void I2cMasterBfm::release_sda() { k_.release(sda_, writer_); }
void I2cMasterBfm::drive_scl_low() {
    k_.write(scl_, LogicVector(1, Logic::Zero), writer_);
}
void I2cMasterBfm::release_scl() { k_.release(scl_, writer_); }

void I2cMasterBfm::sample(const char *label, int64_t value) {
    if (cov_) cov_->sample({{label, value}});
}

sim::Task<> I2cMasterBfm::start() {
    if (!bus_idle_)
        throw BfmStateError("start() requires an idle bus");
    co_await k_.delay(q_); // idle hold, lets the pulled-up bus settle high
    drive_sda_low();       // SDA falls while SCL is high
    sample("c_start", 1);
    co_await k_.delay(q_);
    drive_scl_low();
    co_await k_.delay(q_);
    bus_idle_ = false;
}

sim::Task<> I2cMasterBfm::repeated_start() {
    if (bus_idle_)
        throw BfmStateError("repeated_start() requires an active transaction");
    release_sda(); // data line may move while SCL is low
    co_await k_.delay(q_);
    release_scl();
    co_await k_.delay(q_);
    drive_sda_low(); // SDA falls while SCL is high
    sample("c_start", 1);
    co_await k_.delay(q_);
    drive_scl_low();
    co_await k_.delay(q_);
}

sim::Task<> I2cMasterBfm::stop() {
    if (bus_idle_)
        throw BfmStateError("stop() requires an active transaction");
    drive_sda_low();
    co_await k_.delay(q_);
    release_scl();
    co_await k_.delay(q_);
    release_sda(); // SDA rises while SCL is high
    sample("c_stop", 1);
    co_await k_.delay(q_);
    bus_idle_ = true;
}

sim::Task<bool> I2cMasterBfm::write_byte(uint8_t b) {
    if (bus_idle_)
        throw BfmStateError("write_byte() requires an active transaction");
    for (int i = 7; i >= 0; --i) {
        if ((b >> i) & 1)
            release_sda();
        else
            drive_sda_low();
        co_await k_.delay(q_);
        release_scl();
        co_await k_.delay(q_ * 2); // slave samples on the rising edge
        drive_scl_low();
        co_await k_.delay(q_);
    }
    // acknowledge slot: release and sample mid-high
    release_sda();
    co_await k_.delay(q_);
    release_scl();
    co_await k_.delay(q_);
    Logic ack_bit = k_.read_bit(sda_);
    co_await k_.delay(q_);
    drive_scl_low();
    co_await k_.delay(q_);

    bool ack = ack_bit == Logic::Zero;
    if (ack)
        sample("c_ack", 1);
    else if (ack_bit == Logic::One)
        sample("c_nack", 1); // a driven/pulled high is a protocol NACK
    co_return ack;
}

sim::Task<uint8_t> I2cMasterBfm::read_byte(bool send_ack) {
    if (bus_idle_)
        throw BfmStateError("read_byte() requires an active transaction");
    release_sda(); // the slave owns the data line for this byte
    uint8_t value = 0;
    for (int i = 0; i < 8; ++i) {
        co_await k_.delay(q_); // low phase: slave set the bit on the last fall
        release_scl();
        co_await k_.delay(q_);
        Logic bit = k_.read_bit(sda_);
        if (bit != Logic::Zero && bit != Logic::One)
            throw TestFailure("SDA undefined while reading bit " +
                              std::to_string(i) + " time=" +
                              std::to_string(k_.now().ps) + " ps");
        value = static_cast<uint8_t>((value << 1) | (bit == Logic::One));
        co_await k_.delay(q_);
        drive_scl_low();
        co_await k_.delay(q_);
    }
    // master acknowledge slot
    if (send_ack)
        drive_sda_low();
    else
        release_sda();
    co_await k_.delay(q_);
    release_scl();
    co_await k_.delay(q_ * 2);
    drive_scl_low();
    co_await k_.delay(q_);
    release_sda();
    co_return value;
}

sim::Task<> I2cMasterBfm::byte_write(uint8_t addr, uint8_t data) {
    if (addr >= dut::kI2cMemBytes)
        throw RangeError("byte_write: address out of range");
    co_await start();
    if (!co_await write_byte(ctrl_byte(false)))
        throw TestFailure("byte_write: address byte NACKed");
    if (!co_await write_byte(addr))
        throw TestFailure("byte_write: word address NACKed");
    if (!co_await write_byte(data))
        throw TestFailure("byte_write: data byte 0 NACKed");
    co_await stop();
    sample("c_write", 1);
    sample("c_repeated_start", 0);
    k_.count_transaction();
}

sim::Task<> I2cMasterBfm::page_write(uint8_t addr, std::vector<uint8_t> data) {
    if (addr >= dut::kI2cMemBytes)
        throw RangeError("page_write: address out of range");
    if (data.empty() || data.size() > dut::kI2cPageBytes)
        throw RangeError("page_write: length must be 1.." +
                         std::to_string(dut::kI2cPageBytes));
    co_await start();
    if (!co_await write_byte(ctrl_byte(false)))
        throw TestFailure("page_write: address byte NACKed");
    if (!co_await write_byte(addr))
        throw TestFailure("page_write: word address NACKed");
    for (size_t i = 0; i < data.size(); ++i)
        if (!co_await write_byte(data[i]))
            throw TestFailure("page_write: data byte " + std::to_string(i) +
                              " NACKed");
    co_await stop();
    sample("c_write", 1);
    sample("c_repeated_start", 0);
    k_.count_transaction();
}

sim::Task<uint8_t> I2cMasterBfm::random_read(uint8_t addr) {
    if (addr >= dut::kI2cMemBytes)
        throw RangeError("random_read: address out of range");
    co_await start();
    if (!co_await write_byte(ctrl_byte(false)))
        throw TestFailure("random_read: address byte NACKed");
    if (!co_await write_byte(addr))
        throw TestFailure("random_read: word address NACKed");
    co_await repeated_start();
    if (!co_await write_byte(ctrl_byte(true)))
        throw TestFailure("random_read: read address byte NACKed");
    uint8_t value = co_await read_byte(false); // NACK terminates the read
    co_await stop();
    sample("c_read", 1);
    sample("c_repeated_start", 1);
    k_.count_transaction();
    co_return value;
}

sim::Task<std::vector<uint8_t>> I2cMasterBfm::sequential_read(uint8_t addr,
                                                              size_t n) {
    if (addr >= dut::kI2cMemBytes)
        throw RangeError("sequential_read: address out of range");
    if (n == 0) throw RangeError("sequential_read: need at least one byte");
    co_await start();
    if (!co_await write_byte(ctrl_byte(false)))
        throw TestFailure("sequential_read: address byte NACKed");
    if (!co_await write_byte(addr))
        throw TestFailure("sequential_read: word address NACKed");
    co_await repeated_start();
    if (!co_await write_byte(ctrl_byte(true)))
        throw TestFailure("sequential_read: read address byte NACKed");
    std::vector<uint8_t> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i)
        out.push_back(co_await read_byte(i + 1 < n)); // ACK all but the last
    co_await stop();
    sample("c_read", 1);
    sample("c_repeated_start", 1);
    k_.count_transaction();
    co_return out;
}

sim::Task<> I2cMasterBfm::write_protected_attempt(uint8_t addr, uint8_t data) {
    if (addr >= dut::kI2cMemBytes)
        throw RangeError("write_protected_attempt: address out of range");
    co_await start();
    if (!co_await write_byte(ctrl_byte(false)))
        throw TestFailure("write_protected_attempt: address byte NACKed");
    if (!co_await write_byte(addr))
        throw TestFailure("write_protected_attempt: word address NACKed");
    if (co_await write_byte(data))
        throw TestFailure(
            "write_protected_attempt: data byte was ACKed despite Wp");
    co_await stop();
    sample("c_write", 1);
    sample("c_repeated_start", 0);
    k_.count_transaction();
}

// --- testbenches ---

namespace {

sim::Task<> i2c_byte_write_body(sim::Kernel &k, dut::I2cSlaveDesign &slave,
                                I2cMasterBfm &bfm, cov::CoverageDb &db,
                                uint64_t seed, uint64_t rounds) {
    crv::Rng rng(seed);
    sim::SignalId op_sig = k.signal("tb.op");
    uint64_t opn = 0;
    for (uint64_t r = 0; r < rounds; ++r) {
        for (int j = 0; j < 8; ++j) {
            k.write(op_sig, opn++ & 0xFFFFFFFFull);
            auto addr = static_cast<uint8_t>(rng.below(dut::kI2cMemBytes));
            auto data = static_cast<uint8_t>(rng.below(256));
            co_await bfm.byte_write(addr, data);
            uint8_t got = co_await bfm.random_read(addr);
            if (got != data)
                throw TestFailure("byte write/read mismatch at addr " +
                                  std::to_string(addr) + ": wrote " +
                                  std::to_string(data) + ", read " +
                                  std::to_string(got) + " time=" +
                                  std::to_string(k.now().ps) + " ps");
            db.sample({{"c_mem_addr", addr}, {"c_mem_data", data}});
        }

        // Directed write-protect transaction: the only stimulus that can
        // produce a NACK from this slave.
        k.write(op_sig, opn++ & 0xFFFFFFFFull);
        auto addr = static_cast<uint8_t>(rng.below(dut::kI2cMemBytes));
        uint8_t keep = slave.memory()[addr];
        k.write(slave.wp, uint64_t{1});
        co_await k.settle();
        co_await bfm.write_protected_attempt(addr,
                                             static_cast<uint8_t>(~keep));
        k.write(slave.wp, uint64_t{0});
        co_await k.settle();
        uint8_t got = co_await bfm.random_read(addr);
        if (got != keep || slave.memory()[addr] != keep)
            throw TestFailure("write protect failed to hold at addr " +
                              std::to_string(addr));
    }
}

sim::Task<> i2c_page_write_random_body(sim::Kernel &k,
                                       dut::I2cSlaveDesign &slave,
                                       I2cMasterBfm &bfm, cov::CoverageDb &db,
                                       uint64_t seed, uint64_t rounds) {
    (void)slave;
    crv::Rng rng(seed);
    sim::SignalId op_sig = k.signal("tb.op");
    uint64_t opn = 0;
    for (uint64_t r = 0; r < rounds; ++r) {
        for (uint8_t page = 0; page < dut::kI2cMemBytes / dut::kI2cPageBytes;
             ++page) {
            k.write(op_sig, opn++ & 0xFFFFFFFFull);
            auto base = static_cast<uint8_t>(page * dut::kI2cPageBytes);
            std::vector<uint8_t> data(dut::kI2cPageBytes);
            for (auto &b : data) b = static_cast<uint8_t>(rng.below(256));
            co_await bfm.page_write(base, data);

            auto off = static_cast<uint8_t>(rng.below(dut::kI2cPageBytes));
            uint8_t got = co_await bfm.random_read(
                static_cast<uint8_t>(base + off));
            if (got != data[off])
                throw TestFailure("page write/random read mismatch at addr " +
                                  std::to_string(base + off) + ": wrote " +
                                  std::to_string(data[off]) + ", read " +
                                  std::to_string(got));
            db.sample({{"c_mem_addr", base + off}, {"c_mem_data", got}});
        }
    }
}

sim::Task<> i2c_page_write_sequential_body(sim::Kernel &k,
                                           dut::I2cSlaveDesign &slave,
                                           I2cMasterBfm &bfm,
                                           cov::CoverageDb &db, uint64_t seed,
                                           uint64_t rounds) {
    (void)slave;
    crv::Rng rng(seed);
    sim::SignalId op_sig = k.signal("tb.op");
    uint64_t opn = 0;
    for (uint64_t r = 0; r < rounds; ++r) {
        std::array<uint8_t, dut::kI2cMemBytes> image{};
        for (auto &b : image) b = static_cast<uint8_t>(rng.below(256));
        for (uint8_t page = 0; page < dut::kI2cMemBytes / dut::kI2cPageBytes;
             ++page) {
            k.write(op_sig, opn++ & 0xFFFFFFFFull);
            auto base = static_cast<uint8_t>(page * dut::kI2cPageBytes);
            std::vector<uint8_t> chunk(image.begin() + base,
                                       image.begin() + base +
                                           dut::kI2cPageBytes);
            co_await bfm.page_write(base, chunk);
        }
        k.write(op_sig, opn++ & 0xFFFFFFFFull);
        auto got = co_await bfm.sequential_read(0, dut::kI2cMemBytes);
        for (size_t i = 0; i < dut::kI2cMemBytes; ++i) {
            if (got[i] != image[i])
                throw TestFailure("sequential read mismatch at addr " +
                                  std::to_string(i) + ": wrote " +
                                  std::to_string(image[i]) + ", read " +
                                  std::to_string(got[i]));
            db.sample({{"c_mem_addr", static_cast<int64_t>(i)},
                       {"c_mem_data", image[i]}});
        }
    }
}

using I2cBody = sim::Task<> (*)(sim::Kernel &, dut::I2cSlaveDesign &,
                                I2cMasterBfm &, cov::CoverageDb &, uint64_t,
                                uint64_t);

TestOutcome run_i2c_case(const std::string &name, const TbOptions &opts,
                         cov::CoverageDb &db, I2cBody body) {
    sim::Kernel k({.fail_fast = opts.fail_fast});
    auto slave = dut::I2cSlaveDesign::create(
        k, "i2c", {.page_wrap = opts.i2c_page_wrap});
    if (opts.i2c_pullup) dut::attach_i2c_pullups(k, *slave);
    k.write(slave->a0, uint64_t{0});
    k.write(slave->a1, uint64_t{0});
    k.write(slave->a2, uint64_t{0});
    k.write(slave->wp, uint64_t{0});
    if (opts.mem_init) slave->preload(*opts.mem_init);

    k.create_signal("tb.op", 32); // testbench-side marker in the waveform
    I2cMasterBfm bfm(k, slave->sda, slave->scl, {}, &db);
    if (!opts.vcd_path.empty()) k.dump_vcd(opts.vcd_path);
    db.set_seed(opts.seed);

    uint64_t rounds = opts.transactions ? opts.transactions : 1;
    uint64_t seed = crv::Rng::derive(opts.seed, name);
    k.spawn_test(name, body(k, *slave, bfm, db, seed, rounds));

    TestOutcome out;
    out.name = name;
    out.report = k.run(sim::SimTime{opts.horizon_ps});
    out.passed = out.report.all_passed();
    if (!out.passed && !out.report.tests.empty())
        out.message = out.report.tests[0].message;
    out.i2c_memory = slave->memory();
    return out;
}

} // namespace

std::vector<TestOutcome> run_i2c_tests(const TbOptions &opts,
                                       cov::CoverageDb &db) {
    std::vector<TestOutcome> out;
    out.push_back(run_i2c_case("i2c_byte_write_random_read", opts, db,
                               i2c_byte_write_body));
    out.push_back(run_i2c_case("i2c_page_write_random_read", opts, db,
                               i2c_page_write_random_body));
    out.push_back(run_i2c_case("i2c_page_write_sequential_read", opts, db,
                               i2c_page_write_sequential_body));
    return out;
}

// --- randomized soak with shadow memory ---

namespace {

sim::Task<> i2c_soak_body(sim::Kernel &k, dut::I2cSlaveDesign &slave,
                          I2cMasterBfm &bfm, uint64_t seed, uint64_t n_ops,
                          bool page_wrap,
                          std::array<uint8_t, dut::kI2cMemBytes> shadow) {
    crv::Rng rng(seed);
    sim::SignalId op_sig = k.signal("tb.op");
    auto page_index = [page_wrap](uint8_t base, size_t i) {
        if (page_wrap)
            return static_cast<size_t>((base & ~(dut::kI2cPageBytes - 1)) |
                                       ((base + i) % dut::kI2cPageBytes));
        return (static_cast<size_t>(base) + i) % dut::kI2cMemBytes;
    };

    for (uint64_t n = 0; n < n_ops; ++n) {
        k.write(op_sig, n & 0xFFFFFFFFull);
        uint64_t pick = rng.below(100);
        auto addr = static_cast<uint8_t>(rng.below(dut::kI2cMemBytes));
        if (pick < 30) {
            auto data = static_cast<uint8_t>(rng.below(256));
            co_await bfm.byte_write(addr, data);
            shadow[page_index(addr, 0)] = data;
        } else if (pick < 55) {
            size_t len = 1 + rng.below(dut::kI2cPageBytes);
            std::vector<uint8_t> data(len);
            for (auto &b : data) b = static_cast<uint8_t>(rng.below(256));
            co_await bfm.page_write(addr, data);
            for (size_t i = 0; i < len; ++i)
                shadow[page_index(addr, i)] = data[i];
        } else if (pick < 75) {
            uint8_t got = co_await bfm.random_read(addr);
            if (got != shadow[addr])
                throw TestFailure("soak random_read mismatch at addr " +
                                  std::to_string(addr) + ": shadow " +
                                  std::to_string(shadow[addr]) + ", read " +
                                  std::to_string(got));
        } else if (pick < 95) {
            size_t len = 1 + rng.below(dut::kI2cMemBytes);
            auto got = co_await bfm.sequential_read(addr, len);
            for (size_t i = 0; i < len; ++i) {
                uint8_t want = shadow[(addr + i) % dut::kI2cMemBytes];
                if (got[i] != want)
                    throw TestFailure("soak sequential_read mismatch at addr " +
                                      std::to_string((addr + i) %
                                                     dut::kI2cMemBytes));
            }
        } else {
            auto data = static_cast<uint8_t>(rng.below(256));
            k.write(slave.wp, uint64_t{1});
            co_await k.settle();
            co_await bfm.write_protected_attempt(addr, data);
            k.write(slave.wp, uint64_t{0});
            co_await k.settle();
        }

        // shadow-model hook: the slave memory must agree at every STOP
        if (slave.memory() != shadow)
            throw TestFailure("shadow memory diverged after operation " +
                              std::to_string(n) + " time=" +
                              std::to_string(k.now().ps) + " ps");
    }
}

} // namespace

TestOutcome run_i2c_soak(uint64_t operations, const TbOptions &opts) {
    sim::Kernel k({.fail_fast = opts.fail_fast});
    auto slave = dut::I2cSlaveDesign::create(
        k, "i2c", {.page_wrap = opts.i2c_page_wrap});
    if (opts.i2c_pullup) dut::attach_i2c_pullups(k, *slave);
    k.write(slave->a0, uint64_t{0});
    k.write(slave->a1, uint64_t{0});
    k.write(slave->a2, uint64_t{0});
    k.write(slave->wp, uint64_t{0});

    std::array<uint8_t, dut::kI2cMemBytes> shadow{};
    if (opts.mem_init) {
        slave->preload(*opts.mem_init);
        shadow = *opts.mem_init;
    }

    k.create_signal("tb.op", 32);
    I2cMasterBfm bfm(k, slave->sda, slave->scl, {}, nullptr);
    if (!opts.vcd_path.empty()) k.dump_vcd(opts.vcd_path);

    uint64_t seed = crv::Rng::derive(opts.seed, "i2c_soak");
    k.spawn_test("i2c_soak", i2c_soak_body(k, *slave, bfm, seed, operations,
                                           opts.i2c_page_wrap, shadow));

    TestOutcome out;
    out.name = "i2c_soak";
    out.report = k.run(sim::SimTime{opts.horizon_ps});
    out.passed = out.report.all_passed();
    if (!out.passed && !out.report.tests.empty())
        out.message = out.report.tests[0].message;
    out.i2c_memory = slave->memory();
    return out;
}

namespace detail {

TestCase make_i2c_byte_write_testcase() {
    TestCase tc;
    tc.name = "i2c_byte_write_random_read";
    tc.toplevel = "i2c";
    tc.default_transactions = 1;
    tc.tags = {"i2c", "bfm"};
    tc.run = [](const TbOptions &opts, cov::CoverageDb &db) {
        return run_i2c_case("i2c_byte_write_random_read", opts, db,
                            i2c_byte_write_body);
    };
    return tc;
}

TestCase make_i2c_page_write_random_testcase() {
    TestCase tc;
    tc.name = "i2c_page_write_random_read";
    tc.toplevel = "i2c";
    tc.default_transactions = 1;
    tc.tags = {"i2c", "bfm"};
    tc.run = [](const TbOptions &opts, cov::CoverageDb &db) {
        return run_i2c_case("i2c_page_write_random_read", opts, db,
                            i2c_page_write_random_body);
    };
    return tc;
}

TestCase make_i2c_page_write_sequential_testcase() {
    TestCase tc;
    tc.name = "i2c_page_write_sequential_read";
    tc.toplevel = "i2c";
    tc.default_transactions = 1;
    tc.tags = {"i2c", "bfm"};
    tc.run = [](const TbOptions &opts, cov::CoverageDb &db) {
        return run_i2c_case("i2c_page_write_sequential_read", opts, db,
                            i2c_page_write_sequential_body);
    };
    return tc;
}

} // namespace detail

} // namespace covesim::tb
