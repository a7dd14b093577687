// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/tb.hpp"

namespace covesim::tb {

namespace {

std::optional<std::string> compare_adc(const uint16_t &expected,
                                       const LogicVector &actual) {
    if (!actual.is_clean())
        return "X-valued output " + actual.str();
    if (actual.to_unsigned() != expected)
        return "expected " + LogicVector::from_unsigned(expected, 16).str() +
               ", got " + actual.str();
    return std::nullopt;
}

sim::Task<> adc_body(sim::Kernel &k, dut::AdcDesign d, sim::SignalId txn_sig,
                     uint64_t n, uint64_t seed, cov::CoverageDb &db,
                     Scoreboard<uint16_t, LogicVector> &sb) {
    crv::Rng rng(seed);
    for (uint64_t i = 0; i < n; ++i) {
        double volts = dut::kAdcVMin +
                       (dut::kAdcVMax - dut::kAdcVMin) * rng.unit();
        d.drive_voltage(k, volts);
        k.write(txn_sig, i & 0xFFFFFFFFull);
        co_await k.delay(sim::nanoseconds(20));

        sb.expect(adc_ref(volts));
        LogicVector out = k.read(d.digital_out);
        sb.check(out, k.now().ps);
        db.sample({{"analog_in_tb", static_cast<int64_t>(out.to_unsigned())}});
        k.count_transaction();
    }
}

} // namespace

TestOutcome run_adc_test(uint64_t transactions, const TbOptions &opts,
                         cov::CoverageDb &db) {
    sim::Kernel k({.fail_fast = opts.fail_fast});
    auto d = dut::AdcDesign::create(k, "adc");
    auto txn_sig = k.create_signal("tb.txn", 32);
    if (!opts.vcd_path.empty()) k.dump_vcd(opts.vcd_path);

    db.set_seed(opts.seed);
    Scoreboard<uint16_t, LogicVector> sb(
        "adc_scoreboard", compare_adc,
        [](const LogicVector &v) { return v.str(); });

    uint64_t seed = crv::Rng::derive(opts.seed, "adc_ramp_random");
    k.spawn_test("adc_ramp_random",
                 adc_body(k, d, txn_sig, transactions, seed, db, sb));

    TestOutcome out;
    out.name = "adc_ramp_random";
    out.report = k.run(sim::SimTime{opts.horizon_ps});
    out.passed = out.report.all_passed();
    if (!out.passed && !out.report.tests.empty())
        out.message = out.report.tests[0].message;
    return out;
}

namespace detail {

TestCase make_adc_testcase() {
    TestCase tc;
    tc.name = "adc_ramp_random";
    tc.toplevel = "adc";
    tc.default_transactions = 210;
    tc.tags = {"adc", "random"};
    tc.run = [](const TbOptions &opts, cov::CoverageDb &db) {
        uint64_t n = opts.transactions ? opts.transactions : 210;
        return run_adc_test(n, opts, db);
    };
    return tc;
}

} // namespace detail

} // namespace covesim::tb
