// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/tb.hpp"

#include <cmath>

namespace covesim::tb {

uint32_t alu_ref(int32_t a, int32_t b, uint8_t op) {
    auto ua = static_cast<uint32_t>(a);
    auto ub = static_cast<uint32_t>(b);
    switch (op & 7) {
    case 0: return ua + ub;
    case 1: return ua - ub;
    case 2: return ~ua;
    case 3: return ua & ub;
    case 4: return ua | ub;
    case 5: return ua ^ ub;
    case 6: return ~(ua & ub);
    case 7: return ~(ua | ub);
    }
    return 0;
}

uint16_t adc_ref(double volts) {
    double v = volts;
    if (v < -10.0) v = -10.0;
    if (v > 10.0) v = 10.0;
    double scaled = (v + 10.0) * (65535.0 / 20.0);
    double fl = std::floor(scaled);
    long long code = static_cast<long long>(fl);
    if (scaled - fl >= 0.5) ++code; // non-negative domain: half-up
    if (code < 0) code = 0;
    if (code > 65535) code = 65535;
    return static_cast<uint16_t>(code);
}

bool glob_match(std::string_view pattern, std::string_view text) {
    if (pattern.empty()) return text.empty();
    if (pattern[0] == '*')
        return glob_match(pattern.substr(1), text) ||
               (!text.empty() && glob_match(pattern, text.substr(1)));
    if (text.empty()) return false;
    if (pattern[0] == '?' || pattern[0] == text[0])
        return glob_match(pattern.substr(1), text.substr(1));
    return false;
}

void TestRegistry::register_test(TestCase tc) {
    for (const auto &t : tests_)
        if (t.name == tc.name)
            throw RegistryError("duplicate test name: " + tc.name);
    tests_.push_back(std::move(tc));
}

std::vector<const TestCase *> TestRegistry::discover() const {
    std::vector<const TestCase *> out;
    for (const auto &t : tests_) out.push_back(&t);
    return out;
}

std::vector<const TestCase *> TestRegistry::filter(std::string_view glob) const {
    std::vector<const TestCase *> out;
    for (const auto &t : tests_)
        if (glob_match(glob, t.name)) out.push_back(&t);
    return out;
}

const TestCase *TestRegistry::find(std::string_view name) const {
    for (const auto &t : tests_)
        if (t.name == name) return &t;
    return nullptr;
}

namespace detail {
// defined alongside each testbench
TestCase make_alu_testcase();
TestCase make_i2c_byte_write_testcase();
TestCase make_i2c_page_write_random_testcase();
TestCase make_i2c_page_write_sequential_testcase();
TestCase make_adc_testcase();
} // namespace detail

const TestRegistry &TestRegistry::builtin() {
    static const TestRegistry reg = [] {
        TestRegistry r;
        r.register_test(detail::make_alu_testcase());
        r.register_test(detail::make_i2c_byte_write_testcase());
        r.register_test(detail::make_i2c_page_write_random_testcase());
        r.register_test(detail::make_i2c_page_write_sequential_testcase());
        r.register_test(detail::make_adc_testcase());
        return r;
    }();
    return reg;
}

} // namespace covesim::tb
