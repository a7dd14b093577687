// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/dut.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace covesim::dut {

uint64_t real_to_bits(double v) { return std::bit_cast<uint64_t>(v); }
double bits_to_real(uint64_t bits) { return std::bit_cast<double>(bits); }

uint16_t adc_convert(double volts) {
    if (std::isnan(volts)) throw ConversionError("adc_convert: NaN voltage");
    double v = std::clamp(volts, kAdcVMin, kAdcVMax);
    double code = (v - kAdcVMin) / (kAdcVMax - kAdcVMin) *
                  static_cast<double>(kAdcMaxCode);
    long long c = std::llround(code); // half away from zero
    c = std::clamp(c, 0ll, static_cast<long long>(kAdcMaxCode));
    return static_cast<uint16_t>(c);
}

namespace {

sim::Task<> adc_process(sim::Kernel &k, AdcDesign d, sim::WriterId w) {
    for (;;) {
        LogicVector in = k.read(d.analog_input);
        LogicVector out(16, Logic::X);
        if (in.is_clean()) {
            double v = bits_to_real(in.to_unsigned());
            if (std::isnan(v)) {
                k.diag(sim::DiagLevel::Warn,
                       "adc: NaN analog input, output driven X");
            } else {
                out = LogicVector::from_unsigned(adc_convert(v), 16);
            }
        }
        k.write(d.digital_out, out, w);
        co_await k.any_edge(d.analog_input);
    }
}

} // namespace

AdcDesign AdcDesign::create(sim::Kernel &k, const std::string &prefix) {
    AdcDesign d;
    d.analog_input = k.create_signal(prefix + ".analog_input", 64);
    d.digital_out = k.create_signal(prefix + ".digital_out", 16);
    k.spawn_daemon(prefix + ".core", adc_process(k, d, k.new_writer()));
    return d;
}

void AdcDesign::drive_voltage(sim::Kernel &k, double volts,
                              sim::WriterId w) const {
    k.write(analog_input, LogicVector::from_unsigned(real_to_bits(volts), 64),
            w);
}

} // namespace covesim::dut
