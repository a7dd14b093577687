// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/coverage.hpp"

namespace covesim::cov {

namespace {

// Built-in coverage models, one per design. The a/b sign partition is what
// makes full coverage reachable for stimulus drawn from [-100, 100].
constexpr std::string_view kAluModel = R"(# covesim coverage model: alu v1
point a bins neg=[-2147483648:-1] zero=0 pos=[1:2147483647]
point b bins neg=[-2147483648:-1] zero=0 pos=[1:2147483647]
point op bins all=[0:7]
cross aXb = a x b
cross aXop = a x op
cross bXop = b x op
cross aXbXop = a x b x op
)";

constexpr std::string_view kI2cModel = R"(# covesim coverage model: i2c v1
point c_start bins True=1 False=0
point c_stop bins True=1 False=0
point c_write bins True=1 False=0
point c_read bins True=1 False=0
point c_ack bins True=1 False=0
point c_nack bins True=1 False=0
point c_repeated_start bins True=1 False=0
point c_mem_data bins d0=[0:15] d1=[16:31] d2=[32:47] d3=[48:63] d4=[64:79] d5=[80:95] d6=[96:111] d7=[112:127] d8=[128:143] d9=[144:159] d10=[160:175] d11=[176:191] d12=[192:207] d13=[208:223] d14=[224:239] d15=[240:255]
point c_mem_addr autobins [0:31]
)";

constexpr std::string_view kAdcModel = R"(# covesim coverage model: adc v1
point analog_in_tb bins low=[0:21844] mid=[21845:43689] high=[43690:65535]
)";

} // namespace

std::string_view builtin_model(std::string_view design) {
    if (design == "alu") return kAluModel;
    if (design == "i2c") return kI2cModel;
    if (design == "adc") return kAdcModel;
    throw NameError("no built-in coverage model for design: " +
                    std::string(design));
}

} // namespace covesim::cov
