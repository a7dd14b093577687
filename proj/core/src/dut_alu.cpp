// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/dut.hpp"

namespace covesim::dut {

LogicVector alu_eval(const LogicVector &a, const LogicVector &b,
                     const LogicVector &op) {
    if (a.width() != 32 || b.width() != 32)
        throw WidthError("alu_eval expects 32-bit operands");
    if (op.width() != 3) throw WidthError("alu_eval expects a 3-bit opcode");

    const LogicVector all_x(32, Logic::X);
    if (!op.is_clean()) return all_x;
    auto code = static_cast<AluOp>(op.to_unsigned());

    bool uses_b = code != AluOp::Not;
    if (!a.is_clean() || (uses_b && !b.is_clean())) return all_x;

    switch (code) {
    case AluOp::Add: return arith(ArithOp::Add, a, b);
    case AluOp::Sub: return arith(ArithOp::Sub, a, b);
    case AluOp::Not: return bitwise_not(a);
    case AluOp::And: return bitwise_and(a, b);
    case AluOp::Or: return bitwise_or(a, b);
    case AluOp::Xor: return bitwise_xor(a, b);
    case AluOp::Nand: return bitwise_nand(a, b);
    case AluOp::Nor: return bitwise_nor(a, b);
    }
    return all_x;
}

namespace {

sim::Task<> alu_process(sim::Kernel &k, AluDesign d, sim::WriterId w) {
    for (;;) {
        k.write(d.r, alu_eval(k.read(d.a), k.read(d.b), k.read(d.op)), w);
        co_await k.any_edge({d.a, d.b, d.op});
    }
}

} // namespace

AluDesign AluDesign::create(sim::Kernel &k, const std::string &prefix) {
    AluDesign d;
    d.a = k.create_signal(prefix + ".a", 32);
    d.b = k.create_signal(prefix + ".b", 32);
    d.op = k.create_signal(prefix + ".op", 3);
    d.clk = k.create_signal(prefix + ".clk", 1);
    d.r = k.create_signal(prefix + ".r", 32);
    k.spawn_daemon(prefix + ".comb", alu_process(k, d, k.new_writer()));
    return d;
}

} // namespace covesim::dut
