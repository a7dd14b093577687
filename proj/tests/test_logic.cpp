// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "covesim/logic.hpp"

using namespace covesim;

namespace {

constexpr std::array<Logic, 4> kAll = {Logic::Zero, Logic::One, Logic::X, Logic::Z};

// Hand-enumerated 4-state truth tables, row = lhs, column = rhs, both in
// {0,1,X,Z} order. Kept independent of the implementation on purpose.
constexpr char kAndTable[4][5] = {
    "0000", // 0 & {0,1,X,Z}
    "01XX", // 1 & ...
    "0XXX", // X & ...
    "0XXX", // Z & ...
};
constexpr char kOrTable[4][5] = {
    "01XX",
    "1111",
    "X1XX",
    "X1XX",
};
constexpr char kXorTable[4][5] = {
    "01XX",
    "10XX",
    "XXXX",
    "XXXX",
};
constexpr char kNotTable[5] = "10XX";

Logic from_table(char c) { return logic_from_char(c); }

LogicVector random_vector(std::mt19937_64 &gen, size_t width, bool allow_xz) {
    LogicVector v(width);
    for (size_t i = 0; i < width; ++i) {
        auto r = gen() % (allow_xz ? 4 : 2);
        v.set_bit(i, static_cast<Logic>(r));
    }
    return v;
}

} // namespace

TEST_SUITE("logic") {

TEST_CASE("scalar gates match the hand-enumerated 4-state truth tables") {
    for (size_t i = 0; i < 4; ++i) {
        CHECK(logic_not(kAll[i]) == from_table(kNotTable[i]));
        for (size_t j = 0; j < 4; ++j) {
            CAPTURE(i);
            CAPTURE(j);
            CHECK(logic_and(kAll[i], kAll[j]) == from_table(kAndTable[i][j]));
            CHECK(logic_or(kAll[i], kAll[j]) == from_table(kOrTable[i][j]));
            CHECK(logic_xor(kAll[i], kAll[j]) == from_table(kXorTable[i][j]));
        }
    }
}

TEST_CASE("controlling values dominate unknowns") {
    CHECK(logic_and(Logic::X, Logic::Zero) == Logic::Zero);
    CHECK(logic_and(Logic::X, Logic::One) == Logic::X);
    CHECK(logic_or(Logic::Z, Logic::One) == Logic::One);
}

TEST_CASE("vector bitwise identities") {
    auto ones = LogicVector::parse("32'hFFFFFFFF");
    auto mask = LogicVector::parse("32'h000000FF");
    auto zero = LogicVector::parse("32'h00000000");
    CHECK(bitwise_and(ones, mask) == mask);
    CHECK(bitwise_not(zero) == ones);
    CHECK(bitwise(BitOp::And, ones, &mask) == mask);
    CHECK(bitwise(BitOp::Not, zero, nullptr) == ones);
}

TEST_CASE("bitwise width mismatch raises WidthError") {
    LogicVector a(8, Logic::Zero), b(4, Logic::Zero);
    CHECK_THROWS_AS(bitwise_and(a, b), WidthError);
    CHECK_THROWS_AS(arith(ArithOp::Add, a, b), WidthError);
}

TEST_CASE("NAND/NOR are complements of AND/OR over random 4-state vectors") {
    std::mt19937_64 gen(0xC0FFEE);
    for (int iter = 0; iter < 200; ++iter) {
        size_t width = 1 + gen() % 48;
        auto a = random_vector(gen, width, true);
        auto b = random_vector(gen, width, true);
        CHECK(bitwise_nand(a, b) == bitwise_not(bitwise_and(a, b)));
        CHECK(bitwise_nor(a, b) == bitwise_not(bitwise_or(a, b)));
    }
}

TEST_CASE("add/sub match a wide-integer oracle mod 2^32") {
    std::mt19937_64 gen(0x5EED);
    for (int iter = 0; iter < 10000; ++iter) {
        uint32_t a = static_cast<uint32_t>(gen());
        uint32_t b = static_cast<uint32_t>(gen());
        auto va = LogicVector::from_unsigned(a, 32);
        auto vb = LogicVector::from_unsigned(b, 32);
        uint64_t sum = (uint64_t{a} + uint64_t{b}) & 0xFFFFFFFFull;
        uint64_t diff = (uint64_t{a} - uint64_t{b}) & 0xFFFFFFFFull;
        CHECK(arith(ArithOp::Add, va, vb).to_unsigned() == sum);
        CHECK(arith(ArithOp::Sub, va, vb).to_unsigned() == diff);
    }
}

TEST_CASE("arith pinned cases") {
    auto v = [](uint64_t x) { return LogicVector::from_unsigned(x, 32); };
    CHECK(arith(ArithOp::Add, v(7), v(5)) == v(12));
    CHECK(arith(ArithOp::Sub, v(0), v(1)) == v(0xFFFFFFFF));
    CHECK(arith(ArithOp::Add, v(0xFFFFFFFF), v(1)) == v(0));
}

TEST_CASE("arith on X/Z operands yields all-X") {
    auto a = LogicVector::parse("8'b0000000X");
    auto b = LogicVector::from_unsigned(3, 8);
    auto r = arith(ArithOp::Add, a, b);
    for (size_t i = 0; i < 8; ++i) CHECK(r.bit(i) == Logic::X);
    CHECK(arith(ArithOp::Sub, b, LogicVector::parse("8'hZZ")) ==
          LogicVector(8, Logic::X));
}

// Independent count-based formulation of the resolution rule, used as the
// oracle for the production resolver.
namespace {
Logic oracle_resolve(const std::vector<Driver> &ds) {
    int s0 = 0, s1 = 0, sx = 0, p0 = 0, p1 = 0, px = 0;
    for (auto &d : ds) {
        if (d.strength == Strength::HighZ || d.value == Logic::Z) continue;
        int is0 = d.value == Logic::Zero, is1 = d.value == Logic::One;
        int isx = d.value == Logic::X;
        if (d.strength == Strength::Strong) { s0 += is0; s1 += is1; sx += isx; }
        else { p0 += is0; p1 += is1; px += isx; }
    }
    if (s0 + s1 + sx > 0) {
        if (sx || (s0 && s1)) return Logic::X;
        return s0 ? Logic::Zero : Logic::One;
    }
    if (p0 + p1 + px > 0) {
        if (px || (p0 && p1)) return Logic::X;
        return p0 ? Logic::Zero : Logic::One;
    }
    return Logic::Z;
}
} // namespace

TEST_CASE("resolve matches oracle on every single driver and driver pair") {
    std::vector<Driver> all;
    for (Logic v : kAll)
        for (Strength s : {Strength::Strong, Strength::HighZ, Strength::PullUp})
            all.push_back({v, s});

    for (auto &d : all) {
        std::vector<Driver> one{d};
        CHECK(resolve(one) == oracle_resolve(one));
    }
    for (auto &d1 : all)
        for (auto &d2 : all) {
            std::vector<Driver> pair{d1, d2};
            CAPTURE(static_cast<int>(d1.value));
            CAPTURE(static_cast<int>(d2.value));
            CHECK(resolve(pair) == oracle_resolve(pair));
        }
}

TEST_CASE("resolve pinned open-drain cases") {
    std::vector<Driver> idle{{Logic::Z, Strength::Strong},
                             {Logic::Z, Strength::Strong},
                             {Logic::One, Strength::PullUp}};
    CHECK(resolve(idle) == Logic::One);

    std::vector<Driver> pulled_low{{Logic::Zero, Strength::Strong},
                                   {Logic::Z, Strength::Strong},
                                   {Logic::One, Strength::PullUp}};
    CHECK(resolve(pulled_low) == Logic::Zero);

    std::vector<Driver> conflict{{Logic::One, Strength::Strong},
                                 {Logic::Zero, Strength::Strong}};
    CHECK(resolve(conflict) == Logic::X);
    CHECK(resolve_ex(conflict).conflict);

    std::vector<Driver> floating{{Logic::Z, Strength::Strong}};
    CHECK(resolve(floating) == Logic::Z);

    CHECK_THROWS_AS(resolve({}), ResolutionError);
}

TEST_CASE("resolve is order independent") {
    std::mt19937_64 gen(42);
    for (int iter = 0; iter < 500; ++iter) {
        size_t n = 1 + gen() % 5;
        std::vector<Driver> ds;
        for (size_t i = 0; i < n; ++i)
            ds.push_back({static_cast<Logic>(gen() % 4),
                          static_cast<Strength>(gen() % 3)});
        Logic base = resolve(ds);
        std::sort(ds.begin(), ds.end(), [](const Driver &a, const Driver &b) {
            return std::pair(a.value, a.strength) < std::pair(b.value, b.strength);
        });
        do {
            CHECK(resolve(ds) == base);
        } while (std::next_permutation(
            ds.begin(), ds.end(), [](const Driver &a, const Driver &b) {
                return std::pair(a.value, a.strength) <
                       std::pair(b.value, b.strength);
            }));
    }
}

TEST_CASE("signed conversions round-trip") {
    CHECK(from_signed(-1, 32) == LogicVector::parse("32'hFFFFFFFF"));
    CHECK(to_signed(LogicVector::parse("32'h80000000")) == INT64_C(-2147483648));
    for (int64_t n = -100; n <= 100; ++n)
        CHECK(to_signed(from_signed(n, 32)) == n);
}

TEST_CASE("signed conversion errors") {
    CHECK_THROWS_AS(from_signed(128, 8), RangeError);
    CHECK_THROWS_AS(from_signed(-129, 8), RangeError);
    CHECK_THROWS_AS(LogicVector::parse("4'b10XZ").to_signed(), NonCleanError);
}

TEST_CASE("literal parsing") {
    auto v = LogicVector::parse("32'hDEADBEEF");
    CHECK(v.to_unsigned() == 0xDEADBEEFu);
    CHECK(v.str() == "32'hDEADBEEF");

    auto mixed = LogicVector::parse("4'b10XZ");
    CHECK(mixed.bit(3) == Logic::One);
    CHECK(mixed.bit(2) == Logic::Zero);
    CHECK(mixed.bit(1) == Logic::X);
    CHECK(mixed.bit(0) == Logic::Z);
    CHECK(mixed.str() == "4'b10XZ");

    CHECK(LogicVector::parse("16'd123").to_unsigned() == 123);
    CHECK(LogicVector::parse("8'b101").to_unsigned() == 5); // zero padded
    CHECK(LogicVector::parse("12'hx").str() == "12'hXXX"); // x padded
    CHECK(LogicVector::parse("8'hFF").to_unsigned() == 255);
    CHECK(LogicVector::parse("8'h0_F").to_unsigned() == 15);
}

TEST_CASE("literal errors") {
    CHECK_THROWS_AS(LogicVector::parse("8'd1X"), LiteralError);
    CHECK_THROWS_AS(LogicVector::parse("0'b1"), LiteralError);
    CHECK_THROWS_AS(LogicVector::parse("8'q12"), LiteralError);
    CHECK_THROWS_AS(LogicVector::parse("abc"), LiteralError);
    CHECK_THROWS_AS(LogicVector::parse("4'hFF"), LiteralError); // overflow
    CHECK_THROWS_AS(LogicVector::parse("8'd256"), RangeError);
    CHECK_THROWS_AS(LogicVector::parse("8'"), LiteralError);
}

TEST_CASE("rendering falls back to binary for non-nibble widths") {
    CHECK(LogicVector::from_unsigned(5, 3).str() == "3'b101");
    CHECK(LogicVector(8, Logic::X).str() == "8'hXX");
    CHECK(LogicVector(8, Logic::Z).str() == "8'hZZ");
}

} // TEST_SUITE
