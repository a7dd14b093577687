// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

namespace covesim::sim {

/// A simulation instant or duration. The global resolution is fixed at
/// one picosecond, which represents the reference 20 ns clock and I2C bit
/// timing exactly.
struct SimTime {
    uint64_t ps = 0;

    constexpr auto operator<=>(const SimTime &) const = default;

    constexpr SimTime operator+(SimTime o) const { return {ps + o.ps}; }
    constexpr SimTime operator-(SimTime o) const { return {ps - o.ps}; }
    constexpr SimTime operator*(uint64_t k) const { return {ps * k}; }
    constexpr SimTime operator/(uint64_t k) const { return {ps / k}; }

    static constexpr SimTime max() {
        return {std::numeric_limits<uint64_t>::max()};
    }

    std::string str() const { return std::to_string(ps) + " ps"; }
};

constexpr SimTime picoseconds(uint64_t n) { return {n}; }
constexpr SimTime nanoseconds(uint64_t n) { return {n * 1000ull}; }
constexpr SimTime microseconds(uint64_t n) { return {n * 1000000ull}; }
constexpr SimTime milliseconds(uint64_t n) { return {n * 1000000000ull}; }
constexpr SimTime seconds(uint64_t n) { return {n * 1000000000000ull}; }

} // namespace covesim::sim
