// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "covesim/errors.hpp"

namespace covesim {

/// One 4-state logic value. Z is treated as X on the input of every gate.
enum class Logic : uint8_t { Zero = 0, One = 1, X = 2, Z = 3 };

char to_char(Logic b);
Logic logic_from_char(char c); // accepts 0 1 x X z Z, LiteralError otherwise

/// Driver strength for multi-driver resolution.
/// Resolution order: Strong dominates PullUp dominates HighZ.
enum class Strength : uint8_t { Strong = 0, HighZ = 1, PullUp = 2 };

/// One contribution to a resolved net: a value at a strength.
struct Driver {
    Logic value;
    Strength strength;
};

// Scalar gates. And/Or have controlling values (0 and 1 respectively);
// any other X/Z operand yields X.
Logic logic_and(Logic a, Logic b);
Logic logic_or(Logic a, Logic b);
Logic logic_xor(Logic a, Logic b);
Logic logic_not(Logic a);

/// Resolves one net bit from its drivers.
///
/// Open-drain semantics: Z-valued Strong contributions and every HighZ
/// contribution count as "not driving". Agreeing Strong drivers win;
/// disagreeing ones produce X. With no effective Strong driver a PullUp
/// supplies its value; otherwise the bit floats at Z.
/// Throws ResolutionError on an empty driver list.
Logic resolve(std::span<const Driver> drivers);

struct Resolved {
    Logic value;
    bool conflict; // disagreeing Strong drivers were present
};
Resolved resolve_ex(std::span<const Driver> drivers);

/// Fixed-width vector of 4-state scalars, bit 0 = least significant.
class LogicVector {
public:
    LogicVector() = default;
    explicit LogicVector(size_t width, Logic fill = Logic::X);

    static LogicVector from_unsigned(uint64_t value, size_t width);
    static LogicVector from_signed(int64_t value, size_t width);
    /// Parses `32'hDEADBEEF` / `4'b10XZ` / `16'd123`. X/Z digits are
    /// accepted in the b and h bases only.
    static LogicVector parse(std::string_view literal);

    size_t width() const { return bits_.size(); }
    Logic bit(size_t i) const;
    void set_bit(size_t i, Logic b);

    /// True iff no bit is X or Z.
    bool is_clean() const;
    bool has_x_or_z() const { return !is_clean(); }

    uint64_t to_unsigned() const; // NonCleanError; RangeError if width > 64
    int64_t to_signed() const;    // two's-complement interpretation

    /// Renders most-significant-first with the width'h / width'b prefix.
    std::string str() const;

    bool operator==(const LogicVector &other) const = default;

    const std::vector<Logic> &bits() const { return bits_; }

private:
    std::vector<Logic> bits_;
};

enum class BitOp { And, Or, Xor, Not, Nand, Nor };
enum class ArithOp { Add, Sub };

LogicVector bitwise_not(const LogicVector &a);
LogicVector bitwise_and(const LogicVector &a, const LogicVector &b);
LogicVector bitwise_or(const LogicVector &a, const LogicVector &b);
LogicVector bitwise_xor(const LogicVector &a, const LogicVector &b);
LogicVector bitwise_nand(const LogicVector &a, const LogicVector &b);
LogicVector bitwise_nor(const LogicVector &a, const LogicVector &b);

/// Dispatching form; rhs is ignored for Not and must be non-null otherwise.
LogicVector bitwise(BitOp op, const LogicVector &lhs, const LogicVector *rhs);

/// Two's-complement add/sub truncated to the operand width. Any X/Z bit in
/// either operand makes the whole result X, mirroring HDL simulators.
LogicVector arith(ArithOp op, const LogicVector &lhs, const LogicVector &rhs);

/// Exact two's-complement conversions; see LogicVector::from_signed.
int64_t to_signed(const LogicVector &v);
LogicVector from_signed(int64_t value, size_t width);

} // namespace covesim
