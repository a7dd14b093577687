// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/logic.hpp"

#include <algorithm>
#include <cctype>

namespace covesim {

char to_char(Logic b) {
    switch (b) {
    case Logic::Zero: return '0';
    case Logic::One: return '1';
    case Logic::X: return 'X';
    case Logic::Z: return 'Z';
    }
    return '?';
}

Logic logic_from_char(char c) {
    switch (c) {
    case '0': return Logic::Zero;
    case '1': return Logic::One;
    case 'x':
    case 'X': return Logic::X;
    case 'z':
    case 'Z': return Logic::Z;
    default:
        throw LiteralError(std::string("invalid logic digit '") + c + "'");
    }
}

namespace {

inline bool defined(Logic a) { return a == Logic::Zero || a == Logic::One; }

} // namespace

Logic logic_and(Logic a, Logic b) {
    if (a == Logic::Zero || b == Logic::Zero) return Logic::Zero;
    if (a == Logic::One && b == Logic::One) return Logic::One;
    return Logic::X;
}

Logic logic_or(Logic a, Logic b) {
    if (a == Logic::One || b == Logic::One) return Logic::One;
    if (a == Logic::Zero && b == Logic::Zero) return Logic::Zero;
    return Logic::X;
}

Logic logic_xor(Logic a, Logic b) {
    if (!defined(a) || !defined(b)) return Logic::X;
    return a == b ? Logic::Zero : Logic::One;
}

Logic logic_not(Logic a) {
    if (a == Logic::Zero) return Logic::One;
    if (a == Logic::One) return Logic::Zero;
    return Logic::X;
}

Resolved resolve_ex(std::span<const Driver> drivers) {
    if (drivers.empty())
        throw ResolutionError("resolve: empty driver list");

    bool strong_zero = false, strong_one = false, strong_x = false;
    bool pull_zero = false, pull_one = false, pull_x = false;
    for (const Driver &d : drivers) {
        if (d.strength == Strength::HighZ) continue;
        if (d.value == Logic::Z) continue; // released
        bool *zero = d.strength == Strength::Strong ? &strong_zero : &pull_zero;
        bool *one = d.strength == Strength::Strong ? &strong_one : &pull_one;
        bool *x = d.strength == Strength::Strong ? &strong_x : &pull_x;
        switch (d.value) {
        case Logic::Zero: *zero = true; break;
        case Logic::One: *one = true; break;
        default: *x = true; break;
        }
    }

    bool conflict = strong_zero && strong_one;
    if (strong_zero || strong_one || strong_x) {
        if (conflict || strong_x) return {Logic::X, conflict};
        return {strong_zero ? Logic::Zero : Logic::One, false};
    }
    if (pull_zero || pull_one || pull_x) {
        if ((pull_zero && pull_one) || pull_x) return {Logic::X, false};
        return {pull_zero ? Logic::Zero : Logic::One, false};
    }
    return {Logic::Z, false};
}

Logic resolve(std::span<const Driver> drivers) { return resolve_ex(drivers).value; }

LogicVector::LogicVector(size_t width, Logic fill) : bits_(width, fill) {
    if (width == 0) throw WidthError("vector width must be positive");
}

LogicVector LogicVector::from_unsigned(uint64_t value, size_t width) {
    if (width == 0) throw WidthError("vector width must be positive");
    if (width < 64 && value >= (uint64_t{1} << width))
        throw RangeError("value " + std::to_string(value) + " does not fit in " +
                         std::to_string(width) + " bits");
    LogicVector v(width, Logic::Zero);
    for (size_t i = 0; i < width && i < 64; ++i)
        v.bits_[i] = (value >> i) & 1 ? Logic::One : Logic::Zero;
    return v;
}

LogicVector LogicVector::from_signed(int64_t value, size_t width) {
    if (width == 0) throw WidthError("vector width must be positive");
    if (width < 64) {
        int64_t lo = -(int64_t{1} << (width - 1));
        int64_t hi = (int64_t{1} << (width - 1)) - 1;
        if (value < lo || value > hi)
            throw RangeError("value " + std::to_string(value) +
                             " not representable in " + std::to_string(width) +
                             " bits two's-complement");
    }
    LogicVector v(width, Logic::Zero);
    auto u = static_cast<uint64_t>(value);
    for (size_t i = 0; i < width && i < 64; ++i)
        v.bits_[i] = (u >> i) & 1 ? Logic::One : Logic::Zero;
    // sign-extend past 64 bits
    for (size_t i = 64; i < width; ++i)
        v.bits_[i] = value < 0 ? Logic::One : Logic::Zero;
    return v;
}

Logic LogicVector::bit(size_t i) const {
    if (i >= bits_.size()) throw RangeError("bit index out of range");
    return bits_[i];
}

void LogicVector::set_bit(size_t i, Logic b) {
    if (i >= bits_.size()) throw RangeError("bit index out of range");
    bits_[i] = b;
}

bool LogicVector::is_clean() const {
    return std::all_of(bits_.begin(), bits_.end(),
                       [](Logic b) { return defined(b); });
}

uint64_t LogicVector::to_unsigned() const {
    if (width() > 64) throw RangeError("vector wider than 64 bits");
    if (!is_clean()) throw NonCleanError("vector contains X/Z bits: " + str());
    uint64_t v = 0;
    for (size_t i = 0; i < width(); ++i)
        if (bits_[i] == Logic::One) v |= uint64_t{1} << i;
    return v;
}

int64_t LogicVector::to_signed() const {
    uint64_t u = to_unsigned();
    size_t w = width();
    if (w < 64 && (u & (uint64_t{1} << (w - 1))))
        u |= ~uint64_t{0} << w; // sign extend
    return static_cast<int64_t>(u);
}

std::string LogicVector::str() const {
    size_t w = width();
    // Hex rendering only when every nibble is all-defined, all-X or all-Z.
    if (w % 4 == 0) {
        std::string hex;
        hex.reserve(w / 4);
        bool ok = true;
        for (size_t n = 0; n < w / 4 && ok; ++n) {
            size_t base = w - 4 * (n + 1);
            int val = 0, nx = 0, nz = 0;
            for (size_t k = 0; k < 4; ++k) {
                Logic b = bits_[base + k];
                if (b == Logic::X) ++nx;
                else if (b == Logic::Z) ++nz;
                else if (b == Logic::One) val |= 1 << k;
            }
            if (nx == 4) hex.push_back('X');
            else if (nz == 4) hex.push_back('Z');
            else if (nx == 0 && nz == 0) hex.push_back("0123456789ABCDEF"[val]);
            else ok = false;
        }
        if (ok) return std::to_string(w) + "'h" + hex;
    }
    std::string bin;
    bin.reserve(w);
    for (size_t i = 0; i < w; ++i) bin.push_back(to_char(bits_[w - 1 - i]));
    return std::to_string(w) + "'b" + bin;
}

LogicVector LogicVector::parse(std::string_view s) {
    size_t quote = s.find('\'');
    if (quote == std::string_view::npos || quote == 0)
        throw LiteralError("literal missing width'base prefix: " + std::string(s));

    uint64_t width = 0;
    for (char c : s.substr(0, quote)) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw LiteralError("invalid width in literal: " + std::string(s));
        width = width * 10 + static_cast<uint64_t>(c - '0');
        if (width > 1u << 20)
            throw LiteralError("literal width too large: " + std::string(s));
    }
    if (width == 0) throw LiteralError("literal width must be positive: " + std::string(s));
    if (quote + 1 >= s.size()) throw LiteralError("literal missing base: " + std::string(s));
    char base = static_cast<char>(std::tolower(static_cast<unsigned char>(s[quote + 1])));
    std::string_view digits = s.substr(quote + 2);
    if (digits.empty()) throw LiteralError("literal has no digits: " + std::string(s));

    std::vector<Logic> msb_first; // as written, most significant first
    switch (base) {
    case 'b':
        for (char c : digits) {
            if (c == '_') continue;
            msb_first.push_back(logic_from_char(c));
        }
        break;
    case 'h':
        for (char c : digits) {
            if (c == '_') continue;
            char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (lc == 'x' || lc == 'z') {
                Logic b = lc == 'x' ? Logic::X : Logic::Z;
                for (int k = 0; k < 4; ++k) msb_first.push_back(b);
                continue;
            }
            int v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (lc >= 'a' && lc <= 'f') v = lc - 'a' + 10;
            else throw LiteralError(std::string("invalid hex digit '") + c + "'");
            for (int k = 3; k >= 0; --k)
                msb_first.push_back((v >> k) & 1 ? Logic::One : Logic::Zero);
        }
        break;
    case 'd': {
        uint64_t value = 0;
        for (char c : digits) {
            if (c == '_') continue;
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw LiteralError("invalid decimal digit in literal: " + std::string(s));
            uint64_t next = value * 10 + static_cast<uint64_t>(c - '0');
            if (next / 10 != value)
                throw LiteralError("decimal literal overflows 64 bits: " + std::string(s));
            value = next;
        }
        return from_unsigned(value, static_cast<size_t>(width));
    }
    default:
        throw LiteralError(std::string("unknown literal base '") + base + "'");
    }

    if (msb_first.empty()) throw LiteralError("literal has no digits: " + std::string(s));
    if (msb_first.size() > width) {
        // excess head bits are tolerated only when they are zero
        size_t excess = msb_first.size() - width;
        for (size_t i = 0; i < excess; ++i)
            if (msb_first[i] != Logic::Zero)
                throw LiteralError("literal value wider than declared width: " + std::string(s));
        msb_first.erase(msb_first.begin(),
                        msb_first.begin() + static_cast<std::ptrdiff_t>(excess));
    }

    LogicVector v(static_cast<size_t>(width), Logic::Zero);
    // pad with X/Z when the leading digit is X/Z, with 0 otherwise
    Logic pad = Logic::Zero;
    if (msb_first.front() == Logic::X || msb_first.front() == Logic::Z)
        pad = msb_first.front();
    size_t n = msb_first.size();
    for (size_t i = 0; i < width; ++i)
        v.bits_[i] = i < n ? msb_first[n - 1 - i] : pad;
    return v;
}

namespace {

void require_same_width(const LogicVector &a, const LogicVector &b) {
    if (a.width() != b.width())
        throw WidthError("width mismatch: " + std::to_string(a.width()) + " vs " +
                         std::to_string(b.width()));
}

LogicVector map2(const LogicVector &a, const LogicVector &b, Logic (*f)(Logic, Logic)) {
    require_same_width(a, b);
    LogicVector r(a.width());
    for (size_t i = 0; i < a.width(); ++i) r.set_bit(i, f(a.bit(i), b.bit(i)));
    return r;
}

} // namespace

LogicVector bitwise_not(const LogicVector &a) {
    LogicVector r(a.width());
    for (size_t i = 0; i < a.width(); ++i) r.set_bit(i, logic_not(a.bit(i)));
    return r;
}

LogicVector bitwise_and(const LogicVector &a, const LogicVector &b) {
    return map2(a, b, logic_and);
}
LogicVector bitwise_or(const LogicVector &a, const LogicVector &b) {
    return map2(a, b, logic_or);
}
LogicVector bitwise_xor(const LogicVector &a, const LogicVector &b) {
    return map2(a, b, logic_xor);
}
LogicVector bitwise_nand(const LogicVector &a, const LogicVector &b) {
    return bitwise_not(bitwise_and(a, b));
}
LogicVector bitwise_nor(const LogicVector &a, const LogicVector &b) {
    return bitwise_not(bitwise_or(a, b));
}

LogicVector bitwise(BitOp op, const LogicVector &lhs, const LogicVector *rhs) {
    if (op == BitOp::Not) return bitwise_not(lhs);
    if (rhs == nullptr) throw WidthError("binary bitwise op requires two operands");
    switch (op) {
    case BitOp::And: return bitwise_and(lhs, *rhs);
    case BitOp::Or: return bitwise_or(lhs, *rhs);
    case BitOp::Xor: return bitwise_xor(lhs, *rhs);
    case BitOp::Nand: return bitwise_nand(lhs, *rhs);
    case BitOp::Nor: return bitwise_nor(lhs, *rhs);
    case BitOp::Not: break;
    }
    throw Error("unreachable bitwise op");
}

LogicVector arith(ArithOp op, const LogicVector &lhs, const LogicVector &rhs) {
    require_same_width(lhs, rhs);
    if (!lhs.is_clean() || !rhs.is_clean())
        return LogicVector(lhs.width(), Logic::X);

    // Ripple add keeps the semantics exact for every width.
    LogicVector r(lhs.width(), Logic::Zero);
    int carry = op == ArithOp::Sub ? 1 : 0;
    for (size_t i = 0; i < lhs.width(); ++i) {
        int a = lhs.bit(i) == Logic::One ? 1 : 0;
        int b = rhs.bit(i) == Logic::One ? 1 : 0;
        if (op == ArithOp::Sub) b ^= 1;
        int sum = a + b + carry;
        r.set_bit(i, (sum & 1) ? Logic::One : Logic::Zero);
        carry = sum >> 1;
    }
    return r;
}

int64_t to_signed(const LogicVector &v) { return v.to_signed(); }

LogicVector from_signed(int64_t value, size_t width) {
    return LogicVector::from_signed(value, width);
}

} // namespace covesim
