// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>

#include "covesim/kernel.hpp"
#include "covesim/logic.hpp"

namespace covesim::dut {

class ConversionError : public Error {
public:
    using Error::Error;
};

// --- 32-bit ALU ---

/// Opcodes 0..7: arithmetic first, then the six logical operations.
enum class AluOp : uint8_t {
    Add = 0,
    Sub = 1,
    Not = 2,
    And = 3,
    Or = 4,
    Xor = 5,
    Nand = 6,
    Nor = 7,
};

/// Pure combinational function of (a, b, op). Any X/Z bit in a used operand
/// makes the whole result X; op itself must be 2-state clean.
LogicVector alu_eval(const LogicVector &a, const LogicVector &b,
                     const LogicVector &op);

struct AluDesign {
    sim::SignalId a, b, op, clk, r;

    /// Creates ports under `prefix.` and spawns the combinational process.
    static AluDesign create(sim::Kernel &k, const std::string &prefix = "alu");
};

// --- 16-bit ADC ---

inline constexpr double kAdcVMin = -10.0;
inline constexpr double kAdcVMax = 10.0;
inline constexpr uint16_t kAdcMaxCode = 65535;

uint64_t real_to_bits(double v);
double bits_to_real(uint64_t bits);

/// Ideal uniform quantizer over [-10 V, +10 V] with clamping; rounding is
/// half away from zero. ConversionError on NaN.
uint16_t adc_convert(double volts);

struct AdcDesign {
    sim::SignalId analog_input; // 64-bit binary64 pattern of analog_in
    sim::SignalId digital_out;  // 16-bit code

    static AdcDesign create(sim::Kernel &k, const std::string &prefix = "adc");

    /// Testbench-side analog_in port: writes the bit pattern of `volts`.
    void drive_voltage(sim::Kernel &k, double volts,
                       sim::WriterId w = 0) const;
};

// --- I2C memory slave ---

inline constexpr size_t kI2cMemBytes = 32;
inline constexpr size_t kI2cPageBytes = 8;
inline constexpr uint8_t kI2cAddressPrefix = 0b1010; // high nibble of ctrl

struct I2cSlaveConfig {
    /// Classic page behavior: writes wrap within an 8-byte page. When false
    /// the write pointer increments linearly modulo 32 instead.
    bool page_wrap = true;
};

/// EEPROM-style open-drain slave: START/STOP detection, 7-bit address
/// 1010|A2|A1|A0, one word-address byte, byte/page writes, current-address
/// sequential reads, write protect via Wp. The slave only ever drives SDA
/// low or releases it.
class I2cSlaveDesign {
public:
    static std::unique_ptr<I2cSlaveDesign>
    create(sim::Kernel &k, const std::string &prefix = "i2c",
           I2cSlaveConfig cfg = {});

    sim::SignalId sda, scl, a0, a1, a2, wp;

    const std::array<uint8_t, kI2cMemBytes> &memory() const { return memory_; }
    void preload(const std::array<uint8_t, kI2cMemBytes> &image);
    uint8_t addr_pointer() const { return addr_ptr_; }
    /// Trace probe: true while the protocol FSM sits in its idle state.
    bool fsm_idle() const { return st_ == St::Idle; }
    uint64_t violations() const { return violations_; }
    /// Count of attempted high drives; stays zero by construction.
    uint64_t one_drives() const { return one_drives_; }

private:
    I2cSlaveDesign() = default;

    enum class St {
        Idle,
        RxCtrl,
        AckCtrl,
        RxWaddr,
        AckWaddr,
        RxData,
        AckData,
        NackData,
        TxData,
        TxAck,
    };

    sim::Task<> process(sim::Kernel &k);
    void step(sim::Kernel &k, Logic prev_sda, Logic prev_scl, Logic cur_sda,
              Logic cur_scl);
    void drive_sda(sim::Kernel &k, Logic v);
    void release_sda(sim::Kernel &k);
    void drive_tx_bit(sim::Kernel &k, int bit);
    bool address_match(sim::Kernel &k, uint8_t ctrl) const;
    void load_tx_byte();
    void advance_write_ptr();
    void violation(sim::Kernel &k, const std::string &what);

    I2cSlaveConfig cfg_;
    sim::WriterId writer_ = 0;
    std::array<uint8_t, kI2cMemBytes> memory_{};
    St st_ = St::Idle;
    uint8_t shift_ = 0;
    uint8_t bit_cnt_ = 0;
    uint8_t addr_ptr_ = 0;
    uint8_t tx_shift_ = 0;
    bool read_mode_ = false;
    uint8_t ack_phase_ = 0;
    uint64_t violations_ = 0;
    uint64_t one_drives_ = 0;
};

/// The pull-up wrapper: attaches pull-ups to SDA and SCL so the undriven
/// bus idles high. Without it the idle bus floats at Z and nothing works.
void attach_i2c_pullups(sim::Kernel &k, const I2cSlaveDesign &d);

/// 32-line hex memory image, one byte per line.
std::array<uint8_t, kI2cMemBytes> parse_mem_image(const std::string &text);
std::string format_mem_image(const std::array<uint8_t, kI2cMemBytes> &mem);

} // namespace covesim::dut
