// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/dut.hpp"

#include <sstream>

namespace covesim::dut {

namespace {

inline bool is01(Logic v) { return v == Logic::Zero || v == Logic::One; }
inline int as_bit(Logic v) { return v == Logic::One ? 1 : 0; }

} // namespace

std::unique_ptr<I2cSlaveDesign>
I2cSlaveDesign::create(sim::Kernel &k, const std::string &prefix,
                       I2cSlaveConfig cfg) {
    auto d = std::unique_ptr<I2cSlaveDesign>(new I2cSlaveDesign());
    d->cfg_ = cfg;
    d->sda = k.create_signal(prefix + ".sda", 1);
    d->scl = k.create_signal(prefix + ".scl", 1);
    d->a0 = k.create_signal(prefix + ".a0", 1);
    d->a1 = k.create_signal(prefix + ".a1", 1);
    d->a2 = k.create_signal(prefix + ".a2", 1);
    d->wp = k.create_signal(prefix + ".wp", 1);
    d->writer_ = k.new_writer();
    k.release(d->sda, d->writer_); // open-drain: idle released
    k.spawn_daemon(prefix + ".slave", d->process(k));
    return d;
}

void I2cSlaveDesign::preload(const std::array<uint8_t, kI2cMemBytes> &image) {
    memory_ = image;
}

void I2cSlaveDesign::drive_sda(sim::Kernel &k, Logic v) {
    if (v == Logic::One) {
        // open-drain: a high level only ever comes from the pull-up
        ++one_drives_;
        return;
    }
    k.write(sda, LogicVector(1, v), writer_);
}

void I2cSlaveDesign::release_sda(sim::Kernel &k) { k.release(sda, writer_); }

void I2cSlaveDesign::drive_tx_bit(sim::Kernel &k, int bit) {
    // open-drain transmit: a 1 is the released, pulled-up line
    if (bit)
        release_sda(k);
    else
        drive_sda(k, Logic::Zero);
}

bool I2cSlaveDesign::address_match(sim::Kernel &k, uint8_t ctrl) const {
    Logic b2 = k.read_bit(a2), b1 = k.read_bit(a1), b0 = k.read_bit(a0);
    if (!is01(b2) || !is01(b1) || !is01(b0)) return false;
    uint8_t device = static_cast<uint8_t>(
        (kI2cAddressPrefix << 3) | (as_bit(b2) << 2) | (as_bit(b1) << 1) |
        as_bit(b0));
    return (ctrl >> 1) == device;
}

void I2cSlaveDesign::load_tx_byte() {
    tx_shift_ = memory_[addr_ptr_];
    addr_ptr_ = static_cast<uint8_t>((addr_ptr_ + 1) % kI2cMemBytes);
}

void I2cSlaveDesign::advance_write_ptr() {
    if (cfg_.page_wrap) {
        uint8_t page = addr_ptr_ & static_cast<uint8_t>(~(kI2cPageBytes - 1));
        addr_ptr_ =
            static_cast<uint8_t>(page | ((addr_ptr_ + 1) % kI2cPageBytes));
    } else {
        addr_ptr_ = static_cast<uint8_t>((addr_ptr_ + 1) % kI2cMemBytes);
    }
}

void I2cSlaveDesign::violation(sim::Kernel &k, const std::string &what) {
    ++violations_;
    k.diag(sim::DiagLevel::Warn, "i2c slave: protocol violation, " + what +
                                     "; returning to idle");
    st_ = St::Idle;
    release_sda(k);
}

sim::Task<> I2cSlaveDesign::process(sim::Kernel &k) {
    Logic prev_sda = k.read_bit(sda);
    Logic prev_scl = k.read_bit(scl);
    for (;;) {
        co_await k.any_edge({sda, scl});
        Logic cur_sda = k.read_bit(sda);
        Logic cur_scl = k.read_bit(scl);
        step(k, prev_sda, prev_scl, cur_sda, cur_scl);
        prev_sda = cur_sda;
        prev_scl = cur_scl;
    }
}

void I2cSlaveDesign::step(sim::Kernel &k, Logic prev_sda, Logic prev_scl,
                          Logic cur_sda, Logic cur_scl) {
    bool scl_rising = prev_scl == Logic::Zero && cur_scl == Logic::One;
    bool scl_falling = prev_scl == Logic::One && cur_scl == Logic::Zero;
    bool start = cur_scl == Logic::One && prev_sda == Logic::One &&
                 cur_sda == Logic::Zero;
    bool stop = cur_scl == Logic::One && prev_sda == Logic::Zero &&
                cur_sda == Logic::One;

    // START, repeated or not, re-enters the address phase from any state.
    if (start) {
        st_ = St::RxCtrl;
        bit_cnt_ = 0;
        shift_ = 0;
        release_sda(k);
        return;
    }
    if (stop) {
        st_ = St::Idle;
        release_sda(k);
        return;
    }

    switch (st_) {
    case St::Idle:
        break;

    case St::RxCtrl:
        if (scl_rising) {
            if (!is01(cur_sda)) {
                violation(k, "undefined SDA while receiving control byte");
                return;
            }
            shift_ = static_cast<uint8_t>((shift_ << 1) | as_bit(cur_sda));
            if (++bit_cnt_ == 8) {
                if (!address_match(k, shift_)) {
                    st_ = St::Idle; // not addressed, stay silent
                    return;
                }
                read_mode_ = (shift_ & 1) != 0;
                st_ = St::AckCtrl;
                ack_phase_ = 0;
            }
        }
        break;

    case St::AckCtrl:
        if (scl_falling) {
            if (ack_phase_ == 0) {
                drive_sda(k, Logic::Zero);
                ack_phase_ = 1;
            } else {
                release_sda(k);
                if (read_mode_) {
                    load_tx_byte();
                    bit_cnt_ = 0;
                    st_ = St::TxData;
                    drive_tx_bit(k, (tx_shift_ >> 7) & 1);
                } else {
                    st_ = St::RxWaddr;
                    bit_cnt_ = 0;
                    shift_ = 0;
                }
            }
        }
        break;

    case St::RxWaddr:
        if (scl_rising) {
            if (!is01(cur_sda)) {
                violation(k, "undefined SDA while receiving word address");
                return;
            }
            shift_ = static_cast<uint8_t>((shift_ << 1) | as_bit(cur_sda));
            if (++bit_cnt_ == 8) {
                addr_ptr_ = static_cast<uint8_t>(shift_ % kI2cMemBytes);
                st_ = St::AckWaddr;
                ack_phase_ = 0;
            }
        }
        break;

    case St::AckWaddr:
        if (scl_falling) {
            if (ack_phase_ == 0) {
                drive_sda(k, Logic::Zero); // ACKed even under write protect
                ack_phase_ = 1;
            } else {
                release_sda(k);
                st_ = St::RxData;
                bit_cnt_ = 0;
                shift_ = 0;
            }
        }
        break;

    case St::RxData:
        if (scl_rising) {
            if (!is01(cur_sda)) {
                violation(k, "undefined SDA while receiving data");
                return;
            }
            shift_ = static_cast<uint8_t>((shift_ << 1) | as_bit(cur_sda));
            if (++bit_cnt_ == 8) {
                if (k.read_bit(wp) == Logic::One) {
                    st_ = St::NackData; // data byte refused, memory untouched
                    ack_phase_ = 0;
                } else {
                    memory_[addr_ptr_] = shift_;
                    advance_write_ptr();
                    st_ = St::AckData;
                    ack_phase_ = 0;
                }
            }
        }
        break;

    case St::AckData:
        if (scl_falling) {
            if (ack_phase_ == 0) {
                drive_sda(k, Logic::Zero);
                ack_phase_ = 1;
            } else {
                release_sda(k);
                st_ = St::RxData;
                bit_cnt_ = 0;
                shift_ = 0;
            }
        }
        break;

    case St::NackData:
        if (scl_falling) {
            if (ack_phase_ == 0) {
                ack_phase_ = 1; // stay released: master samples NACK
            } else {
                st_ = St::Idle;
            }
        }
        break;

    case St::TxData:
        if (scl_rising) {
            ++bit_cnt_;
        } else if (scl_falling) {
            if (bit_cnt_ < 8) {
                drive_tx_bit(k, (tx_shift_ >> (7 - bit_cnt_)) & 1);
            } else {
                release_sda(k);
                st_ = St::TxAck;
            }
        }
        break;

    case St::TxAck:
        if (scl_rising) {
            if (cur_sda == Logic::Zero) {
                load_tx_byte(); // master ACK: keep streaming
                bit_cnt_ = 0;
                st_ = St::TxData;
            } else if (cur_sda == Logic::One) {
                st_ = St::Idle; // master NACK ends the read
            } else {
                violation(k, "undefined SDA during master acknowledge");
            }
        }
        break;
    }
}

void attach_i2c_pullups(sim::Kernel &k, const I2cSlaveDesign &d) {
    k.attach_pullup(d.sda);
    k.attach_pullup(d.scl);
}

std::array<uint8_t, kI2cMemBytes> parse_mem_image(const std::string &text) {
    std::array<uint8_t, kI2cMemBytes> mem{};
    std::istringstream in(text);
    std::string line;
    size_t n = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (n >= kI2cMemBytes)
            throw LiteralError("memory image has more than 32 data lines");
        unsigned value = 0;
        if (line.size() != 2)
            throw LiteralError("memory image line " + std::to_string(lineno) +
                               " is not a 2-digit hex byte: " + line);
        for (char c : line) {
            value <<= 4;
            if (c >= '0' && c <= '9') value |= static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f') value |= static_cast<unsigned>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') value |= static_cast<unsigned>(c - 'A' + 10);
            else
                throw LiteralError("memory image line " +
                                   std::to_string(lineno) +
                                   " has a non-hex digit: " + line);
        }
        mem[n++] = static_cast<uint8_t>(value);
    }
    if (n != kI2cMemBytes)
        throw LiteralError("memory image needs exactly 32 byte lines, got " +
                           std::to_string(n));
    return mem;
}

std::string format_mem_image(const std::array<uint8_t, kI2cMemBytes> &mem) {
    std::string out;
    char buf[4];
    for (uint8_t b : mem) {
        std::snprintf(buf, sizeof buf, "%02X\n", b);
        out += buf;
    }
    return out;
}

} // namespace covesim::dut
