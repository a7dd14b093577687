// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "covesim/errors.hpp"
#include "covesim/logic.hpp"

namespace covesim::sim {

/// IEEE 1364 value-change-dump writer, timescale 1 ps. Output is fully
/// deterministic: no dates, ids assigned in registration order.
class VcdWriter {
public:
    explicit VcdWriter(const std::string &path);

    /// Registers a signal under its dot-separated hierarchical name and
    /// returns the VCD identifier code.
    std::string add_signal(const std::string &name, size_t width);

    /// Emits the header: scope tree built from the registered names.
    void write_header();

    void change(const std::string &id, const LogicVector &value, uint64_t t_ps);
    void finish(uint64_t t_ps);

private:
    struct Var {
        std::string path; // hierarchical name
        std::string id;
        size_t width;
    };

    static std::string make_id(size_t n);
    void emit_time(uint64_t t_ps);

    std::ofstream out_;
    std::vector<Var> vars_;
    uint64_t last_time_ = 0;
    bool time_emitted_ = false;
    bool header_done_ = false;
};

} // namespace covesim::sim
