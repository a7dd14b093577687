// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/vcd.hpp"

#include <algorithm>

namespace covesim::sim {

VcdWriter::VcdWriter(const std::string &path) : out_(path, std::ios::trunc) {
    if (!out_.is_open())
        throw IoError("cannot open VCD output file: " + path);
}

std::string VcdWriter::make_id(size_t n) {
    // printable identifier codes '!'..'~'
    std::string s;
    do {
        s.push_back(static_cast<char>('!' + n % 94));
        n /= 94;
    } while (n > 0);
    return s;
}

std::string VcdWriter::add_signal(const std::string &name, size_t width) {
    std::string id = make_id(vars_.size());
    vars_.push_back({name, id, width});
    return id;
}

void VcdWriter::write_header() {
    out_ << "$version covesim $end\n";
    out_ << "$timescale 1ps $end\n";

    // Scope tree from dot-separated paths, first-appearance order.
    std::vector<std::string> open_scopes;
    auto close_to = [&](size_t depth) {
        while (open_scopes.size() > depth) {
            out_ << "$upscope $end\n";
            open_scopes.pop_back();
        }
    };

    for (const Var &v : vars_) {
        std::vector<std::string> parts;
        size_t start = 0;
        for (size_t pos = v.path.find('.'); pos != std::string::npos;
             pos = v.path.find('.', start)) {
            parts.push_back(v.path.substr(start, pos - start));
            start = pos + 1;
        }
        std::string leaf = v.path.substr(start);

        size_t common = 0;
        while (common < parts.size() && common < open_scopes.size() &&
               parts[common] == open_scopes[common])
            ++common;
        close_to(common);
        for (size_t i = common; i < parts.size(); ++i) {
            out_ << "$scope module " << parts[i] << " $end\n";
            open_scopes.push_back(parts[i]);
        }
        out_ << "$var wire " << v.width << " " << v.id << " " << leaf
             << " $end\n";
    }
    close_to(0);
    out_ << "$enddefinitions $end\n";
    header_done_ = true;
}

void VcdWriter::emit_time(uint64_t t_ps) {
    if (!time_emitted_ || t_ps != last_time_) {
        out_ << "#" << t_ps << "\n";
        last_time_ = t_ps;
        time_emitted_ = true;
    }
}

void VcdWriter::change(const std::string &id, const LogicVector &value,
                       uint64_t t_ps) {
    if (!header_done_) return;
    emit_time(t_ps);
    auto render = [](Logic b) {
        switch (b) {
        case Logic::Zero: return '0';
        case Logic::One: return '1';
        case Logic::Z: return 'z';
        default: return 'x';
        }
    };
    if (value.width() == 1) {
        out_ << render(value.bit(0)) << id << "\n";
    } else {
        out_ << "b";
        for (size_t i = 0; i < value.width(); ++i)
            out_ << render(value.bit(value.width() - 1 - i));
        out_ << " " << id << "\n";
    }
}

void VcdWriter::finish(uint64_t t_ps) {
    if (!header_done_) return;
    emit_time(t_ps);
    out_.flush();
}

} // namespace covesim::sim
