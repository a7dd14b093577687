// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "covesim/kernel.hpp"

using namespace covesim;
using namespace covesim::sim;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempPath {
    std::string path;
    explicit TempPath(const std::string &name)
        : path("covesim_test_" + name) {}
    ~TempPath() { std::remove(path.c_str()); }
};

// Counts post-time-zero value changes of a 1-bit VCD variable.
size_t count_toggles(const std::string &vcd, const std::string &var_name) {
    std::istringstream in(vcd);
    std::string line, id;
    while (std::getline(in, line)) {
        if (line.find("$var") == 0 && line.find(" " + var_name + " ") != std::string::npos) {
            std::istringstream ls(line);
            std::string var, wire, width;
            ls >> var >> wire >> width >> id;
        }
        if (line.find("$enddefinitions") == 0) break;
    }
    REQUIRE(!id.empty());
    size_t count = 0;
    uint64_t t = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            t = std::stoull(line.substr(1));
        } else if (t > 0 && line.size() >= 2 && line.substr(1) == id &&
                   (line[0] == '0' || line[0] == '1')) {
            ++count;
        }
    }
    return count;
}

} // namespace

TEST_SUITE("kernel") {

TEST_CASE("same-delta reads see the old value, post-settle reads the new") {
    Kernel k;
    auto a = k.create_signal("top.a", 8);
    std::vector<uint64_t> seen;

    k.spawn("writer", [](Kernel &k, SignalId a, std::vector<uint64_t> &seen) -> Task<> {
        k.write(a, uint64_t{5});
        seen.push_back(k.read(a).is_clean() ? k.read(a).to_unsigned() : 999);
        co_await k.settle();
        seen.push_back(k.read(a).to_unsigned());
    }(k, a, seen));

    auto rep = k.run();
    REQUIRE(seen.size() == 2);
    CHECK(seen[0] == 999); // still all-X in the writing delta
    CHECK(seen[1] == 5);
    CHECK(rep.sim_time_ps == 0);
}

TEST_CASE("tasks spawned at the same time run in spawn order") {
    Kernel k;
    std::vector<int> order;
    for (int i = 0; i < 3; ++i) {
        k.spawn("t" + std::to_string(i),
                [](std::vector<int> &order, int i) -> Task<> {
                    order.push_back(i);
                    co_return;
                }(order, i));
    }
    k.run();
    CHECK(order == std::vector<int>{0, 1, 2});
}

TEST_CASE("rising edge of a 20 ns clock resumes at 10 ns") {
    // Hand-simulated trace: clk starts low at t=0, rises at 10 ns, falls at
    // 20 ns, rises again at 30 ns.
    Kernel k;
    auto clk = k.create_signal("top.clk", 1);
    spawn_clock(k, clk, nanoseconds(20));

    std::vector<uint64_t> rises, falls;
    k.spawn("watch", [](Kernel &k, SignalId clk, std::vector<uint64_t> &rises,
                        std::vector<uint64_t> &falls) -> Task<> {
        co_await k.rising_edge(clk);
        rises.push_back(k.now().ps);
        co_await k.falling_edge(clk);
        falls.push_back(k.now().ps);
        co_await k.rising_edge(clk);
        rises.push_back(k.now().ps);
    }(k, clk, rises, falls));

    k.run();
    CHECK(rises == std::vector<uint64_t>{10000, 30000});
    CHECK(falls == std::vector<uint64_t>{20000});
}

TEST_CASE("await of zero delay resumes in the next delta at the same time") {
    Kernel k;
    uint64_t t_after = 123;
    k.spawn("z", [](Kernel &k, uint64_t &t_after) -> Task<> {
        co_await k.delay(picoseconds(0));
        t_after = k.now().ps;
    }(k, t_after));
    k.run();
    CHECK(t_after == 0);
}

TEST_CASE("one task waiting 100 ns ends the run at 100 ns, DONE") {
    Kernel k;
    auto id = k.spawn("sleeper", [](Kernel &k) -> Task<> {
        co_await k.delay(nanoseconds(100));
    }(k));
    auto rep = k.run();
    CHECK(rep.sim_time_ps == 100000);
    CHECK(k.task_state(id) == TaskState::Done);
}

TEST_CASE("edge wait on a never-toggling signal starves with a diagnostic") {
    Kernel k;
    auto s = k.create_signal("top.idle", 1);
    auto id = k.spawn_test("starved_test", [](Kernel &k, SignalId s) -> Task<> {
        co_await k.rising_edge(s);
    }(k, s));
    auto rep = k.run(nanoseconds(50));
    CHECK(k.task_state(id) == TaskState::Waiting);
    CHECK(!rep.all_passed());
    REQUIRE(rep.tests.size() == 1);
    CHECK(rep.tests[0].message.find("starved") != std::string::npos);
}

TEST_CASE("clock-only run ends at the horizon") {
    Kernel k;
    auto clk = k.create_signal("top.clk", 1);
    spawn_clock(k, clk, nanoseconds(20));
    auto rep = k.run(nanoseconds(100));
    CHECK(rep.sim_time_ps == 100000);
}

TEST_CASE("VCD of a 100 ns clock-only run holds 10 toggles") {
    TempPath vcd("clock.vcd");
    {
        Kernel k;
        auto clk = k.create_signal("top.clk", 1);
        spawn_clock(k, clk, nanoseconds(20));
        k.dump_vcd(vcd.path);
        k.run(nanoseconds(100));
    }
    auto text = read_file(vcd.path);
    CHECK(text.find("$timescale 1ps $end") != std::string::npos);
    CHECK(count_toggles(text, "clk") == 10);
}

TEST_CASE("VCD with no signals is still well formed") {
    TempPath vcd("empty.vcd");
    {
        Kernel k;
        k.spawn("t", [](Kernel &k) -> Task<> {
            co_await k.delay(nanoseconds(1));
        }(k));
        k.dump_vcd(vcd.path);
        k.run();
    }
    auto text = read_file(vcd.path);
    CHECK(text.find("$enddefinitions $end") != std::string::npos);
    CHECK(text.find("$var") == std::string::npos);
}

TEST_CASE("VCD renders X and Z as x and z") {
    TempPath vcd("xz.vcd");
    {
        Kernel k;
        auto s = k.create_signal("top.s", 2);
        k.spawn("t", [](Kernel &k, SignalId s) -> Task<> {
            LogicVector v(2);
            v.set_bit(0, Logic::Z);
            v.set_bit(1, Logic::X);
            k.write(s, v);
            co_await k.settle();
        }(k, s));
        k.dump_vcd(vcd.path);
        k.run();
    }
    auto text = read_file(vcd.path);
    CHECK(text.find("bxz ") != std::string::npos);
}

TEST_CASE("identical runs produce byte-identical VCD files") {
    TempPath v1("det1.vcd"), v2("det2.vcd");
    auto build_and_run = [](const std::string &path) {
        Kernel k;
        auto clk = k.create_signal("top.clk", 1);
        auto d = k.create_signal("top.data", 8);
        spawn_clock(k, clk, nanoseconds(20));
        k.spawn("drv", [](Kernel &k, SignalId clk, SignalId d) -> Task<> {
            for (uint64_t i = 0; i < 16; ++i) {
                co_await k.rising_edge(clk);
                k.write(d, (i * 37) & 0xFF);
            }
        }(k, clk, d));
        k.dump_vcd(path);
        return k.run();
    };
    auto r1 = build_and_run(v1.path);
    auto r2 = build_and_run(v2.path);
    CHECK(r1.events == r2.events);
    CHECK(r1.sim_time_ps == r2.sim_time_ps);
    auto s1 = read_file(v1.path), s2 = read_file(v2.path);
    CHECK(!s1.empty());
    CHECK(s1 == s2);
}

TEST_CASE("open-drain bus: slave zero beats master release under pull-up") {
    Kernel k;
    auto sda = k.create_signal("bus.sda", 1);
    k.attach_pullup(sda);
    auto master = k.new_writer();
    auto slave = k.new_writer();
    Logic idle = Logic::X, driven = Logic::X;

    k.spawn("t", [](Kernel &k, SignalId sda, WriterId m, WriterId s,
                    Logic &idle, Logic &driven) -> Task<> {
        k.release(sda, m);
        k.release(sda, s);
        co_await k.settle();
        idle = k.read_bit(sda);
        k.write(sda, LogicVector::from_unsigned(0, 1), s);
        co_await k.settle();
        driven = k.read_bit(sda);
    }(k, sda, master, slave, idle, driven));

    k.run();
    CHECK(idle == Logic::One);    // pulled up when both released
    CHECK(driven == Logic::Zero); // slave zero wins
}

TEST_CASE("conflicting strong writers resolve to X") {
    Kernel k;
    auto s = k.create_signal("top.s", 1);
    auto w1 = k.new_writer(), w2 = k.new_writer();
    Logic got = Logic::Zero;
    k.spawn("t", [](Kernel &k, SignalId s, WriterId w1, WriterId w2,
                    Logic &got) -> Task<> {
        k.write(s, LogicVector::from_unsigned(1, 1), w1);
        k.write(s, LogicVector::from_unsigned(0, 1), w2);
        co_await k.settle();
        got = k.read_bit(s);
    }(k, s, w1, w2, got));
    k.run();
    CHECK(got == Logic::X);
}

TEST_CASE("combinational loop trips the delta limit") {
    Kernel k({.delta_limit = 100});
    auto a = k.create_signal("top.a", 1);
    auto b = k.create_signal("top.b", 1);
    auto invert_into = [](Kernel &k, SignalId from, SignalId to) -> Task<> {
        for (;;) {
            co_await k.any_edge(from);
            k.write(to, bitwise_not(k.read(from)));
        }
    };
    auto copy_into = [](Kernel &k, SignalId from, SignalId to) -> Task<> {
        for (;;) {
            co_await k.any_edge(from);
            k.write(to, k.read(from));
        }
    };
    k.spawn_daemon("inv", invert_into(k, a, b));
    k.spawn_daemon("buf", copy_into(k, b, a));
    k.spawn("kick", [](Kernel &k, SignalId a) -> Task<> {
        k.write(a, uint64_t{0});
        co_await k.delay(nanoseconds(10));
    }(k, a));
    CHECK_THROWS_AS(k.run(), OscillationError);
}

TEST_CASE("spawn after run completion raises KernelClosedError") {
    Kernel k;
    k.spawn("t", [](Kernel &k) -> Task<> {
        co_await k.delay(nanoseconds(1));
    }(k));
    k.run();
    CHECK_THROWS_AS(k.spawn("late", [](Kernel &k) -> Task<> {
                        co_await k.delay(nanoseconds(1));
                    }(k)),
                    KernelClosedError);
}

TEST_CASE("write errors") {
    Kernel k;
    auto s = k.create_signal("top.s", 4);
    CHECK_THROWS_AS(k.write(s, LogicVector::from_unsigned(0, 8)), WidthError);
    CHECK_THROWS_AS(k.write(SignalId{99}, LogicVector::from_unsigned(0, 4)),
                    NameError);
    CHECK_THROWS_AS(k.signal("nope"), NameError);
    CHECK_THROWS_AS(k.create_signal("top.s", 4), NameError);
}

TEST_CASE("failed test task does not abort siblings unless fail-fast") {
    auto body_fail = [](Kernel &k) -> Task<> {
        co_await k.delay(nanoseconds(1));
        throw Error("deliberate failure");
    };
    auto body_ok = [](Kernel &k) -> Task<> {
        co_await k.delay(nanoseconds(5));
    };

    {
        Kernel k;
        k.spawn_test("fails", body_fail(k));
        k.spawn_test("passes", body_ok(k));
        auto rep = k.run();
        REQUIRE(rep.tests.size() == 2);
        CHECK(rep.tests[0].state == TaskState::Failed);
        CHECK(rep.tests[0].message == "deliberate failure");
        CHECK(rep.tests[1].state == TaskState::Done);
        CHECK(!rep.all_passed());
    }
    {
        Kernel k({.fail_fast = true});
        k.spawn_test("fails", body_fail(k));
        k.spawn_test("passes", body_ok(k));
        auto rep = k.run();
        CHECK(rep.tests[0].state == TaskState::Failed);
        CHECK(rep.tests[1].state != TaskState::Done); // never completed
    }
}

TEST_CASE("nested tasks propagate values and exceptions") {
    Kernel k;
    auto inner_value = [](Kernel &k) -> Task<int> {
        co_await k.delay(nanoseconds(2));
        co_return 42;
    };
    auto inner_throw = [](Kernel &k) -> Task<int> {
        co_await k.delay(nanoseconds(1));
        throw RangeError("inner boom");
    };
    int got = 0;
    bool caught = false;
    k.spawn("outer", [](Kernel &k, auto inner_value, auto inner_throw, int &got,
                        bool &caught) -> Task<> {
        got = co_await inner_value(k);
        try {
            co_await inner_throw(k);
        } catch (const RangeError &) {
            caught = true;
        }
    }(k, inner_value, inner_throw, got, caught));
    auto rep = k.run();
    CHECK(got == 42);
    CHECK(caught);
    CHECK(rep.sim_time_ps == 3000);
}

TEST_CASE("transaction counter lands in the report") {
    Kernel k;
    k.spawn("t", [](Kernel &k) -> Task<> {
        for (int i = 0; i < 7; ++i) {
            k.count_transaction();
            co_await k.delay(nanoseconds(1));
        }
    }(k));
    auto rep = k.run();
    CHECK(rep.transactions == 7);
}

TEST_CASE("X-to-one transitions are not rising edges") {
    // signals come up all-X; only a real 0 -> 1 may clock anything
    Kernel k;
    auto s = k.create_signal("top.s", 1);
    std::vector<uint64_t> rises;
    k.spawn_test("watch", [](Kernel &k, SignalId s,
                             std::vector<uint64_t> &rises) -> Task<> {
        co_await k.rising_edge(s);
        rises.push_back(k.now().ps);
    }(k, s, rises));
    k.spawn_daemon("stim", [](Kernel &k, SignalId s) -> Task<> {
        co_await k.delay(nanoseconds(1));
        k.write(s, uint64_t{1}); // X -> 1: must not count
        co_await k.delay(nanoseconds(1));
        k.write(s, uint64_t{0});
        co_await k.delay(nanoseconds(1));
        k.write(s, uint64_t{1}); // 0 -> 1: the real edge
    }(k, s));
    auto rep = k.run();
    CHECK(rep.all_passed());
    CHECK(rises == std::vector<uint64_t>{3000});
}

TEST_CASE("any_edge on an empty signal list is rejected") {
    Kernel k;
    CHECK_THROWS_AS(static_cast<void>(k.any_edge(std::vector<SignalId>{})),
                    RangeError);
}

TEST_CASE("VCD timestamps are monotonically non-decreasing") {
    TempPath vcd("mono.vcd");
    {
        Kernel k;
        auto clk = k.create_signal("top.clk", 1);
        auto d = k.create_signal("top.d", 4);
        spawn_clock(k, clk, nanoseconds(14));
        k.spawn("drv", [](Kernel &k, SignalId clk, SignalId d) -> Task<> {
            for (uint64_t i = 0; i < 9; ++i) {
                co_await k.rising_edge(clk);
                k.write(d, i & 0xF);
            }
        }(k, clk, d));
        k.dump_vcd(vcd.path);
        k.run();
    }
    std::istringstream in(read_file(vcd.path));
    std::string line;
    long long last = -1;
    bool past_header = false;
    while (std::getline(in, line)) {
        if (line.find("$enddefinitions") == 0) past_header = true;
        if (past_header && !line.empty() && line[0] == '#') {
            long long t = std::stoll(line.substr(1));
            CHECK(t >= last);
            last = t;
        }
    }
    CHECK(last >= 0);
}

TEST_CASE("multi-signal any_edge fires once per wait") {
    Kernel k;
    auto a = k.create_signal("top.a", 1);
    auto b = k.create_signal("top.b", 1);
    int wakes = 0;
    k.spawn_daemon("stim", [](Kernel &k, SignalId a, SignalId b) -> Task<> {
        co_await k.delay(nanoseconds(1));
        k.write(a, uint64_t{1});
        k.write(b, uint64_t{1}); // same settle: both change together
        co_await k.delay(nanoseconds(1));
        k.write(a, uint64_t{0});
    }(k, a, b));
    k.spawn("watch", [](Kernel &k, SignalId a, SignalId b, int &wakes) -> Task<> {
        co_await k.any_edge({a, b});
        ++wakes;
        co_await k.any_edge({a, b});
        ++wakes;
    }(k, a, b, wakes));
    k.run();
    CHECK(wakes == 2);
}

} // TEST_SUITE
