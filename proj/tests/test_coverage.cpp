// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>
#include <set>

#include "covesim/coverage.hpp"

using namespace covesim;
using namespace covesim::cov;

namespace {

CoverBin bin(std::string name, BinMatcher m) { return {std::move(name), std::move(m), 0, 1}; }

CoverageDb sign_db() {
    CoverageDb db;
    db.define_point("a", {bin("neg", BinMatcher::range(-2147483648ll, -1)),
                          bin("zero", BinMatcher::single(0)),
                          bin("pos", BinMatcher::range(1, 2147483647ll))});
    return db;
}

} // namespace

TEST_SUITE("coverage") {

TEST_CASE("bin matchers agree with a brute-force membership oracle") {
    auto single = BinMatcher::single(5);
    auto range = BinMatcher::range(10, 20);
    auto list = BinMatcher::list({-7, 1, 5, 9});
    std::set<int64_t> list_set{-7, 1, 5, 9};
    for (int64_t v = -5000; v < 5000; ++v) {
        CHECK(single.matches(v) == (v == 5));
        CHECK(range.matches(v) == (v >= 10 && v <= 20));
        CHECK(list.matches(v) == (list_set.count(v) > 0));
    }
}

TEST_CASE("percent rendering: exact rationals, ties to even") {
    CHECK(render_percent(percent_ratio(1, 2)) == "50.00");
    CHECK(render_percent(percent_ratio(3, 3)) == "100.00");
    CHECK(render_percent(percent_ratio(0, 7)) == "0.00");
    CHECK(render_percent(percent_ratio(29, 32)) == "90.62"); // 90.625
    CHECK(render_percent(percent_ratio(1, 3)) == "33.33");
    CHECK(render_percent(percent_ratio(2, 3)) == "66.67");
    CHECK(render_percent(percent_ratio(5, 16)) == "31.25");
}

TEST_CASE("sign-partition sampling hits the right bins") {
    auto db = sign_db();
    db.sample({{"a", -5}});
    CHECK(db.point("a").bins()[0].hits == 1);
    CHECK(db.point("a").bins()[1].hits == 0);
    db.sample({{"a", 0}});
    db.sample({{"a", 123}});
    CHECK(render_percent(db.percent("a")) == "100.00");
    CHECK(db.samples() == 3);
}

TEST_CASE("out-of-bin samples land in the unbinned tally") {
    CoverageDb db;
    db.define_point("op", {bin("all", BinMatcher::range(0, 7))});
    db.sample({{"op", 9}});
    CHECK(db.point("op").unbinned() == 1);
    CHECK(render_percent(db.percent("op")) == "0.00");
    db.sample({{"op", 3}});
    CHECK(render_percent(db.percent("op")) == "100.00");
}

TEST_CASE("repeat samples raise hit counts, covered state saturates") {
    CoverageDb db;
    db.define_point("v", {bin("one", BinMatcher::single(1))});
    db.sample({{"v", 1}});
    CHECK(db.point("v").bins()[0].covered());
    db.sample({{"v", 1}});
    CHECK(db.point("v").bins()[0].hits == 2);
    CHECK(db.point("v").covered_bins() == 1);
}

TEST_CASE("unknown sample label raises NameError") {
    auto db = sign_db();
    CHECK_THROWS_AS(db.sample({{"bogus", 1}}), NameError);
}

TEST_CASE("cross bins are the full Cartesian product") {
    CoverageDb db;
    db.define_point("x", {bin("lo", BinMatcher::range(0, 4)),
                          bin("mid", BinMatcher::range(5, 9)),
                          bin("hi", BinMatcher::range(10, 14))});
    db.define_point("y", {bin("a", BinMatcher::single(0)),
                          bin("b", BinMatcher::single(1)),
                          bin("c", BinMatcher::single(2))});
    db.define_cross("xXy", {"x", "y"});
    CHECK(db.cross("xXy").total_bins() == 9);

    db.sample({{"x", 2}, {"y", 1}});
    db.sample({{"x", 12}, {"y", 0}});
    CHECK(db.cross("xXy").covered_bins() == 2);
    CHECK(render_percent(db.percent("xXy")) == "22.22"); // 2/9

    // cross consistency: every cross hit had all members matched
    uint64_t cross_hits = 0;
    for (auto &[tuple, hits] : db.cross("xXy").hits()) cross_hits += hits;
    CHECK(cross_hits == 2);
}

TEST_CASE("cross samples only count when every member matched") {
    CoverageDb db;
    db.define_point("x", {bin("only", BinMatcher::single(1))});
    db.define_point("y", {bin("only", BinMatcher::single(1))});
    db.define_cross("xy", {"x", "y"});
    db.sample({{"x", 1}, {"y", 9}}); // y unbinned
    db.sample({{"x", 1}});           // y absent
    uint64_t total = 0;
    for (auto &[tuple, hits] : db.cross("xy").hits()) total += hits;
    CHECK(total == 0);
    db.sample({{"x", 1}, {"y", 1}});
    total = 0;
    for (auto &[tuple, hits] : db.cross("xy").hits()) total += hits;
    CHECK(total == 1);
}

TEST_CASE("auto-binning a 32-bit variable explodes loudly") {
    CoverageDb db;
    CHECK_THROWS_AS(db.define_point_auto("wide", 0, 4294967295ll),
                    BinExplosionError);
    // signed full range as well
    CHECK_THROWS_AS(db.define_point_auto("wide2", -2147483648ll, 2147483647ll),
                    BinExplosionError);
    // small ones are fine
    db.define_point_auto("addr", 0, 31);
    CHECK(db.point("addr").bins().size() == 32);
}

TEST_CASE("oversized cross products trip the cap") {
    CoverageDb db({.bin_cap = 1000});
    db.define_point_auto("p", 0, 99);
    db.define_point_auto("q", 0, 99);
    CHECK_THROWS_AS(db.define_cross("pXq", {"p", "q"}), BinExplosionError);
}

TEST_CASE("duplicate and missing names are rejected") {
    auto db = sign_db();
    CHECK_THROWS_AS(db.define_point("a", {bin("x", BinMatcher::single(0))}),
                    NameError);
    CHECK_THROWS_AS(db.define_cross("c", {"a", "missing"}), NameError);
    CHECK_THROWS_AS(db.percent("missing"), NameError);
}

TEST_CASE("coverage percent is monotone in samples") {
    auto db = sign_db();
    std::mt19937_64 gen(7);
    Rational last{0, 1};
    for (int i = 0; i < 300; ++i) {
        db.sample({{"a", static_cast<int64_t>(gen() % 401) - 200}});
        Rational now = db.percent("a");
        CHECK(now.num * last.den >= last.num * now.den);
        last = now;
    }
}

TEST_CASE("empty database exports a zero-percent report") {
    CoverageDb db;
    auto snap = db.snapshot();
    CHECK(snap.items.empty());
    CHECK(render_percent(snap.total_percent()) == "0.00");
    auto yaml = export_yaml(snap);
    CHECK(yaml.find("coverage: []") != std::string::npos);
    CHECK(yaml.find("total_percent: 0.00") != std::string::npos);
}

TEST_CASE("export -> import -> re-export is byte-identical") {
    CoverageDb db;
    load_model(db, builtin_model("alu"));
    db.set_seed(7);
    std::mt19937_64 gen(3);
    for (int i = 0; i < 500; ++i) {
        int64_t a = static_cast<int64_t>(gen() % 201) - 100;
        int64_t b = static_cast<int64_t>(gen() % 201) - 100;
        int64_t op = static_cast<int64_t>(gen() % 8);
        db.sample({{"a", a}, {"b", b}, {"op", op}});
    }
    auto yaml1 = export_yaml(db.snapshot());
    auto yaml2 = export_yaml(import_yaml(yaml1));
    CHECK(yaml1 == yaml2);
    // re-export without new samples is also identical
    CHECK(export_yaml(db.snapshot()) == yaml1);
}

TEST_CASE("text report is deterministic and aligned") {
    CoverageDb db;
    load_model(db, builtin_model("adc"));
    db.sample({{"analog_in_tb", 100}});
    auto t1 = export_text(db.snapshot());
    auto t2 = export_text(db.snapshot());
    CHECK(t1 == t2);
    CHECK(t1.find("analog_in_tb") != std::string::npos);
    CHECK(t1.find("TOTAL") != std::string::npos);
    CHECK(t1.find("33.33") != std::string::npos); // 1 of 3 bins
}

TEST_CASE("built-in models have the published shapes") {
    {
        CoverageDb db;
        load_model(db, builtin_model("alu"));
        CHECK(db.point("a").bins().size() == 3);
        CHECK(db.point("b").bins().size() == 3);
        CHECK(db.point("op").bins().size() == 1);
        CHECK(db.cross("aXb").total_bins() == 9);
        CHECK(db.cross("aXop").total_bins() == 3);
        CHECK(db.cross("bXop").total_bins() == 3);
        CHECK(db.cross("aXbXop").total_bins() == 9);
        CHECK(db.item_count() == 7);
    }
    {
        CoverageDb db;
        load_model(db, builtin_model("i2c"));
        CHECK(db.point("c_start").bins().size() == 2);
        CHECK(db.point("c_mem_data").bins().size() == 16);
        CHECK(db.point("c_mem_addr").bins().size() == 32);
        CHECK(db.item_count() == 9);
    }
    {
        CoverageDb db;
        load_model(db, builtin_model("adc"));
        CHECK(db.point("analog_in_tb").bins().size() == 3);
    }
    CHECK_THROWS_AS(builtin_model("cpu"), NameError);
}

TEST_CASE("condition point at one hit bin reports fifty percent") {
    CoverageDb db;
    load_model(db, builtin_model("i2c"));
    db.sample({{"c_start", 1}});
    CHECK(render_percent(db.percent("c_start")) == "50.00");
}

TEST_CASE("model grammar errors carry the line number") {
    CoverageDb db;
    CHECK_THROWS_AS(load_model(db, "point broken"), ModelError);
    CHECK_THROWS_AS(load_model(db, "nonsense foo bar"), ModelError);
    CHECK_THROWS_AS(load_model(db, "cross c = a"), ModelError);
    CHECK_THROWS_AS(load_model(db, "point p bins b=[5:1]"), RangeError);
    try {
        load_model(db, "# fine\npoint p bins oops");
        FAIL("expected ModelError");
    } catch (const ModelError &e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("model grammar round-trips ranges, lists and singles") {
    CoverageDb db;
    load_model(db, "point p bins one=1 r=[2:9] l={10,20,-30}\n"
                   "point q autobins [0:3]\n"
                   "cross pXq = p x q\n");
    CHECK(db.point("p").bins().size() == 3);
    CHECK(db.point("p").bins()[2].matcher.matches(-30));
    CHECK(!db.point("p").bins()[2].matcher.matches(0));
    CHECK(db.cross("pXq").total_bins() == 12);
}

TEST_CASE("weighted totals average by item weight") {
    CoverageDb db;
    db.define_point("half", {bin("a", BinMatcher::single(0)),
                             bin("b", BinMatcher::single(1))});
    db.define_point("full", {bin("a", BinMatcher::single(0))}, 3);
    db.sample({{"half", 0}, {"full", 0}});
    // (1*50 + 3*100) / 4 = 87.50
    CHECK(render_percent(db.total_percent()) == "87.50");
}

} // TEST_SUITE
