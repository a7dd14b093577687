// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/coverage.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace covesim::cov {

// --- exact percent math ---

Rational Rational::make(long long num, long long den) {
    if (den == 0) throw RangeError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

Rational Rational::operator+(const Rational &o) const {
    __int128 n = static_cast<__int128>(num) * o.den +
                 static_cast<__int128>(o.num) * den;
    __int128 d = static_cast<__int128>(den) * o.den;
    auto gcd128 = [](__int128 a, __int128 b) {
        if (a < 0) a = -a;
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    };
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    constexpr __int128 kMax = std::numeric_limits<long long>::max();
    if (n > kMax || n < -kMax || d > kMax)
        throw RangeError("rational overflow");
    return {static_cast<long long>(n), static_cast<long long>(d)};
}

Rational percent_ratio(uint64_t covered, uint64_t total) {
    if (total == 0) return {0, 1};
    return Rational::make(static_cast<long long>(covered) * 100,
                          static_cast<long long>(total));
}

std::string render_percent(const Rational &r) {
    // hundredths of a percent, ties to even
    __int128 scaled = static_cast<__int128>(r.num) * 100;
    __int128 q = scaled / r.den;
    __int128 rem = scaled % r.den;
    __int128 twice = rem * 2;
    if (twice > r.den || (twice == r.den && (q % 2) != 0)) ++q;
    auto h = static_cast<long long>(q);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld.%02lld", h / 100, h % 100);
    return buf;
}

// --- matchers and items ---

BinMatcher BinMatcher::single(int64_t v) { return range(v, v); }

BinMatcher BinMatcher::range(int64_t lo, int64_t hi) {
    if (lo > hi) throw RangeError("bin range lo > hi");
    BinMatcher m;
    m.ranges_.emplace_back(lo, hi);
    return m;
}

BinMatcher BinMatcher::list(std::vector<int64_t> values) {
    if (values.empty()) throw RangeError("bin value list is empty");
    BinMatcher m;
    for (int64_t v : values) m.ranges_.emplace_back(v, v);
    return m;
}

bool BinMatcher::matches(int64_t v) const {
    return std::any_of(ranges_.begin(), ranges_.end(),
                       [v](const auto &r) { return v >= r.first && v <= r.second; });
}

std::string BinMatcher::spec_str() const {
    if (ranges_.size() == 1) {
        auto [lo, hi] = ranges_[0];
        if (lo == hi) return std::to_string(lo);
        return "[" + std::to_string(lo) + ":" + std::to_string(hi) + "]";
    }
    std::string s = "{";
    for (size_t i = 0; i < ranges_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(ranges_[i].first);
    }
    return s + "}";
}

CoverPoint::CoverPoint(std::string name, std::string label,
                       std::vector<CoverBin> bins, uint64_t weight)
    : name_(std::move(name)), label_(std::move(label)), bins_(std::move(bins)),
      weight_(weight) {
    if (bins_.empty())
        throw RangeError("coverpoint '" + name_ + "' has no bins");
    for (size_t i = 0; i < bins_.size(); ++i)
        for (size_t j = i + 1; j < bins_.size(); ++j)
            if (bins_[i].name == bins_[j].name)
                throw NameError("duplicate bin name '" + bins_[i].name +
                                "' in coverpoint " + name_);
}

int CoverPoint::sample(int64_t v) {
    int first = -1;
    for (size_t i = 0; i < bins_.size(); ++i) {
        if (bins_[i].matcher.matches(v)) {
            ++bins_[i].hits;
            if (first < 0) first = static_cast<int>(i);
        }
    }
    if (first < 0) ++unbinned_;
    return first;
}

uint64_t CoverPoint::covered_bins() const {
    return static_cast<uint64_t>(
        std::count_if(bins_.begin(), bins_.end(),
                      [](const CoverBin &b) { return b.covered(); }));
}

CoverCross::CoverCross(std::string name, std::vector<uint32_t> members,
                       uint64_t total_bins, uint64_t weight)
    : name_(std::move(name)), members_(std::move(members)),
      total_bins_(total_bins), weight_(weight) {}

void CoverCross::sample(const std::vector<uint32_t> &tuple) { ++hits_[tuple]; }

// --- database ---

CoverageDb::CoverageDb(CoverageConfig cfg) : cfg_(cfg) {}

int CoverageDb::find_point(std::string_view name) const {
    for (size_t i = 0; i < points_.size(); ++i)
        if (points_[i].name() == name) return static_cast<int>(i);
    return -1;
}

int CoverageDb::find_cross(std::string_view name) const {
    for (size_t i = 0; i < crosses_.size(); ++i)
        if (crosses_[i].name() == name) return static_cast<int>(i);
    return -1;
}

void CoverageDb::define_point(std::string name, std::vector<CoverBin> bins,
                              uint64_t weight, std::string label) {
    if (find_point(name) >= 0 || find_cross(name) >= 0)
        throw NameError("duplicate coverage item: " + name);
    if (bins.size() > cfg_.bin_cap)
        throw BinExplosionError("coverpoint '" + name + "' wants " +
                                std::to_string(bins.size()) +
                                " bins, cap is " + std::to_string(cfg_.bin_cap));
    if (label.empty()) label = name;
    points_.emplace_back(std::move(name), std::move(label), std::move(bins),
                         weight);
    order_.emplace_back(false, static_cast<uint32_t>(points_.size() - 1));
}

void CoverageDb::define_point_auto(std::string name, int64_t lo, int64_t hi,
                                   uint64_t weight) {
    if (lo > hi) throw RangeError("auto bins: lo > hi");
    uint64_t count = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
    if (count == 0 || count > cfg_.bin_cap)
        throw BinExplosionError(
            "auto bins over [" + std::to_string(lo) + ", " + std::to_string(hi) +
            "] would create " + (count == 0 ? std::string("2^64") : std::to_string(count)) +
            " bins, cap is " + std::to_string(cfg_.bin_cap));
    std::vector<CoverBin> bins;
    bins.reserve(count);
    for (int64_t v = lo;; ++v) {
        bins.push_back({std::to_string(v), BinMatcher::single(v), 0, 1});
        if (v == hi) break;
    }
    define_point(std::move(name), std::move(bins), weight);
}

void CoverageDb::define_cross(std::string name,
                              const std::vector<std::string> &points,
                              uint64_t weight) {
    if (find_point(name) >= 0 || find_cross(name) >= 0)
        throw NameError("duplicate coverage item: " + name);
    if (points.size() < 2)
        throw RangeError("cross '" + name + "' needs at least 2 points");
    std::vector<uint32_t> members;
    uint64_t product = 1;
    for (const auto &p : points) {
        int idx = find_point(p);
        if (idx < 0)
            throw NameError("cross '" + name + "' references unknown point " + p);
        members.push_back(static_cast<uint32_t>(idx));
        uint64_t n = points_[idx].bins().size();
        if (product > cfg_.bin_cap / n)
            throw BinExplosionError("cross '" + name + "' bin product exceeds cap " +
                                    std::to_string(cfg_.bin_cap));
        product *= n;
    }
    crosses_.emplace_back(std::move(name), std::move(members), product, weight);
    order_.emplace_back(true, static_cast<uint32_t>(crosses_.size() - 1));
}

void CoverageDb::sample(const std::map<std::string, int64_t> &values) {
    point_match_scratch_.assign(points_.size(), -1);
    for (const auto &[label, value] : values) {
        bool found = false;
        for (size_t i = 0; i < points_.size(); ++i) {
            if (points_[i].label() == label) {
                point_match_scratch_[i] = points_[i].sample(value);
                found = true;
            }
        }
        if (!found) throw NameError("sample of unknown coverage label: " + label);
    }
    std::vector<uint32_t> tuple;
    for (auto &cross : crosses_) {
        tuple.clear();
        bool all = true;
        for (uint32_t m : cross.members()) {
            int idx = point_match_scratch_[m];
            if (idx < 0) {
                all = false;
                break;
            }
            tuple.push_back(static_cast<uint32_t>(idx));
        }
        if (all) cross.sample(tuple);
    }
    ++samples_;
}

bool CoverageDb::has_point(std::string_view name) const {
    return find_point(name) >= 0;
}

const CoverPoint &CoverageDb::point(std::string_view name) const {
    int idx = find_point(name);
    if (idx < 0) throw NameError("unknown coverpoint: " + std::string(name));
    return points_[idx];
}

const CoverCross &CoverageDb::cross(std::string_view name) const {
    int idx = find_cross(name);
    if (idx < 0) throw NameError("unknown cross: " + std::string(name));
    return crosses_[idx];
}

Rational CoverageDb::percent(std::string_view item_name) const {
    int idx = find_point(item_name);
    if (idx >= 0)
        return percent_ratio(points_[idx].covered_bins(),
                             points_[idx].bins().size());
    idx = find_cross(item_name);
    if (idx >= 0)
        return percent_ratio(crosses_[idx].covered_bins(),
                             crosses_[idx].total_bins());
    throw NameError("unknown coverage item: " + std::string(item_name));
}

Rational CoverageDb::total_percent() const { return snapshot().total_percent(); }

CoverageSnapshot CoverageDb::snapshot() const {
    CoverageSnapshot snap;
    snap.samples = samples_;
    snap.seed = seed_;

    // Fully enumerated cross bins only while the product stays readable.
    constexpr uint64_t kEnumerateLimit = 4096;

    for (auto [is_cross, idx] : order_) {
        ItemSnapshot item;
        if (!is_cross) {
            const CoverPoint &p = points_[idx];
            item.name = p.name();
            item.kind = "point";
            item.weight = p.weight();
            item.total_bins = p.bins().size();
            item.unbinned = p.unbinned();
            for (const CoverBin &b : p.bins())
                item.bins.push_back({b.name, b.hits, b.at_least, b.covered()});
        } else {
            const CoverCross &c = crosses_[idx];
            item.name = c.name();
            item.kind = "cross";
            item.weight = c.weight();
            item.total_bins = c.total_bins();
            auto tuple_name = [&](const std::vector<uint32_t> &tuple) {
                std::string s;
                for (size_t i = 0; i < tuple.size(); ++i) {
                    if (i) s += ".";
                    s += points_[c.members()[i]].bins()[tuple[i]].name;
                }
                return s;
            };
            if (c.total_bins() <= kEnumerateLimit) {
                std::vector<uint32_t> tuple(c.members().size(), 0);
                for (;;) {
                    auto it = c.hits().find(tuple);
                    uint64_t hits = it == c.hits().end() ? 0 : it->second;
                    item.bins.push_back({tuple_name(tuple), hits, 1, hits >= 1});
                    // odometer increment, last member fastest
                    size_t i = tuple.size();
                    while (i > 0) {
                        --i;
                        if (++tuple[i] <
                            points_[c.members()[i]].bins().size())
                            break;
                        tuple[i] = 0;
                        if (i == 0) goto done;
                    }
                }
            done:;
            } else {
                for (const auto &[tuple, hits] : c.hits())
                    item.bins.push_back({tuple_name(tuple), hits, 1, hits >= 1});
            }
        }
        item.covered_bins = static_cast<uint64_t>(
            std::count_if(item.bins.begin(), item.bins.end(),
                          [](const BinSnapshot &b) { return b.covered; }));
        snap.items.push_back(std::move(item));
    }
    return snap;
}

Rational CoverageSnapshot::total_percent() const {
    if (items.empty()) return {0, 1};
    Rational sum{0, 1};
    long long total_weight = 0;
    for (const auto &item : items) {
        Rational p = item.percent();
        sum = sum + Rational::make(p.num * static_cast<long long>(item.weight),
                                   p.den);
        total_weight += static_cast<long long>(item.weight);
    }
    if (total_weight == 0) return {0, 1};
    return Rational::make(sum.num, sum.den * total_weight);
}

// --- YAML export / import ---

std::string export_yaml(const CoverageSnapshot &snap) {
    std::ostringstream out;
    if (snap.items.empty()) {
        out << "coverage: []\n";
    } else {
        out << "coverage:\n";
        for (const auto &item : snap.items) {
            out << "  - name: " << item.name << "\n";
            out << "    kind: " << item.kind << "\n";
            out << "    percent: " << render_percent(item.percent()) << "\n";
            out << "    weight: " << item.weight << "\n";
            if (item.kind == "point")
                out << "    unbinned: " << item.unbinned << "\n";
            else
                out << "    total_bins: " << item.total_bins << "\n";
            out << "    bins:\n";
            for (const auto &b : item.bins) {
                out << "      - {name: \"" << b.name << "\", hits: " << b.hits
                    << ", at_least: " << b.at_least << ", covered: "
                    << (b.covered ? "true" : "false") << "}\n";
            }
        }
    }
    out << "total_percent: " << render_percent(snap.total_percent()) << "\n";
    out << "samples: " << snap.samples << "\n";
    out << "seed: " << snap.seed << "\n";
    return out.str();
}

namespace {

bool consume(std::string_view &line, std::string_view prefix) {
    if (line.substr(0, prefix.size()) != prefix) return false;
    line.remove_prefix(prefix.size());
    return true;
}

uint64_t parse_u64(std::string_view s, const char *what) {
    uint64_t v = 0;
    if (s.empty()) throw ModelError(std::string("expected number for ") + what);
    for (char c : s) {
        if (c < '0' || c > '9')
            throw ModelError(std::string("bad number for ") + what + ": " +
                             std::string(s));
        v = v * 10 + static_cast<uint64_t>(c - '0');
    }
    return v;
}

} // namespace

CoverageSnapshot import_yaml(const std::string &text) {
    CoverageSnapshot snap;
    std::istringstream in(text);
    std::string raw;
    ItemSnapshot *cur = nullptr;
    while (std::getline(in, raw)) {
        std::string_view line(raw);
        if (line.empty()) continue;
        if (consume(line, "coverage:")) continue;
        if (consume(line, "  - name: ")) {
            snap.items.emplace_back();
            cur = &snap.items.back();
            cur->name = std::string(line);
        } else if (consume(line, "    kind: ")) {
            cur->kind = std::string(line);
        } else if (consume(line, "    percent: ")) {
            // recomputed from bins on export
        } else if (consume(line, "    weight: ")) {
            cur->weight = parse_u64(line, "weight");
        } else if (consume(line, "    unbinned: ")) {
            cur->unbinned = parse_u64(line, "unbinned");
        } else if (consume(line, "    total_bins: ")) {
            cur->total_bins = parse_u64(line, "total_bins");
        } else if (consume(line, "    bins:")) {
            continue;
        } else if (consume(line, "      - {name: \"")) {
            BinSnapshot b;
            size_t q = line.find('"');
            if (q == std::string_view::npos)
                throw ModelError("unterminated bin name in YAML");
            b.name = std::string(line.substr(0, q));
            line.remove_prefix(q + 1);
            if (!consume(line, ", hits: "))
                throw ModelError("expected hits field in YAML bin");
            size_t c = line.find(',');
            b.hits = parse_u64(line.substr(0, c), "hits");
            line.remove_prefix(c);
            if (!consume(line, ", at_least: "))
                throw ModelError("expected at_least field in YAML bin");
            c = line.find(',');
            b.at_least = parse_u64(line.substr(0, c), "at_least");
            line.remove_prefix(c);
            if (!consume(line, ", covered: "))
                throw ModelError("expected covered field in YAML bin");
            b.covered = line.substr(0, 4) == "true";
            cur->bins.push_back(std::move(b));
        } else if (consume(line, "total_percent: ")) {
            // recomputed
        } else if (consume(line, "samples: ")) {
            snap.samples = parse_u64(line, "samples");
        } else if (consume(line, "seed: ")) {
            snap.seed = parse_u64(line, "seed");
        } else {
            throw ModelError("unrecognized YAML line: " + raw);
        }
    }
    for (auto &item : snap.items) {
        if (item.kind == "point") item.total_bins = item.bins.size();
        item.covered_bins = static_cast<uint64_t>(
            std::count_if(item.bins.begin(), item.bins.end(),
                          [](const BinSnapshot &b) { return b.covered; }));
    }
    return snap;
}

std::string export_text(const CoverageSnapshot &snap) {
    size_t name_w = 4;
    for (const auto &item : snap.items) name_w = std::max(name_w, item.name.size());
    name_w += 2;

    std::ostringstream out;
    out << "coverage report: samples=" << snap.samples << " seed=" << snap.seed
        << "\n";
    auto pad = [&out](const std::string &s, size_t w) {
        out << s;
        for (size_t i = s.size(); i < w; ++i) out << ' ';
    };
    pad("name", name_w);
    out << "kind   bins     covered  unbinned  percent\n";
    for (const auto &item : snap.items) {
        pad(item.name, name_w);
        pad(item.kind, 7);
        pad(std::to_string(item.total_bins), 9);
        pad(std::to_string(item.covered_bins), 9);
        pad(item.kind == "point" ? std::to_string(item.unbinned) : "-", 10);
        out << render_percent(item.percent()) << "\n";
    }
    pad("TOTAL", name_w);
    pad("", 7 + 9 + 9 + 10);
    out << render_percent(snap.total_percent()) << "\n";
    return out.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out.is_open()) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out.good()) throw IoError("write failed: " + path);
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --- model files ---

namespace {

std::vector<std::string> tokenize(const std::string &line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

int64_t parse_i64(std::string_view s, int lineno) {
    if (s.empty()) throw ModelError("empty integer on line " + std::to_string(lineno));
    bool neg = s[0] == '-';
    if (neg) s.remove_prefix(1);
    if (s.empty()) throw ModelError("bad integer on line " + std::to_string(lineno));
    int64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw ModelError("bad integer '" + std::string(s) + "' on line " +
                             std::to_string(lineno));
        v = v * 10 + (c - '0');
    }
    return neg ? -v : v;
}

CoverBin parse_bin(const std::string &tok, int lineno) {
    size_t eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ModelError("expected name=<spec> bin on line " +
                         std::to_string(lineno) + ": " + tok);
    std::string name = tok.substr(0, eq);
    std::string spec = tok.substr(eq + 1);
    if (spec.empty())
        throw ModelError("empty bin spec on line " + std::to_string(lineno));
    if (spec.front() == '[') {
        if (spec.back() != ']')
            throw ModelError("unterminated range on line " + std::to_string(lineno));
        std::string body = spec.substr(1, spec.size() - 2);
        size_t colon = body.find(':');
        if (colon == std::string::npos)
            throw ModelError("range needs lo:hi on line " + std::to_string(lineno));
        int64_t lo = parse_i64(body.substr(0, colon), lineno);
        int64_t hi = parse_i64(body.substr(colon + 1), lineno);
        return {name, BinMatcher::range(lo, hi), 0, 1};
    }
    if (spec.front() == '{') {
        if (spec.back() != '}')
            throw ModelError("unterminated list on line " + std::to_string(lineno));
        std::string body = spec.substr(1, spec.size() - 2);
        std::vector<int64_t> values;
        size_t start = 0;
        while (start <= body.size()) {
            size_t comma = body.find(',', start);
            std::string piece = body.substr(
                start, comma == std::string::npos ? std::string::npos
                                                  : comma - start);
            values.push_back(parse_i64(piece, lineno));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return {name, BinMatcher::list(std::move(values)), 0, 1};
    }
    return {name, BinMatcher::single(parse_i64(spec, lineno)), 0, 1};
}

} // namespace

void load_model(CoverageDb &db, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "point") {
            if (toks.size() < 4)
                throw ModelError("point needs a name and bins on line " +
                                 std::to_string(lineno));
            if (toks[2] == "bins") {
                std::vector<CoverBin> bins;
                for (size_t i = 3; i < toks.size(); ++i)
                    bins.push_back(parse_bin(toks[i], lineno));
                db.define_point(toks[1], std::move(bins));
            } else if (toks[2] == "autobins") {
                // point <name> autobins [lo:hi]
                std::string spec = toks[3];
                if (spec.front() != '[' || spec.back() != ']')
                    throw ModelError("autobins needs [lo:hi] on line " +
                                     std::to_string(lineno));
                std::string body = spec.substr(1, spec.size() - 2);
                size_t colon = body.find(':');
                if (colon == std::string::npos)
                    throw ModelError("autobins needs lo:hi on line " +
                                     std::to_string(lineno));
                db.define_point_auto(toks[1],
                                     parse_i64(body.substr(0, colon), lineno),
                                     parse_i64(body.substr(colon + 1), lineno));
            } else {
                throw ModelError("expected 'bins' or 'autobins' on line " +
                                 std::to_string(lineno));
            }
        } else if (toks[0] == "cross") {
            // cross <name> = p1 x p2 [x p3 ...]
            if (toks.size() < 6 || toks[2] != "=")
                throw ModelError("cross needs '<name> = p1 x p2' on line " +
                                 std::to_string(lineno));
            std::vector<std::string> members;
            members.push_back(toks[3]);
            for (size_t i = 4; i + 1 < toks.size(); i += 2) {
                if (toks[i] != "x")
                    throw ModelError("expected 'x' between cross members on line " +
                                     std::to_string(lineno));
                members.push_back(toks[i + 1]);
            }
            db.define_cross(toks[1], members);
        } else {
            throw ModelError("unknown directive '" + toks[0] + "' on line " +
                             std::to_string(lineno));
        }
    }
}

} // namespace covesim::cov
