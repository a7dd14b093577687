// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covesim/errors.hpp"

namespace covesim::cov {

/// A requested bin set would exceed the configured cap. Auto-binning wide
/// variables and oversized crosses fail loudly instead of exhausting memory.
class BinExplosionError : public Error {
public:
    using Error::Error;
};

/// Malformed coverage model definition text.
class ModelError : public Error {
public:
    using Error::Error;
};

/// Exact percent value; rendering rounds only at the very end.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational make(long long num, long long den);
    Rational operator+(const Rational &o) const;
    bool operator==(const Rational &o) const = default;
};

/// Renders num/den percent with two decimals, ties to even (29/32 of 100%
/// prints as 90.62).
std::string render_percent(const Rational &r);
Rational percent_ratio(uint64_t covered, uint64_t total); // covered/total*100

/// Single value, inclusive range, or explicit value list.
class BinMatcher {
public:
    static BinMatcher single(int64_t v);
    static BinMatcher range(int64_t lo, int64_t hi);
    static BinMatcher list(std::vector<int64_t> values);

    bool matches(int64_t v) const;
    std::string spec_str() const;

private:
    std::vector<std::pair<int64_t, int64_t>> ranges_;
};

struct CoverBin {
    std::string name;
    BinMatcher matcher;
    uint64_t hits = 0;
    uint64_t at_least = 1;

    bool covered() const { return hits >= at_least; }
};

class CoverPoint {
public:
    CoverPoint(std::string name, std::string label, std::vector<CoverBin> bins,
               uint64_t weight);

    const std::string &name() const { return name_; }
    const std::string &label() const { return label_; }
    const std::vector<CoverBin> &bins() const { return bins_; }
    uint64_t weight() const { return weight_; }
    uint64_t unbinned() const { return unbinned_; }

    /// Returns the matched bin index or -1; bumps hit/unbinned tallies.
    int sample(int64_t v);
    uint64_t covered_bins() const;

private:
    std::string name_;
    std::string label_;
    std::vector<CoverBin> bins_;
    uint64_t weight_;
    uint64_t unbinned_ = 0;
};

/// Cross over >=2 points; tuple bins are stored sparsely so that large
/// products only materialize hit tuples.
class CoverCross {
public:
    CoverCross(std::string name, std::vector<uint32_t> members,
               uint64_t total_bins, uint64_t weight);

    const std::string &name() const { return name_; }
    const std::vector<uint32_t> &members() const { return members_; }
    uint64_t total_bins() const { return total_bins_; }
    uint64_t weight() const { return weight_; }
    const std::map<std::vector<uint32_t>, uint64_t> &hits() const {
        return hits_;
    }

    void sample(const std::vector<uint32_t> &tuple);
    uint64_t covered_bins() const { return hits_.size(); }

private:
    std::string name_;
    std::vector<uint32_t> members_;
    uint64_t total_bins_;
    uint64_t weight_;
    std::map<std::vector<uint32_t>, uint64_t> hits_;
};

struct BinSnapshot {
    std::string name;
    uint64_t hits = 0;
    uint64_t at_least = 1;
    bool covered = false;
};

struct ItemSnapshot {
    std::string name;
    std::string kind; // "point" or "cross"
    uint64_t weight = 1;
    uint64_t total_bins = 0;
    uint64_t covered_bins = 0;
    uint64_t unbinned = 0; // points only
    std::vector<BinSnapshot> bins;

    Rational percent() const { return percent_ratio(covered_bins, total_bins); }
};

struct CoverageSnapshot {
    std::vector<ItemSnapshot> items;
    uint64_t samples = 0;
    uint64_t seed = 0;

    Rational total_percent() const; // weight-averaged over items
};

struct CoverageConfig {
    uint64_t bin_cap = 1000000; // max bins per item (auto points, crosses)
};

/// The functional-coverage database: named points with explicit bins plus
/// crosses over them, sampled by label.
class CoverageDb {
public:
    explicit CoverageDb(CoverageConfig cfg = {});

    void set_seed(uint64_t seed) { seed_ = seed; }
    uint64_t seed() const { return seed_; }

    void define_point(std::string name, std::vector<CoverBin> bins,
                      uint64_t weight = 1, std::string label = {});
    /// One bin per value in [lo, hi]; BinExplosionError past the cap.
    void define_point_auto(std::string name, int64_t lo, int64_t hi,
                           uint64_t weight = 1);
    void define_cross(std::string name, const std::vector<std::string> &points,
                      uint64_t weight = 1);

    /// Samples every point whose label appears; a cross increments when all
    /// of its members matched in this call. Unknown label -> NameError.
    void sample(const std::map<std::string, int64_t> &values);

    bool has_point(std::string_view name) const;
    const CoverPoint &point(std::string_view name) const;
    const CoverCross &cross(std::string_view name) const;

    Rational percent(std::string_view item_name) const;
    Rational total_percent() const;
    uint64_t samples() const { return samples_; }
    size_t item_count() const { return points_.size() + crosses_.size(); }

    CoverageSnapshot snapshot() const;

private:
    int find_point(std::string_view name) const;
    int find_cross(std::string_view name) const;

    CoverageConfig cfg_;
    uint64_t seed_ = 0;
    uint64_t samples_ = 0;
    std::vector<CoverPoint> points_;
    std::vector<CoverCross> crosses_;
    // definition order preserved for reports: (is_cross, index)
    std::vector<std::pair<bool, uint32_t>> order_;
    std::vector<int> point_match_scratch_;
};

// --- report formats ---

/// Stable YAML rendering; re-export of an imported snapshot is
/// byte-identical.
std::string export_yaml(const CoverageSnapshot &snap);
/// Aligned human-readable table.
std::string export_text(const CoverageSnapshot &snap);

CoverageSnapshot import_yaml(const std::string &text);

void write_file(const std::string &path, const std::string &content);
std::string read_file(const std::string &path);

// --- declarative model files ---
// Grammar, one definition per line, '#' comments:
//   point <name> bins <bin> <bin> ...     bin := n=<v> | n=[lo:hi] | n={a,b}
//   cross <name> = <point> x <point> [x <point> ...]
void load_model(CoverageDb &db, std::string_view text);

/// Built-in versioned model definition, one per design under test.
std::string_view builtin_model(std::string_view design); // NameError if unknown

} // namespace covesim::cov
