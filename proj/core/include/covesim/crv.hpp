// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covesim/errors.hpp"

namespace covesim::crv {

/// No satisfying draw was found within max_attempts. Distinguishes hard
/// UNSAT from a constraint set with very low acceptance.
class UnsatisfiableError : public Error {
public:
    UnsatisfiableError(const std::string &what, uint64_t attempts)
        : Error(what), attempts(attempts) {}
    uint64_t attempts;
};

class WeightError : public Error {
public:
    using Error::Error;
};

/// xoshiro256** seeded through splitmix64. Pinned so that identical seeds
/// give identical draw sequences on every platform; std:: distributions are
/// deliberately not used anywhere.
class Rng {
public:
    explicit Rng(uint64_t seed);

    uint64_t next();
    /// Unbiased draw in [0, n). n must be positive.
    uint64_t below(uint64_t n);
    /// Unbiased draw in [lo, hi], both inclusive.
    int64_t range(int64_t lo, int64_t hi);
    /// Uniform double in [0, 1) with 53 significant bits.
    double unit();

    uint64_t seed() const { return seed_; }
    uint64_t draws() const { return draws_; }

    /// Per-test seed derivation: base seed XOR FNV-1a-64 of the test name.
    static uint64_t derive(uint64_t base_seed, std::string_view name);

private:
    uint64_t s_[4];
    uint64_t seed_;
    uint64_t draws_ = 0;
};

/// A named variable over an inclusive integer interval or an explicit value
/// list, with optional proposal weights.
struct RandomVar {
    std::string name;
    int64_t lo = 0, hi = 0;
    std::vector<int64_t> values; // list domain when non-empty
    bool is_signed = true;
    std::map<int64_t, uint64_t> weights;

    static RandomVar interval(std::string name, int64_t lo, int64_t hi);
    static RandomVar list(std::string name, std::vector<int64_t> values);

    bool in_domain(int64_t v) const;
};

/// Shapes the proposal distribution: values are drawn proportionally to
/// their weight, before constraint filtering. Domain values without an
/// entry get weight zero. WeightError on all-zero maps or values outside
/// the domain.
void set_weight(RandomVar &var, std::map<int64_t, uint64_t> weights);

using Assignment = std::map<std::string, int64_t>;
using Predicate = std::function<bool(const Assignment &)>;

/// Pure named predicates over a full assignment.
class ConstraintSet {
public:
    void add(std::string name, Predicate p);
    bool satisfied(const Assignment &a) const;
    const std::string *first_unsatisfied(const Assignment &a) const;
    size_t size() const { return predicates_.size(); }

private:
    std::vector<std::pair<std::string, Predicate>> predicates_;
};

struct RandomizeOptions {
    uint64_t max_attempts = 10000;
};

/// Rejection sampling: propose every variable independently (uniform or
/// weighted), accept jointly when all predicates hold.
Assignment randomize(std::span<const RandomVar> vars, const ConstraintSet &cs,
                     Rng &rng, RandomizeOptions opts = {});

} // namespace covesim::crv
