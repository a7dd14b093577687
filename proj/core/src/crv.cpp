// Copyright (c) covesim contributors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
#include "covesim/crv.hpp"

#include <algorithm>

namespace covesim::crv {

namespace {

uint64_t splitmix64(uint64_t &x) {
    x += 0x9e3779b97f4a7c15ull;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

Rng::Rng(uint64_t seed) : seed_(seed) {
    uint64_t x = seed;
    for (auto &w : s_) w = splitmix64(x);
}

uint64_t Rng::next() {
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    ++draws_;
    return result;
}

uint64_t Rng::below(uint64_t n) {
    if (n == 0) throw RangeError("Rng::below(0)");
    uint64_t threshold = (0 - n) % n; // 2^64 mod n
    for (;;) {
        uint64_t r = next();
        if (r >= threshold) return r % n;
    }
}

int64_t Rng::range(int64_t lo, int64_t hi) {
    if (lo > hi) throw RangeError("Rng::range: lo > hi");
    uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
    if (span == 0) return static_cast<int64_t>(next()); // full 64-bit span
    return static_cast<int64_t>(static_cast<uint64_t>(lo) + below(span));
}

double Rng::unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

uint64_t Rng::derive(uint64_t base_seed, std::string_view name) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return base_seed ^ h;
}

RandomVar RandomVar::interval(std::string name, int64_t lo, int64_t hi) {
    if (lo > hi) throw RangeError("RandomVar '" + name + "': lo > hi");
    RandomVar v;
    v.name = std::move(name);
    v.lo = lo;
    v.hi = hi;
    return v;
}

RandomVar RandomVar::list(std::string name, std::vector<int64_t> values) {
    if (values.empty())
        throw RangeError("RandomVar '" + name + "': empty value list");
    RandomVar v;
    v.name = std::move(name);
    v.values = std::move(values);
    v.lo = *std::min_element(v.values.begin(), v.values.end());
    v.hi = *std::max_element(v.values.begin(), v.values.end());
    return v;
}

bool RandomVar::in_domain(int64_t v) const {
    if (!values.empty())
        return std::find(values.begin(), values.end(), v) != values.end();
    return v >= lo && v <= hi;
}

void set_weight(RandomVar &var, std::map<int64_t, uint64_t> weights) {
    if (weights.empty()) throw WeightError("empty weight map for " + var.name);
    uint64_t total = 0;
    for (const auto &[value, w] : weights) {
        if (!var.in_domain(value))
            throw WeightError("weight on value " + std::to_string(value) +
                              " outside domain of " + var.name);
        total += w;
    }
    if (total == 0) throw WeightError("all-zero weights for " + var.name);
    var.weights = std::move(weights);
}

void ConstraintSet::add(std::string name, Predicate p) {
    predicates_.emplace_back(std::move(name), std::move(p));
}

bool ConstraintSet::satisfied(const Assignment &a) const {
    return first_unsatisfied(a) == nullptr;
}

const std::string *ConstraintSet::first_unsatisfied(const Assignment &a) const {
    for (const auto &[name, p] : predicates_)
        if (!p(a)) return &name;
    return nullptr;
}

namespace {

int64_t propose(const RandomVar &v, Rng &rng) {
    if (!v.weights.empty()) {
        uint64_t total = 0;
        for (const auto &[value, w] : v.weights) total += w;
        uint64_t r = rng.below(total);
        uint64_t cum = 0;
        for (const auto &[value, w] : v.weights) {
            cum += w;
            if (r < cum) return value;
        }
        return v.weights.rbegin()->first; // unreachable
    }
    if (!v.values.empty())
        return v.values[rng.below(v.values.size())];
    return rng.range(v.lo, v.hi);
}

} // namespace

Assignment randomize(std::span<const RandomVar> vars, const ConstraintSet &cs,
                     Rng &rng, RandomizeOptions opts) {
    if (vars.empty()) throw RangeError("randomize: no variables");
    Assignment a;
    for (uint64_t attempt = 1; attempt <= opts.max_attempts; ++attempt) {
        a.clear();
        for (const RandomVar &v : vars) a.emplace(v.name, propose(v, rng));
        if (cs.satisfied(a)) return a;
    }
    throw UnsatisfiableError(
        "randomize: no satisfying assignment found within " +
            std::to_string(opts.max_attempts) + " attempts",
        opts.max_attempts);
}

} // namespace covesim::crv
