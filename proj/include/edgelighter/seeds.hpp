// Seed sets: vertices whose correspondence is known and pinned to itself.
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "edgelighter/rng.hpp"

namespace edgelighter {

struct SeedSet {
    std::vector<int> seeds;  // sorted, unique

    SeedSet() = default;
    explicit SeedSet(std::vector<int> s) : seeds(std::move(s)) {
        std::sort(seeds.begin(), seeds.end());
        seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    }

    static SeedSet none() { return SeedSet{}; }

    static SeedSet all(int n) {
        std::vector<int> s(n);
        for (int i = 0; i < n; ++i) s[i] = i;
        return SeedSet(std::move(s));
    }

    // `fraction` of the vertices chosen uniformly at random (rounded to the
    // nearest count).
    static SeedSet sample_fraction(int n, double fraction, RngStream& rng) {
        if (!(fraction >= 0.0 && fraction <= 1.0))
            throw std::invalid_argument("SeedSet: fraction must lie in [0,1]");
        int count = static_cast<int>(fraction * n + 0.5);
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int i = 0; i < count; ++i) {
            std::uint32_t j = i + rng.next_below(static_cast<std::uint32_t>(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(count);
        return SeedSet(std::move(pool));
    }

    void validate(int n) const {
        for (int s : seeds)
            if (s < 0 || s >= n) throw std::invalid_argument("SeedSet: seed out of range");
    }

    bool contains(int v) const { return std::binary_search(seeds.begin(), seeds.end(), v); }
    int count() const { return static_cast<int>(seeds.size()); }
};

}  // namespace edgelighter
