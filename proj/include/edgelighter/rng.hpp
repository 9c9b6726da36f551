// Counter-based splittable RNG. Every (seed, stream) pair names an
// independent deterministic sequence, so parallel replicates can each own a
// stream and results do not depend on scheduling.
#pragma once

#include <cstdint>
#include <stdexcept>

namespace edgelighter {

namespace detail {

// SplitMix64 finalizer; full-period mixing of a 64-bit counter.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace detail

class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : key_(detail::mix64(detail::mix64(seed) ^ detail::mix64(~stream))),
          counter_(0) {}

    // Independent child stream; children of distinct ids never collide in
    // practice (keys are 64-bit mixes of the parent key and the id).
    RngStream split(std::uint64_t child_id) const {
        RngStream s;
        s.key_ = detail::mix64(key_ ^ detail::mix64(child_id + 0x632be59bd9b4e019ull));
        s.counter_ = 0;
        return s;
    }

    std::uint64_t next_u64() { return detail::mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ull); }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, n). Lemire multiply-shift with rejection.
    std::uint32_t next_below(std::uint32_t n) {
        if (n == 0) throw std::invalid_argument("RngStream::next_below: n must be positive");
        std::uint64_t x = next_u64() >> 32;
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto low = static_cast<std::uint64_t>(m & 0xffffffffull);
        if (low < n) {
            std::uint64_t threshold = (0x100000000ull - n) % n;
            while (low < threshold) {
                x = next_u64() >> 32;
                m = static_cast<__uint128_t>(x) * n;
                low = static_cast<std::uint64_t>(m & 0xffffffffull);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return next_double() < p;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

}  // namespace edgelighter
