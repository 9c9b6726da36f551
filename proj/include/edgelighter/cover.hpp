// Monte Carlo statistics of the unordered-pair cover time: the first step by
// which every pair {u,v}, u != v, has appeared as a consecutive walker
// transition. Only the position chain matters, so lamps are not simulated.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "edgelighter/graph.hpp"
#include "edgelighter/parallel.hpp"
#include "edgelighter/partition.hpp"
#include "edgelighter/rng.hpp"
#include "edgelighter/stats.hpp"
#include "edgelighter/walk.hpp"

namespace edgelighter {

struct CoverStats {
    int n = 0;
    long long replicates = 0;
    double mean = 0.0;
    std::map<double, double> quantiles;  // 0.05, 0.25, 0.5, 0.75, 0.95
    double lower_ref = 0.0;              // (1/2) n^2 log n
    double upper_ref = 0.0;              // (5/2) n^2 log n
    std::vector<double> samples;
};

namespace detail {

inline long long cover_time_standard_once(int n, RngStream& rng) {
    CoverTracker cover(n);
    int pos = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n)));
    Graph indexer(n);
    long long step = 0;
    while (!cover.complete()) {
        int v = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n)));
        ++step;
        if (v != pos) cover.mark(indexer.pair_index(pos, v), step);
        pos = v;
    }
    return *cover.cover_time();
}

inline long long cover_time_block_once(const Partition& part, RngStream& rng) {
    const int n = part.n();
    const int k = part.communities();
    CoverTracker cover(n);
    Graph indexer(n);
    int pos = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n)));
    int com = part.label(pos);
    long long step = 0;
    while (!cover.complete()) {
        ++step;
        bool stay = (k == 1) ? true : rng.bernoulli(0.5);
        if (stay) {
            const auto& block = part.members(com);
            int v = block[rng.next_below(static_cast<std::uint32_t>(block.size()))];
            if (v != pos) cover.mark(indexer.pair_index(pos, v), step);
            pos = v;
        } else {
            int j = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(k - 1)));
            if (j >= com) ++j;
            const auto& target = part.members(j);
            int w = target[rng.next_below(static_cast<std::uint32_t>(target.size()))];
            cover.mark(indexer.pair_index(pos, w), step);
            pos = w;
            com = j;
        }
    }
    return *cover.cover_time();
}

inline CoverStats summarize_cover(int n, std::vector<double> samples) {
    CoverStats stats;
    stats.n = n;
    stats.replicates = static_cast<long long>(samples.size());
    stats.mean = mean(samples);
    stats.quantiles = quantiles(samples, {0.05, 0.25, 0.5, 0.75, 0.95});
    double nn = static_cast<double>(n) * n;
    stats.lower_ref = 0.5 * nn * std::log(n);
    stats.upper_ref = 2.5 * nn * std::log(n);
    stats.samples = std::move(samples);
    return stats;
}

}  // namespace detail

inline CoverStats cover_time_stats_standard(int n, long long replicates, RngStream& rng,
                                            int threads = 0) {
    if (n < 2) throw std::invalid_argument("cover_time_stats: need n >= 2");
    if (replicates < 1) throw std::invalid_argument("cover_time_stats: replicates >= 1");
    if (threads <= 0) threads = default_thread_count();
    std::vector<double> samples(replicates);
    parallel_for(static_cast<std::size_t>(replicates), threads, [&](std::size_t r) {
        RngStream stream = rng.split(r);
        samples[r] = static_cast<double>(detail::cover_time_standard_once(n, stream));
    });
    return detail::summarize_cover(n, std::move(samples));
}

inline CoverStats cover_time_stats_block(const Partition& part, long long replicates,
                                         RngStream& rng, int threads = 0) {
    if (part.n() < 2) throw std::invalid_argument("cover_time_stats: need n >= 2");
    if (replicates < 1) throw std::invalid_argument("cover_time_stats: replicates >= 1");
    if (threads <= 0) threads = default_thread_count();
    std::vector<double> samples(replicates);
    parallel_for(static_cast<std::size_t>(replicates), threads, [&](std::size_t r) {
        RngStream stream = rng.split(r);
        samples[r] = static_cast<double>(detail::cover_time_block_once(part, stream));
    });
    return detail::summarize_cover(part.n(), std::move(samples));
}

}  // namespace edgelighter
