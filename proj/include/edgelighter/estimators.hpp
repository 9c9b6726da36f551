// Monte Carlo estimators for the traversal probability of a fixed pair and
// for the pooled edge-indicator correlation between graph snapshots.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "edgelighter/graph.hpp"
#include "edgelighter/rng.hpp"

namespace edgelighter {

struct TraversalEstimate {
    long long t = 0;
    int n = 0;
    double p_hat = 0.0;        // fraction of replicates with pair {0,1} untraversed
    double stderr_ = 0.0;      // binomial Monte Carlo standard error
    double lower_bound = 0.0;  // exp(-t / (C(n,2) - 1))
    double upper_bound = 0.0;  // exp(-floor((t+1)/2) / (C(n,2) + n)), valid for n > 3
};

inline double traversal_lower_bound(int n, long long t) {
    double pairs = static_cast<double>(Graph::pair_count(n));
    return std::exp(-static_cast<double>(t) / (pairs - 1.0));
}

inline double traversal_upper_bound(int n, long long t) {
    double pairs = static_cast<double>(Graph::pair_count(n));
    return std::exp(-std::floor((t + 1) / 2.0) / (pairs + n));
}

// Probability that the fixed pair {0,1} is untraversed after t moves of the
// standard walk, estimated over independent replicates. Only the position
// chain matters, so lamps are not simulated.
inline TraversalEstimate estimate_traversal_prob(int n, long long t, long long replicates,
                                                 RngStream& rng) {
    if (n <= 3) throw std::invalid_argument("estimate_traversal_prob: bounds require n > 3");
    if (replicates < 1) throw std::invalid_argument("estimate_traversal_prob: replicates >= 1");
    if (t < 0) throw std::invalid_argument("estimate_traversal_prob: t must be >= 0");
    long long untraversed = 0;
    for (long long r = 0; r < replicates; ++r) {
        RngStream stream = rng.split(static_cast<std::uint64_t>(r));
        int pos = static_cast<int>(stream.next_below(static_cast<std::uint32_t>(n)));
        bool hit = false;
        for (long long s = 0; s < t && !hit; ++s) {
            int v = static_cast<int>(stream.next_below(static_cast<std::uint32_t>(n)));
            hit = (pos == 0 && v == 1) || (pos == 1 && v == 0);
            pos = v;
        }
        if (!hit) ++untraversed;
    }
    TraversalEstimate est;
    est.t = t;
    est.n = n;
    est.p_hat = static_cast<double>(untraversed) / static_cast<double>(replicates);
    est.stderr_ = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(replicates));
    est.lower_bound = traversal_lower_bound(n, t);
    est.upper_bound = traversal_upper_bound(n, t);
    return est;
}

// Pooled Pearson correlation of (initial, current) edge indicators over all
// unordered pairs of all replicate (G_0, G_t) pairs. Throws when either
// margin is constant (correlation undefined).
inline double edge_correlation(const std::vector<std::pair<Graph, Graph>>& replicate_pairs) {
    if (replicate_pairs.size() < 1)
        throw std::invalid_argument("edge_correlation: need at least one replicate pair");
    double count = 0, sx = 0, sy = 0, sxy = 0;
    for (const auto& [g0, gt] : replicate_pairs) {
        if (g0.n() != gt.n()) throw std::invalid_argument("edge_correlation: size mismatch");
        const std::size_t pairs = g0.pair_count();
        for (std::size_t idx = 0; idx < pairs; ++idx) {
            double x = g0.test(idx) ? 1.0 : 0.0;
            double y = gt.test(idx) ? 1.0 : 0.0;
            sx += x;
            sy += y;
            sxy += x * y;
            count += 1.0;
        }
    }
    double mx = sx / count, my = sy / count;
    double vx = sx / count - mx * mx;  // binary: E[x^2] = E[x]
    double vy = sy / count - my * my;
    if (vx <= 0.0 || vy <= 0.0)
        throw std::domain_error("edge_correlation: constant margin, correlation undefined");
    return (sxy / count - mx * my) / std::sqrt(vx * vy);
}

}  // namespace edgelighter
