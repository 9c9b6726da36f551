// Random graph samplers.
#pragma once

#include <stdexcept>
#include <utility>

#include "edgelighter/graph.hpp"
#include "edgelighter/partition.hpp"
#include "edgelighter/rng.hpp"

namespace edgelighter {

// Each unordered pair present independently with probability p.
inline Graph sample_er(int n, double p, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("sample_er: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_er: p must lie in [0,1]");
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.set_edge(u, v, true);
    return g;
}

// Edges independent conditional on labels, with block probabilities.
inline std::pair<Graph, Partition> sample_sbm(const SbmParams& params, RngStream& rng) {
    params.validate();
    Partition part = params.partition();
    Graph g(part.n());
    for (int u = 0; u < part.n(); ++u)
        for (int v = u + 1; v < part.n(); ++v)
            if (rng.bernoulli(params.lambda[part.label(u)][part.label(v)])) g.set_edge(u, v, true);
    return {std::move(g), std::move(part)};
}

}  // namespace edgelighter
