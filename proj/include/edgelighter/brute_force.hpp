// Exhaustive graph matching over all permutations fixing the seeds. Returns
// the full optimum set, since downstream checks need the argmax as a set.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "edgelighter/gmp.hpp"
#include "edgelighter/graph.hpp"
#include "edgelighter/permutation.hpp"
#include "edgelighter/seeds.hpp"

namespace edgelighter {

struct BruteForceResult {
    long long objective = 0;
    std::vector<PermutationMap> optima;
};

inline BruteForceResult brute_force_gmp(const Graph& a, const Graph& b, const SeedSet& seeds) {
    if (a.n() != b.n()) throw std::invalid_argument("brute_force_gmp: dimension mismatch");
    const int n = a.n();
    seeds.validate(n);

    std::vector<int> free_vertices;
    std::vector<char> is_seed(n, 0);
    for (int s : seeds.seeds) is_seed[s] = 1;
    for (int v = 0; v < n; ++v)
        if (!is_seed[v]) free_vertices.push_back(v);
    if (free_vertices.size() > 9)
        throw std::invalid_argument("brute_force_gmp: more than 9 free vertices");

    std::vector<int> image(n);
    for (int v = 0; v < n; ++v) image[v] = v;
    std::vector<int> targets = free_vertices;  // ascending start for next_permutation

    BruteForceResult result;
    bool first = true;
    do {
        for (std::size_t t = 0; t < targets.size(); ++t) image[free_vertices[t]] = targets[t];
        PermutationMap p(image);
        long long obj = gmp_objective(a, b, p);
        if (first || obj > result.objective) {
            result.objective = obj;
            result.optima.clear();
            first = false;
        }
        if (obj == result.objective) result.optima.push_back(p);
    } while (std::next_permutation(targets.begin(), targets.end()));
    return result;
}

}  // namespace edgelighter
