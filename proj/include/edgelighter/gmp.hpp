// Graph matching objective Tr(A P B P^T) and its shift against the identity.
#pragma once

#include <stdexcept>

#include "edgelighter/graph.hpp"
#include "edgelighter/permutation.hpp"

namespace edgelighter {

// Tr(A P B P^T) = 2 * |{ {i,j} : A_ij = 1 and B_{sigma(i) sigma(j)} = 1 }|.
inline long long gmp_objective(const Graph& a, const Graph& b, const PermutationMap& p) {
    if (a.n() != b.n() || a.n() != p.n())
        throw std::invalid_argument("gmp_objective: dimension mismatch");
    long long matched = 0;
    for (int u = 0; u < a.n(); ++u)
        for (int v = u + 1; v < a.n(); ++v)
            if (a.edge(u, v) && b.edge(p(u), p(v))) ++matched;
    return 2 * matched;
}

// Tr(A P B P^T) - Tr(A B); nonpositive whenever the identity is optimal.
inline long long objective_delta(const Graph& a, const Graph& b, const PermutationMap& p) {
    return gmp_objective(a, b, p) - gmp_objective(a, b, PermutationMap::identity(a.n()));
}

}  // namespace edgelighter
