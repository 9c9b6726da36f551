// Exact linear assignment by shortest augmenting paths with dual potentials
// (Jonker-Volgenant class, O(n^3)).
//
// lap_solve resolves degenerate instances toward the lexicographically
// smallest optimal image vector: the optimal assignments are exactly the
// perfect matchings of the zero-reduced-cost ("tight") bipartite graph of any
// optimal dual, and the lex-refinement walks that graph. The raw solver skips
// the refinement; the matching heuristic's inner loop uses it directly since
// any optimal vertex serves as an ascent direction.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "edgelighter/permutation.hpp"

namespace edgelighter {

// Dense row-major square matrix of doubles.
class CostMatrix {
public:
    explicit CostMatrix(int n, double fill = 0.0)
        : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {
        if (n < 1) throw std::invalid_argument("CostMatrix: size must be >= 1");
    }

    int n() const { return n_; }
    double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    int n_;
    std::vector<double> data_;
};

struct LapSolution {
    std::vector<int> row_to_col;
    double cost = 0.0;
    std::vector<double> dual_u, dual_v;  // c_ij - u_i - v_j >= 0, tight on the assignment
};

// Shortest-augmenting-path assignment; deterministic, no tie refinement.
inline LapSolution lap_solve_raw(const CostMatrix& cost) {
    const int n = cost.n();
    for (double c : cost.data())
        if (!std::isfinite(c)) throw std::invalid_argument("lap_solve: non-finite cost entry");

    // Potentials and matching in 1-based arrays; p[j] = row matched to col j.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    const double inf = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost.at(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }

    LapSolution sol;
    sol.row_to_col.assign(n, -1);
    sol.dual_u.assign(n, 0.0);
    sol.dual_v.assign(n, 0.0);
    for (int j = 1; j <= n; ++j)
        if (p[j]) sol.row_to_col[p[j] - 1] = j - 1;
    for (int i = 1; i <= n; ++i) sol.dual_u[i - 1] = u[i];
    for (int j = 1; j <= n; ++j) sol.dual_v[j - 1] = v[j];
    for (int i = 0; i < n; ++i) sol.cost += cost.at(i, sol.row_to_col[i]);
    return sol;
}

namespace detail {

// Kuhn augmenting path over an adjacency-list bipartite graph.
inline bool try_augment(int row, const std::vector<std::vector<int>>& adj,
                        std::vector<int>& col_to_row, std::vector<char>& visited) {
    for (int col : adj[row]) {
        if (visited[col]) continue;
        visited[col] = 1;
        if (col_to_row[col] == -1 || try_augment(col_to_row[col], adj, col_to_row, visited)) {
            col_to_row[col] = row;
            return true;
        }
    }
    return false;
}

// Lexicographically smallest perfect matching (by row image) of a bipartite
// graph that is known to admit one. Row i is greedily fixed to its smallest
// neighbor that still leaves the remaining rows matchable; feasibility is
// maintained incrementally, so each candidate costs one augmenting run.
inline std::vector<int> lex_smallest_perfect_matching(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> col_to_row(n, -1), row_to_col(n, -1);
    std::vector<char> none(n, 0);
    for (int r = 0; r < n; ++r) {
        std::vector<char> visited = none;
        if (!try_augment(r, adj, col_to_row, visited))
            throw std::logic_error("lex matching: no perfect matching in tight graph");
    }
    for (int j = 0; j < n; ++j)
        if (col_to_row[j] >= 0) row_to_col[col_to_row[j]] = j;

    std::vector<char> col_fixed(n, 0);
    for (int i = 0; i < n; ++i) {
        bool placed = false;
        for (int j : adj[i]) {
            if (col_fixed[j]) continue;
            if (row_to_col[i] == j) {
                placed = true;
            } else {
                // Exchange: give column j to row i and rematch the displaced
                // row among the unfixed columns.
                int displaced = col_to_row[j];
                int old_col = row_to_col[i];
                col_to_row[j] = i;
                row_to_col[i] = j;
                if (old_col >= 0) col_to_row[old_col] = -1;
                if (displaced >= 0 && displaced != i) {
                    row_to_col[displaced] = -1;
                    std::vector<char> visited = col_fixed;
                    visited[j] = 1;
                    if (try_augment(displaced, adj, col_to_row, visited)) {
                        for (int c = 0; c < n; ++c)
                            if (col_to_row[c] >= 0) row_to_col[col_to_row[c]] = c;
                        placed = true;
                    } else {
                        // Roll back the exchange.
                        col_to_row[j] = displaced;
                        row_to_col[displaced] = j;
                        row_to_col[i] = old_col;
                        if (old_col >= 0) col_to_row[old_col] = i;
                    }
                } else {
                    placed = true;
                }
            }
            if (placed) {
                col_fixed[j] = 1;
                break;
            }
        }
        if (!placed) throw std::logic_error("lex matching: inconsistent tight graph");
    }
    return row_to_col;
}

}  // namespace detail

// Optimal assignment minimizing total cost; ties broken toward the
// lexicographically smallest image vector.
inline PermutationMap lap_solve(const CostMatrix& cost) {
    const int n = cost.n();
    LapSolution sol = lap_solve_raw(cost);

    // Tight edges of the computed optimal dual.
    double scale = 1.0;
    for (double c : cost.data()) scale = std::max(scale, std::abs(c));
    const double tol = 1e-9 * scale;
    bool degenerate = false;
    std::vector<std::vector<int>> tight(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (std::abs(cost.at(i, j) - sol.dual_u[i] - sol.dual_v[j]) <= tol)
                tight[i].push_back(j);
        if (tight[i].size() != 1) degenerate = true;
    }
    if (!degenerate) return PermutationMap(sol.row_to_col);
    return PermutationMap(detail::lex_smallest_perfect_matching(tight));
}

}  // namespace edgelighter
