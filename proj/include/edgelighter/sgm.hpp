// Seeded graph matching: Frank-Wolfe ascent of Tr(A D B D^T) over doubly
// stochastic matrices with seed rows and columns pinned to the identity,
// projected to a permutation at termination. Iterates are stored dense over
// the free block only; the seed block is never materialized.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "edgelighter/gmp.hpp"
#include "edgelighter/graph.hpp"
#include "edgelighter/lap.hpp"
#include "edgelighter/partition.hpp"
#include "edgelighter/permutation.hpp"
#include "edgelighter/rng.hpp"
#include "edgelighter/seeds.hpp"

namespace edgelighter {

enum class SgmInit { identity, barycenter, random };

struct SolverOptions {
    SgmInit init = SgmInit::identity;
    int max_iterations = 30;
    double tolerance = 1e-6;
    RngStream rng{0, 0};  // used by random init only

    void validate() const {
        if (max_iterations < 1) throw std::invalid_argument("SolverOptions: max_iterations >= 1");
        if (!(tolerance > 0.0)) throw std::invalid_argument("SolverOptions: tolerance must be > 0");
    }
};

struct Correctness {
    double overall = 1.0;
    std::vector<double> per_community;
};

// Fraction of non-seed vertices mapped to themselves, overall and (when a
// partition is given) per community. Communities with no non-seed members
// report 1.0.
inline Correctness match_correctness(const PermutationMap& p, const SeedSet& seeds,
                                     const Partition* partition = nullptr) {
    seeds.validate(p.n());
    Correctness out;
    long long fixed = 0, total = 0;
    std::vector<long long> com_fixed, com_total;
    if (partition) {
        if (partition->n() != p.n())
            throw std::invalid_argument("match_correctness: partition size mismatch");
        com_fixed.assign(partition->communities(), 0);
        com_total.assign(partition->communities(), 0);
    }
    for (int v = 0; v < p.n(); ++v) {
        if (seeds.contains(v)) continue;
        ++total;
        bool ok = (p(v) == v);
        if (ok) ++fixed;
        if (partition) {
            ++com_total[partition->label(v)];
            if (ok) ++com_fixed[partition->label(v)];
        }
    }
    out.overall = (total == 0) ? 1.0 : static_cast<double>(fixed) / static_cast<double>(total);
    if (partition) {
        out.per_community.resize(partition->communities());
        for (int k = 0; k < partition->communities(); ++k)
            out.per_community[k] = (com_total[k] == 0)
                                       ? 1.0
                                       : static_cast<double>(com_fixed[k]) / com_total[k];
    }
    return out;
}

struct MatchResult {
    PermutationMap permutation{std::vector<int>{0}};
    long long objective = 0;
    double correctness = 1.0;
    std::optional<std::vector<double>> per_community_correctness;
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;  // relaxed objective after each iteration
};

namespace detail {

// Binary matrix with both bitset rows and neighbor lists over a vertex subset.
struct PackedBlock {
    int rows = 0, cols = 0, words = 0;
    std::vector<std::uint64_t> bits;          // rows x words
    std::vector<std::vector<int>> neighbors;  // per row

    PackedBlock() = default;
    PackedBlock(const Graph& g, const std::vector<int>& row_ids, const std::vector<int>& col_ids) {
        rows = static_cast<int>(row_ids.size());
        cols = static_cast<int>(col_ids.size());
        words = (cols + 63) / 64;
        bits.assign(static_cast<std::size_t>(rows) * words, 0ull);
        neighbors.assign(rows, {});
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (row_ids[i] != col_ids[j] && g.edge(row_ids[i], col_ids[j])) {
                    bits[static_cast<std::size_t>(i) * words + (j >> 6)] |= 1ull << (j & 63);
                    neighbors[i].push_back(j);
                }
    }

    const std::uint64_t* row(int i) const { return &bits[static_cast<std::size_t>(i) * words]; }
};

inline int popcount_and(const std::uint64_t* a, const std::uint64_t* b, int words) {
    int c = 0;
    for (int w = 0; w < words; ++w) c += __builtin_popcountll(a[w] & b[w]);
    return c;
}

// M = A * D * B for symmetric binary A, B and dense D (flat f x f).
inline void sandwich(const PackedBlock& a, const std::vector<double>& d, const PackedBlock& b,
                     std::vector<double>& ad, std::vector<double>& m) {
    const int f = a.rows;
    std::fill(ad.begin(), ad.end(), 0.0);
    for (int i = 0; i < f; ++i) {
        double* out = &ad[static_cast<std::size_t>(i) * f];
        for (int k : a.neighbors[i]) {
            const double* src = &d[static_cast<std::size_t>(k) * f];
            for (int j = 0; j < f; ++j) out[j] += src[j];
        }
    }
    std::fill(m.begin(), m.end(), 0.0);
    for (int i = 0; i < f; ++i) {
        const double* src = &ad[static_cast<std::size_t>(i) * f];
        double* out = &m[static_cast<std::size_t>(i) * f];
        for (int l = 0; l < f; ++l) {
            double val = src[l];
            if (val == 0.0) continue;
            for (int j : b.neighbors[l]) out[j] += val;
        }
    }
}

}  // namespace detail

inline MatchResult sgm_faq(const Graph& a, const Graph& b, const SeedSet& seeds,
                           const SolverOptions& opts, const Partition* partition = nullptr) {
    if (a.n() != b.n()) throw std::invalid_argument("sgm_faq: dimension mismatch");
    opts.validate();
    const int n = a.n();
    seeds.validate(n);

    std::vector<char> is_seed(n, 0);
    for (int s : seeds.seeds) is_seed[s] = 1;
    std::vector<int> free_ids;
    for (int v = 0; v < n; ++v)
        if (!is_seed[v]) free_ids.push_back(v);
    const int f = static_cast<int>(free_ids.size());

    MatchResult result;
    if (f == 0) {
        result.permutation = PermutationMap::identity(n);
        result.objective = gmp_objective(a, b, result.permutation);
        result.converged = true;
        Correctness c = match_correctness(result.permutation, seeds, partition);
        result.correctness = c.overall;
        if (partition) result.per_community_correctness = c.per_community;
        return result;
    }

    detail::PackedBlock a22(a, free_ids, free_ids), b22(b, free_ids, free_ids);
    detail::PackedBlock a21(a, free_ids, seeds.seeds), b21(b, free_ids, seeds.seeds);

    // Linear seed term S[i][j] = sum_t A[F_i][S_t] B[F_j][S_t].
    std::vector<double> seed_term(static_cast<std::size_t>(f) * f, 0.0);
    if (!seeds.seeds.empty())
        for (int i = 0; i < f; ++i)
            for (int j = 0; j < f; ++j)
                seed_term[static_cast<std::size_t>(i) * f + j] =
                    detail::popcount_and(a21.row(i), b21.row(j), a21.words);

    // Initial doubly stochastic iterate over the free block.
    std::vector<double> d(static_cast<std::size_t>(f) * f, 0.0);
    RngStream rng = opts.rng;
    switch (opts.init) {
        case SgmInit::identity:
            for (int i = 0; i < f; ++i) d[static_cast<std::size_t>(i) * f + i] = 1.0;
            break;
        case SgmInit::barycenter:
            std::fill(d.begin(), d.end(), 1.0 / static_cast<double>(f));
            break;
        case SgmInit::random: {
            for (double& x : d) x = -std::log(1.0 - rng.next_double());
            for (int pass = 0; pass < 12; ++pass) {  // Sinkhorn balancing
                for (int i = 0; i < f; ++i) {
                    double s = 0;
                    for (int j = 0; j < f; ++j) s += d[static_cast<std::size_t>(i) * f + j];
                    for (int j = 0; j < f; ++j) d[static_cast<std::size_t>(i) * f + j] /= s;
                }
                for (int j = 0; j < f; ++j) {
                    double s = 0;
                    for (int i = 0; i < f; ++i) s += d[static_cast<std::size_t>(i) * f + j];
                    for (int i = 0; i < f; ++i) d[static_cast<std::size_t>(i) * f + j] /= s;
                }
            }
            break;
        }
    }

    std::vector<double> ad(static_cast<std::size_t>(f) * f), m(static_cast<std::size_t>(f) * f);
    std::vector<double> t_row(f);
    std::vector<int> q(f);

    auto inner_with = [&](const std::vector<double>& mat, const std::vector<double>& dd) {
        double s = 0;
        for (std::size_t i = 0; i < mat.size(); ++i) s += mat[i] * dd[i];
        return s;
    };

    detail::sandwich(a22, d, b22, ad, m);
    double relaxed = inner_with(m, d) + 2.0 * inner_with(seed_term, d);
    result.objective_trace.push_back(relaxed);

    bool converged = false;
    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        // Ascent direction: permutation maximizing <M + S, Q>.
        CostMatrix cost(f);
        for (int i = 0; i < f; ++i)
            for (int j = 0; j < f; ++j)
                cost.at(i, j) = -(m[static_cast<std::size_t>(i) * f + j] +
                                  seed_term[static_cast<std::size_t>(i) * f + j]);
        LapSolution dir = lap_solve_raw(cost);
        for (int i = 0; i < f; ++i) q[i] = dir.row_to_col[i];

        // Quadratic along the segment D + gamma (Q - D):
        //   gain(gamma) = a gamma^2 + b gamma,
        //   a = <T - M, Q - D> with T = A Q B,  b = 2 <M + S, Q - D>.
        double t_dot_q = 0.0, t_dot_d = 0.0;
        for (int i = 0; i < f; ++i) {
            std::fill(t_row.begin(), t_row.end(), 0.0);
            for (int k : a22.neighbors[i])
                for (int j : b22.neighbors[q[k]]) t_row[j] += 1.0;
            t_dot_q += t_row[q[i]];
            const double* drow = &d[static_cast<std::size_t>(i) * f];
            for (int j = 0; j < f; ++j) t_dot_d += t_row[j] * drow[j];
        }
        double m_dot_q = 0.0, m_dot_d = inner_with(m, d);
        double h_dot_q = 0.0, h_dot_d = m_dot_d + inner_with(seed_term, d);
        for (int i = 0; i < f; ++i) {
            m_dot_q += m[static_cast<std::size_t>(i) * f + q[i]];
            h_dot_q += m[static_cast<std::size_t>(i) * f + q[i]] +
                       seed_term[static_cast<std::size_t>(i) * f + q[i]];
        }
        double qa = t_dot_q - t_dot_d - m_dot_q + m_dot_d;
        double qb = 2.0 * (h_dot_q - h_dot_d);

        double gamma;
        if (qa < 0.0) {
            gamma = std::min(1.0, std::max(0.0, -qb / (2.0 * qa)));
        } else {
            // Degenerate or convex segment: full step if it gains, else stop.
            gamma = (qa + qb > 0.0) ? 1.0 : 0.0;
        }
        double gain = qa * gamma * gamma + qb * gamma;
        if (gamma < opts.tolerance || gain < opts.tolerance) {
            converged = true;
            break;
        }

        for (int i = 0; i < f; ++i) {
            double* drow = &d[static_cast<std::size_t>(i) * f];
            for (int j = 0; j < f; ++j) drow[j] *= (1.0 - gamma);
            drow[q[i]] += gamma;
        }
        detail::sandwich(a22, d, b22, ad, m);
        relaxed = inner_with(m, d) + 2.0 * inner_with(seed_term, d);
        result.objective_trace.push_back(relaxed);
    }

    // Project the free block to a permutation: maximize <D, Q>.
    CostMatrix proj(f);
    for (int i = 0; i < f; ++i)
        for (int j = 0; j < f; ++j) proj.at(i, j) = -d[static_cast<std::size_t>(i) * f + j];
    PermutationMap free_perm = lap_solve(proj);

    std::vector<int> image(n);
    for (int v = 0; v < n; ++v) image[v] = v;
    for (int i = 0; i < f; ++i) image[free_ids[i]] = free_ids[free_perm(i)];
    result.permutation = PermutationMap(std::move(image));

    for (int s : seeds.seeds)
        if (result.permutation(s) != s) throw std::logic_error("sgm_faq: seed left unfixed");

    result.objective = gmp_objective(a, b, result.permutation);
    result.iterations = iter;
    result.converged = converged;
    Correctness c = match_correctness(result.permutation, seeds, partition);
    result.correctness = c.overall;
    if (partition) result.per_community_correctness = c.per_community;
    return result;
}

}  // namespace edgelighter
