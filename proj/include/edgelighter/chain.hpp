// Exact analysis of tiny edgelighter chains: explicit transition matrices,
// closed-form stationary vectors, detailed-balance residuals, total-variation
// distance and exact mixing times.
//
// State enumeration is lexicographic in (position, configuration bits), where
// configuration bit k is the lamp of pair index k (graph.hpp order) and masks
// are ordered by numeric value. Matrices are therefore reproducible across
// runs and languages.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "edgelighter/graph.hpp"
#include "edgelighter/parallel.hpp"
#include "edgelighter/partition.hpp"
#include "edgelighter/walk.hpp"

namespace edgelighter {

inline constexpr std::size_t kChainStateCap = 100000;

struct ChainModel {
    std::size_t num_states = 0;
    // Sparse row-stochastic transitions, each row sorted by column.
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
    std::vector<double> stationary;  // closed form, normalized

    // Decoding metadata.
    int n = 0;
    std::vector<std::uint64_t> config_masks;  // per config rank; bit k = pair k

    int position_of(std::size_t state) const {
        return static_cast<int>(state / config_masks.size());
    }
    std::uint64_t mask_of(std::size_t state) const {
        return config_masks[state % config_masks.size()];
    }

    double transition(std::size_t from, std::size_t to) const {
        const auto& row = rows[from];
        auto it = std::lower_bound(row.begin(), row.end(), to,
                                   [](const auto& e, std::size_t col) { return e.first < col; });
        return (it != row.end() && it->first == to) ? it->second : 0.0;
    }
};

namespace detail {

inline void add_prob(std::map<std::uint64_t, double>& acc, std::uint64_t state, double p) {
    if (p > 0.0) acc[state] += p;
}

inline void check_walk_qs(double q1, double q2) {
    if (!(q1 > 0.0) || !(q2 > 0.0) || (q1 == 1.0 && q2 == 1.0))
        throw std::invalid_argument(
            "edgelighter chain: degenerate lamp probabilities make the chain reducible "
            "(need q1 > 0, q2 > 0 and not q1 = q2 = 1)");
}

}  // namespace detail

// --- standard chain ---------------------------------------------------------

// Exact one-step transition matrix of the standard walk on
// V x {0,1}^C(n,2); needs n * 2^C(n,2) within the state cap (n <= 5).
inline ChainModel enumerate_standard_chain(int n, const StandardWalkParams& params) {
    params.validate();
    detail::check_walk_qs(params.q_on_to_off, params.q_off_to_on);
    if (n < 2) throw std::invalid_argument("enumerate_standard_chain: need n >= 2");
    const std::size_t pairs = Graph::pair_count(n);
    if (pairs >= 63 || static_cast<std::size_t>(n) * (1ull << pairs) > kChainStateCap)
        throw std::invalid_argument("enumerate_standard_chain: state space exceeds cap");
    const std::size_t num_configs = 1ull << pairs;

    ChainModel model;
    model.n = n;
    model.num_states = static_cast<std::size_t>(n) * num_configs;
    model.config_masks.resize(num_configs);
    for (std::size_t m = 0; m < num_configs; ++m) model.config_masks[m] = m;
    model.rows.resize(model.num_states);

    Graph indexer(n);
    const double inv_n = 1.0 / n;
    const double q1 = params.q_on_to_off, q2 = params.q_off_to_on;
    for (int u = 0; u < n; ++u) {
        for (std::uint64_t mask = 0; mask < num_configs; ++mask) {
            std::map<std::uint64_t, double> acc;
            std::uint64_t from = static_cast<std::uint64_t>(u) * num_configs + mask;
            detail::add_prob(acc, from, inv_n);  // self-jump
            for (int v = 0; v < n; ++v) {
                if (v == u) continue;
                std::uint64_t bit = 1ull << indexer.pair_index(u, v);
                std::uint64_t base = static_cast<std::uint64_t>(v) * num_configs;
                if (mask & bit) {
                    detail::add_prob(acc, base + (mask & ~bit), q1 * inv_n);
                    detail::add_prob(acc, base + mask, (1.0 - q1) * inv_n);
                } else {
                    detail::add_prob(acc, base + (mask | bit), q2 * inv_n);
                    detail::add_prob(acc, base + mask, (1.0 - q2) * inv_n);
                }
            }
            auto& row = model.rows[from];
            row.assign(acc.begin(), acc.end());
        }
    }

    model.stationary = [&] {
        std::vector<double> pi(model.num_states);
        double total = 0.0;
        for (std::size_t s = 0; s < model.num_states; ++s) {
            int on = __builtin_popcountll(model.mask_of(s));
            pi[s] = inv_n * std::pow(q2, on) * std::pow(q1, static_cast<double>(pairs) - on);
            total += pi[s];
        }
        for (double& x : pi) x /= total;
        return pi;
    }();
    return model;
}

// pi(u, c) proportional to (1/n) q2^{#on} q1^{#off}, normalized.
inline std::vector<double> stationary_standard(int n, const StandardWalkParams& params) {
    params.validate();
    detail::check_walk_qs(params.q_on_to_off, params.q_off_to_on);
    if (n < 2) throw std::invalid_argument("stationary_standard: need n >= 2");
    const std::size_t pairs = Graph::pair_count(n);
    if (pairs >= 63 || static_cast<std::size_t>(n) * (1ull << pairs) > kChainStateCap)
        throw std::invalid_argument("stationary_standard: state space exceeds cap");
    const std::size_t num_configs = 1ull << pairs;
    std::vector<double> pi(static_cast<std::size_t>(n) * num_configs);
    double total = 0.0;
    for (std::size_t s = 0; s < pi.size(); ++s) {
        int on = __builtin_popcountll(s % num_configs);
        pi[s] = (1.0 / n) * std::pow(params.q_off_to_on, on) *
                std::pow(params.q_on_to_off, static_cast<double>(pairs) - on);
        total += pi[s];
    }
    for (double& x : pi) x /= total;
    return pi;
}

// --- block chain -------------------------------------------------------------

// Exact transitions of the block walk on the restricted space where every
// cross-community edge count m_ij equals its value in g0. Refuses K = 1 (the
// leave branch is undefined there; the restricted chain is just the standard
// within-block chain).
inline ChainModel enumerate_block_chain(const Graph& g0, const Partition& part,
                                        const BlockWalkParams& params) {
    const int n = g0.n();
    const int k = part.communities();
    if (part.n() != n) throw std::invalid_argument("enumerate_block_chain: partition mismatch");
    if (k < 2) throw std::invalid_argument("enumerate_block_chain: need K >= 2");
    params.validate(k);
    for (int c = 0; c < k; ++c)
        if (part.size_of(c) >= 2)
            detail::check_walk_qs(params.q_on_to_off[c], params.q_off_to_on[c]);

    const std::size_t pairs = Graph::pair_count(n);
    if (pairs >= 63) throw std::invalid_argument("enumerate_block_chain: graph too large");

    // Classify pairs and record the fixed cross counts.
    std::vector<std::vector<std::size_t>> cross_list(static_cast<std::size_t>(k) * k);
    std::vector<std::uint64_t> within_bits(k, 0);
    std::vector<std::size_t> m_fixed(static_cast<std::size_t>(k) * k, 0);
    auto slot = [k](int i, int j) {
        if (i > j) std::swap(i, j);
        return static_cast<std::size_t>(i) * k + j;
    };
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            std::size_t idx = g0.pair_index(u, v);
            int cu = part.label(u), cv = part.label(v);
            if (cu == cv) {
                within_bits[cu] |= 1ull << idx;
            } else {
                cross_list[slot(cu, cv)].push_back(idx);
                if (g0.edge(u, v)) ++m_fixed[slot(cu, cv)];
            }
        }

    // Size check: product of free within configs and cross m-subsets.
    double count = 1.0;
    for (int c = 0; c < k; ++c) count *= std::pow(2.0, __builtin_popcountll(within_bits[c]));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            double binom = 1.0;
            std::size_t total = cross_list[slot(i, j)].size(), m = m_fixed[slot(i, j)];
            for (std::size_t t = 0; t < m; ++t)
                binom = binom * static_cast<double>(total - t) / static_cast<double>(t + 1);
            count *= binom;
        }
    if (count * n > static_cast<double>(kChainStateCap))
        throw std::invalid_argument("enumerate_block_chain: restricted state space exceeds cap");

    // Generate all valid configuration masks.
    std::vector<std::uint64_t> configs{0};
    for (int c = 0; c < k; ++c) {
        std::vector<std::size_t> bits;
        for (std::size_t b = 0; b < pairs; ++b)
            if (within_bits[c] & (1ull << b)) bits.push_back(b);
        std::vector<std::uint64_t> expanded;
        expanded.reserve(configs.size() << bits.size());
        for (std::uint64_t base : configs)
            for (std::uint64_t sub = 0; sub < (1ull << bits.size()); ++sub) {
                std::uint64_t mask = base;
                for (std::size_t t = 0; t < bits.size(); ++t)
                    if (sub & (1ull << t)) mask |= 1ull << bits[t];
                expanded.push_back(mask);
            }
        configs.swap(expanded);
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const auto& list = cross_list[slot(i, j)];
            const std::size_t m = m_fixed[slot(i, j)];
            if (list.empty()) continue;
            // All m-subsets of this cross block's pair list.
            std::vector<std::uint64_t> subsets;
            std::vector<std::size_t> pick(m);
            std::function<void(std::size_t, std::size_t, std::uint64_t)> rec =
                [&](std::size_t start, std::size_t chosen, std::uint64_t mask) {
                    if (chosen == m) {
                        subsets.push_back(mask);
                        return;
                    }
                    for (std::size_t t = start; t + (m - chosen) <= list.size(); ++t)
                        rec(t + 1, chosen + 1, mask | (1ull << list[t]));
                };
            rec(0, 0, 0);
            std::vector<std::uint64_t> expanded;
            expanded.reserve(configs.size() * subsets.size());
            for (std::uint64_t base : configs)
                for (std::uint64_t sub : subsets) expanded.push_back(base | sub);
            configs.swap(expanded);
        }
    std::sort(configs.begin(), configs.end());

    std::map<std::uint64_t, std::uint32_t> rank;
    for (std::size_t r = 0; r < configs.size(); ++r)
        rank[configs[r]] = static_cast<std::uint32_t>(r);

    ChainModel model;
    model.n = n;
    model.config_masks = configs;
    model.num_states = static_cast<std::size_t>(n) * configs.size();
    model.rows.resize(model.num_states);

    Graph indexer(n);
    auto state_of = [&](int u, std::uint64_t mask) {
        return static_cast<std::uint64_t>(u) * configs.size() + rank.at(mask);
    };

    for (int u = 0; u < n; ++u) {
        const int ci = part.label(u);
        const auto& block = part.members(ci);
        const double stay_base = 0.5 / static_cast<double>(block.size());
        const double q1 = params.q_on_to_off[ci], q2 = params.q_off_to_on[ci];
        for (std::uint64_t mask : configs) {
            std::map<std::uint64_t, double> acc;
            // Stay branch, including the self-hold at v = u.
            detail::add_prob(acc, state_of(u, mask), stay_base);
            for (int v : block) {
                if (v == u) continue;
                std::uint64_t bit = 1ull << indexer.pair_index(u, v);
                if (mask & bit) {
                    detail::add_prob(acc, state_of(v, mask & ~bit), stay_base * q1);
                    detail::add_prob(acc, state_of(v, mask), stay_base * (1.0 - q1));
                } else {
                    detail::add_prob(acc, state_of(v, mask | bit), stay_base * q2);
                    detail::add_prob(acc, state_of(v, mask), stay_base * (1.0 - q2));
                }
            }
            // Leave branch.
            for (int cj = 0; cj < k; ++cj) {
                if (cj == ci) continue;
                const auto& target = part.members(cj);
                double base = 0.5 / static_cast<double>(k - 1) / static_cast<double>(target.size());
                const auto& list = cross_list[slot(ci, cj)];
                const std::size_t m = m_fixed[slot(ci, cj)];
                if (m == 0 || m == list.size()) {
                    for (int w : target) detail::add_prob(acc, state_of(w, mask), base);
                    continue;
                }
                double swap_prob = 1.0 / (static_cast<double>(m) * static_cast<double>(list.size() - m));
                for (std::size_t e1 : list) {
                    if (!(mask & (1ull << e1))) continue;
                    for (std::size_t e2 : list) {
                        if (mask & (1ull << e2)) continue;
                        std::uint64_t next = (mask & ~(1ull << e1)) | (1ull << e2);
                        for (int w : target)
                            detail::add_prob(acc, state_of(w, next), base * swap_prob);
                    }
                }
            }
            auto& row = model.rows[state_of(u, mask)];
            row.assign(acc.begin(), acc.end());
        }
    }

    // Closed-form stationary measure (see stationary_block).
    model.stationary = [&] {
        std::vector<double> pi(model.num_states);
        double total = 0.0;
        for (std::size_t s = 0; s < model.num_states; ++s) {
            int u = model.position_of(s);
            std::uint64_t mask = model.mask_of(s);
            double w = 1.0 / static_cast<double>(part.size_of(part.label(u)));
            for (int c = 0; c < k; ++c) {
                int on = __builtin_popcountll(mask & within_bits[c]);
                int off = __builtin_popcountll(within_bits[c]) - on;
                w *= std::pow(params.q_off_to_on[c], on) * std::pow(params.q_on_to_off[c], off);
            }
            pi[s] = w;
            total += w;
        }
        for (double& x : pi) x /= total;
        return pi;
    }();
    return model;
}

// pi(B_i, u, c) proportional to
//   (1/K)(1/|B_i|) prod_j q_{j;2}^{on_j(c)} q_{j;1}^{off_j(c)} prod_{i<j} C(n_i n_j, m_ij)^{-1}
// normalized over the restricted space. The cross binomial factor is constant
// there (every reachable state shares the m_ij), so it cancels in the
// normalization; the within-community lamp weights and the 1/|B_i| position
// factor carry all the variation.
inline std::vector<double> stationary_block(const Graph& g0, const Partition& part,
                                            const BlockWalkParams& params) {
    return enumerate_block_chain(g0, part, params).stationary;
}

// --- distances, residuals, mixing -------------------------------------------

inline double tv_distance(const std::vector<double>& mu, const std::vector<double>& nu) {
    if (mu.size() != nu.size()) throw std::invalid_argument("tv_distance: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) s += std::abs(mu[i] - nu[i]);
    return 0.5 * s;
}

inline double stationarity_residual(const ChainModel& model) {
    std::vector<double> next(model.num_states, 0.0);
    for (std::size_t x = 0; x < model.num_states; ++x)
        for (const auto& [y, p] : model.rows[x]) next[y] += model.stationary[x] * p;
    double s = 0.0;
    for (std::size_t y = 0; y < model.num_states; ++y)
        s += std::abs(next[y] - model.stationary[y]);
    return s;
}

// max over state pairs of |pi(x) P(x,y) - pi(y) P(y,x)|.
inline double detailed_balance_residual(const ChainModel& model) {
    double worst = 0.0;
    for (std::size_t x = 0; x < model.num_states; ++x)
        for (const auto& [y, p] : model.rows[x]) {
            double forward = model.stationary[x] * p;
            double backward = model.stationary[y] * model.transition(y, x);
            worst = std::max(worst, std::abs(forward - backward));
        }
    return worst;
}

// Dominant left eigenvector by power iteration; independent cross-check of
// the closed forms.
inline std::vector<double> left_eigenvector(const ChainModel& model, double tol = 1e-12,
                                            long long cap = 1000000) {
    std::vector<double> dist(model.num_states, 1.0 / static_cast<double>(model.num_states));
    std::vector<double> next(model.num_states);
    for (long long it = 0; it < cap; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t x = 0; x < model.num_states; ++x) {
            if (dist[x] == 0.0) continue;
            for (const auto& [y, p] : model.rows[x]) next[y] += dist[x] * p;
        }
        double diff = 0.0;
        for (std::size_t y = 0; y < model.num_states; ++y) diff += std::abs(next[y] - dist[y]);
        dist.swap(next);
        if (diff < tol) return dist;
    }
    throw std::runtime_error("left_eigenvector: power iteration did not converge");
}

struct MixingReport {
    long long t_mix = 0;
    std::vector<double> tv_curve;  // tv_curve[t] = worst-start TV at time t
    double epsilon = 0.25;
};

// First t with worst-start TV below epsilon, by iterating one distribution
// per start state (memory O(states^2) worst case, starts processed in
// parallel). Non-convergence within the cap signals reducibility/periodicity.
inline MixingReport exact_mixing_time(const ChainModel& model, double epsilon = 0.25,
                                      long long cap = 100000, int threads = 0) {
    if (model.num_states == 0) throw std::invalid_argument("exact_mixing_time: empty model");
    if (model.num_states > 8192)
        throw std::invalid_argument("exact_mixing_time: too many states for dense per-start sweep");
    if (threads <= 0) threads = default_thread_count();
    const std::size_t s = model.num_states;

    std::vector<std::vector<double>> dist(s), scratch(s);
    for (std::size_t x = 0; x < s; ++x) {
        dist[x].assign(s, 0.0);
        dist[x][x] = 1.0;
        scratch[x].assign(s, 0.0);
    }
    MixingReport report;
    report.epsilon = epsilon;
    std::vector<double> tv(s, 0.0);
    for (long long t = 0; t <= cap; ++t) {
        parallel_for(s, threads, [&](std::size_t x) { tv[x] = tv_distance(dist[x], model.stationary); });
        double worst = *std::max_element(tv.begin(), tv.end());
        report.tv_curve.push_back(worst);
        if (worst < epsilon) {
            report.t_mix = t;
            return report;
        }
        parallel_for(s, threads, [&](std::size_t x) {
            auto& cur = dist[x];
            auto& nxt = scratch[x];
            std::fill(nxt.begin(), nxt.end(), 0.0);
            for (std::size_t from = 0; from < s; ++from) {
                if (cur[from] == 0.0) continue;
                for (const auto& [to, p] : model.rows[from]) nxt[to] += cur[from] * p;
            }
            cur.swap(nxt);
        });
    }
    throw std::runtime_error(
        "exact_mixing_time: no convergence within step cap (chain may be reducible or periodic)");
}

// Worst-start mixing of a projected (marginal) statistic: states are mapped
// to cells and TV is measured between projected distributions.
inline long long marginal_mixing_time(const ChainModel& model, const std::vector<int>& cell_of_state,
                                      double epsilon = 0.25, long long cap = 100000) {
    if (cell_of_state.size() != model.num_states)
        throw std::invalid_argument("marginal_mixing_time: cell map size mismatch");
    int cells = *std::max_element(cell_of_state.begin(), cell_of_state.end()) + 1;
    std::vector<double> pi_proj(cells, 0.0);
    for (std::size_t x = 0; x < model.num_states; ++x)
        pi_proj[cell_of_state[x]] += model.stationary[x];
    const std::size_t s = model.num_states;
    std::vector<std::vector<double>> dist(s), scratch(s);
    for (std::size_t x = 0; x < s; ++x) {
        dist[x].assign(s, 0.0);
        dist[x][x] = 1.0;
        scratch[x].assign(s, 0.0);
    }
    std::vector<double> proj(cells);
    for (long long t = 0; t <= cap; ++t) {
        double worst = 0.0;
        for (std::size_t x = 0; x < s; ++x) {
            std::fill(proj.begin(), proj.end(), 0.0);
            for (std::size_t y = 0; y < s; ++y) proj[cell_of_state[y]] += dist[x][y];
            worst = std::max(worst, tv_distance(proj, pi_proj));
        }
        if (worst < epsilon) return t;
        for (std::size_t x = 0; x < s; ++x) {
            auto& cur = dist[x];
            auto& nxt = scratch[x];
            std::fill(nxt.begin(), nxt.end(), 0.0);
            for (std::size_t from = 0; from < s; ++from) {
                if (cur[from] == 0.0) continue;
                for (const auto& [to, p] : model.rows[from]) nxt[to] += cur[from] * p;
            }
            cur.swap(nxt);
        }
    }
    throw std::runtime_error("marginal_mixing_time: no convergence within step cap");
}

}  // namespace edgelighter
