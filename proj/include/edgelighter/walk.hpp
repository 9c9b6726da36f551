// Edgelighter noise processes: a walker jumps between vertices and resamples
// the lamp (edge indicator) of every pair it traverses. The standard walk
// jumps uniformly over all vertices; the block walk stays inside or leaves a
// community with equal probability and conserves cross-community edge counts.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "edgelighter/graph.hpp"
#include "edgelighter/partition.hpp"
#include "edgelighter/rng.hpp"

namespace edgelighter {

struct StandardWalkParams {
    double q_on_to_off = 0.5;  // q1: chance a traversed on-lamp turns off
    double q_off_to_on = 0.5;  // q2: chance a traversed off-lamp turns on

    void validate() const {
        if (!(q_on_to_off >= 0.0 && q_on_to_off <= 1.0) ||
            !(q_off_to_on >= 0.0 && q_off_to_on <= 1.0))
            throw std::invalid_argument("StandardWalkParams: probabilities must lie in [0,1]");
    }
};

struct BlockWalkParams {
    std::vector<double> q_on_to_off;  // per community
    std::vector<double> q_off_to_on;

    static BlockWalkParams uniform(int k, double q1, double q2) {
        return BlockWalkParams{std::vector<double>(k, q1), std::vector<double>(k, q2)};
    }

    void validate(int k) const {
        if (static_cast<int>(q_on_to_off.size()) != k || static_cast<int>(q_off_to_on.size()) != k)
            throw std::invalid_argument("BlockWalkParams: need one (q1,q2) pair per community");
        for (double q : q_on_to_off)
            if (!(q >= 0.0 && q <= 1.0))
                throw std::invalid_argument("BlockWalkParams: probabilities must lie in [0,1]");
        for (double q : q_off_to_on)
            if (!(q >= 0.0 && q <= 1.0))
                throw std::invalid_argument("BlockWalkParams: probabilities must lie in [0,1]");
    }
};

// Tracks which unordered pairs {u,v}, u != v, have appeared as consecutive
// walker positions. Self-jumps cover nothing.
class CoverTracker {
public:
    explicit CoverTracker(int n) : total_(Graph::pair_count(n)) {
        bits_.assign((total_ + 63) / 64 + 1, 0ull);
    }

    // Marks pair `idx` as covered by the move that ended at time `step`.
    void mark(std::size_t idx, long long step) {
        std::uint64_t mask = 1ull << (idx & 63);
        std::uint64_t& word = bits_[idx >> 6];
        if (!(word & mask)) {
            word |= mask;
            ++covered_;
            if (covered_ == total_ && !cover_time_) cover_time_ = step;
        }
    }

    bool covered(std::size_t idx) const { return (bits_[idx >> 6] >> (idx & 63)) & 1ull; }
    std::size_t covered_count() const { return covered_; }
    std::size_t total_pairs() const { return total_; }
    double rate() const { return total_ == 0 ? 1.0 : static_cast<double>(covered_) / total_; }
    bool complete() const { return covered_ == total_; }
    std::optional<long long> cover_time() const { return cover_time_; }

private:
    std::vector<std::uint64_t> bits_;
    std::size_t total_;
    std::size_t covered_ = 0;
    std::optional<long long> cover_time_;
};

namespace detail {

// Indexable set of the current cross-(i,j) edges, one list per community
// pair, kept in lockstep with the graph so the block walk can draw a uniform
// cross edge in O(1) and a uniform cross non-edge by rejection.
class CrossEdgeIndex {
public:
    CrossEdgeIndex() = default;

    CrossEdgeIndex(const Graph& g, const Partition& part) {
        k_ = part.communities();
        lists_.assign(static_cast<std::size_t>(k_) * k_, {});
        for (int u = 0; u < g.n(); ++u)
            for (int v = u + 1; v < g.n(); ++v)
                if (part.label(u) != part.label(v) && g.edge(u, v)) {
                    std::size_t idx = g.pair_index(u, v);
                    auto& list = lists_[slot(part.label(u), part.label(v))];
                    pos_[idx] = {slot(part.label(u), part.label(v)), list.size()};
                    list.push_back(idx);
                }
    }

    std::size_t count(int i, int j) const { return lists_[slot(i, j)].size(); }

    std::size_t sample_edge(int i, int j, RngStream& rng) const {
        const auto& list = lists_[slot(i, j)];
        return list[rng.next_below(static_cast<std::uint32_t>(list.size()))];
    }

    void remove(std::size_t pair_idx) {
        auto it = pos_.find(pair_idx);
        auto [s, at] = it->second;
        auto& list = lists_[s];
        std::size_t last = list.back();
        list[at] = last;
        pos_[last] = {s, at};
        list.pop_back();
        pos_.erase(it);
    }

    void insert(int i, int j, std::size_t pair_idx) {
        auto& list = lists_[slot(i, j)];
        pos_[pair_idx] = {slot(i, j), list.size()};
        list.push_back(pair_idx);
    }

private:
    std::size_t slot(int i, int j) const {
        if (i > j) std::swap(i, j);
        return static_cast<std::size_t>(i) * k_ + j;
    }

    int k_ = 0;
    std::vector<std::vector<std::size_t>> lists_;
    std::unordered_map<std::size_t, std::pair<std::size_t, std::size_t>> pos_;
};

}  // namespace detail

// Full chain state: walker position, lamp configuration, step counter and
// cover tracker. For block walks `community` mirrors the position's label and
// a cross-edge index is kept as derived state.
struct WalkState {
    Graph graph;
    int position = 0;
    int community = 0;
    long long step = 0;
    CoverTracker cover;
    detail::CrossEdgeIndex cross;

    explicit WalkState(Graph g, int start_position)
        : graph(std::move(g)), position(start_position), cover(graph.n()) {
        if (start_position < 0 || start_position >= graph.n())
            throw std::invalid_argument("WalkState: start position out of range");
    }

    static WalkState standard(Graph g, RngStream& rng) {
        int start = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(g.n())));
        return WalkState(std::move(g), start);
    }

    static WalkState block(Graph g, const Partition& part, RngStream& rng) {
        if (part.n() != g.n()) throw std::invalid_argument("WalkState: partition size mismatch");
        int start = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(g.n())));
        WalkState s(std::move(g), start);
        s.community = part.label(start);
        s.cross = detail::CrossEdgeIndex(s.graph, part);
        return s;
    }
};

namespace detail {

// Traversal of {u,v}: resample the lamp and mark the pair covered.
inline void traverse_pair(WalkState& s, int u, int v, double q1, double q2, RngStream& rng) {
    std::size_t idx = s.graph.pair_index(u, v);
    if (s.graph.test(idx)) {
        if (rng.bernoulli(q1)) s.graph.set(idx, false);
    } else {
        if (rng.bernoulli(q2)) s.graph.set(idx, true);
    }
    s.cover.mark(idx, s.step);
}

}  // namespace detail

// One step of the standard walk: jump to a uniform vertex; on a non-self
// jump, resample the traversed lamp.
inline void step_standard(WalkState& s, const StandardWalkParams& p, RngStream& rng) {
    const int n = s.graph.n();
    if (n < 2) throw std::invalid_argument("step_standard: need n >= 2");
    int v = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n)));
    ++s.step;
    if (v != s.position) detail::traverse_pair(s, s.position, v, p.q_on_to_off, p.q_off_to_on, rng);
    s.position = v;
}

// One step of the block walk. Stay (prob 1/2): standard step inside the
// community with its (q1, q2), self-hold probability 1/(2 n_i). Leave (prob
// 1/2): pick another community uniformly, swap one uniform cross edge off and
// one uniform cross non-edge on (skipped when the cross block has no edges or
// no non-edges), and move to a uniform vertex there. Cross-community edge
// counts m_ij are conserved. With K = 1 only the stay branch exists.
inline void step_block(WalkState& s, const BlockWalkParams& p, const Partition& part,
                       RngStream& rng) {
    const int i = s.community;
    const int k = part.communities();
    const bool stay = (k == 1) ? true : rng.bernoulli(0.5);
    ++s.step;
    if (stay) {
        const auto& block = part.members(i);
        int v = block[rng.next_below(static_cast<std::uint32_t>(block.size()))];
        if (v != s.position)
            detail::traverse_pair(s, s.position, v, p.q_on_to_off[i], p.q_off_to_on[i], rng);
        s.position = v;
        return;
    }
    int j = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(k - 1)));
    if (j >= i) ++j;
    const auto& source = part.members(i);
    const auto& target = part.members(j);
    const std::size_t cross_pairs = source.size() * target.size();
    const std::size_t m = s.cross.count(i, j);
    if (m > 0 && m < cross_pairs) {
        std::size_t e1 = s.cross.sample_edge(i, j, rng);
        // Uniform cross non-edge: rejection over the n_i * n_j cross pairs,
        // or a direct scan when nearly all of them are edges.
        std::size_t e2;
        if ((cross_pairs - m) * 16 >= cross_pairs) {
            for (;;) {
                std::size_t r = rng.next_below(static_cast<std::uint32_t>(cross_pairs));
                int a = source[r / target.size()];
                int b = target[r % target.size()];
                e2 = s.graph.pair_index(a, b);
                if (!s.graph.test(e2)) break;
            }
        } else {
            std::vector<std::size_t> off;
            off.reserve(cross_pairs - m);
            for (int a : source)
                for (int b : target) {
                    std::size_t idx = s.graph.pair_index(a, b);
                    if (!s.graph.test(idx)) off.push_back(idx);
                }
            e2 = off[rng.next_below(static_cast<std::uint32_t>(off.size()))];
        }
        s.graph.set(e1, false);
        s.graph.set(e2, true);
        s.cross.remove(e1);
        s.cross.insert(i, j, e2);
    }
    int w = target[rng.next_below(static_cast<std::uint32_t>(target.size()))];
    s.cover.mark(s.graph.pair_index(s.position, w), s.step);
    s.position = w;
    s.community = j;
}

enum class WalkKind { standard, block };

using WalkObserver = std::function<void(const WalkState&)>;

namespace detail {

template <typename StepFn>
std::vector<WalkState> run_walk_impl(WalkState state, long long steps, long long checkpoint_every,
                                     StepFn&& advance, const WalkObserver& observer,
                                     bool keep_snapshots) {
    if (steps < 0) throw std::invalid_argument("run_walk: steps must be >= 0");
    if (checkpoint_every < 1) throw std::invalid_argument("run_walk: checkpoint cadence must be >= 1");
    std::vector<WalkState> snapshots;
    auto checkpoint = [&](const WalkState& s) {
        if (observer) observer(s);
        if (keep_snapshots) snapshots.push_back(s);
    };
    checkpoint(state);
    for (long long t = 1; t <= steps; ++t) {
        advance(state);
        if (t % checkpoint_every == 0) checkpoint(state);
    }
    return snapshots;
}

}  // namespace detail

// Runs a standard walk for `steps` moves, reporting at step 0 and at every
// multiple of `checkpoint_every`. Deterministic given the RngStream.
inline std::vector<WalkState> run_walk(const Graph& g0, const StandardWalkParams& params,
                                       long long steps, long long checkpoint_every, RngStream rng,
                                       const WalkObserver& observer = {},
                                       bool keep_snapshots = true) {
    params.validate();
    WalkState state = WalkState::standard(g0, rng);
    return detail::run_walk_impl(
        std::move(state), steps, checkpoint_every,
        [&](WalkState& s) { step_standard(s, params, rng); }, observer, keep_snapshots);
}

inline std::vector<WalkState> run_walk(const Graph& g0, const BlockWalkParams& params,
                                       const Partition& part, long long steps,
                                       long long checkpoint_every, RngStream rng,
                                       const WalkObserver& observer = {},
                                       bool keep_snapshots = true) {
    params.validate(part.communities());
    WalkState state = WalkState::block(g0, part, rng);
    return detail::run_walk_impl(
        std::move(state), steps, checkpoint_every,
        [&](WalkState& s) { step_block(s, params, part, rng); }, observer, keep_snapshots);
}

}  // namespace edgelighter
