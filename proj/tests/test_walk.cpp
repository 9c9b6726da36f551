#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "edgelighter/graph.hpp"
#include "edgelighter/partition.hpp"
#include "edgelighter/rng.hpp"
#include "edgelighter/sampling.hpp"
#include "edgelighter/stats.hpp"
#include "edgelighter/walk.hpp"

using namespace edgelighter;

namespace {

Graph triangle_on() {
    Graph g(3);
    g.set_edge(0, 1, true);
    g.set_edge(1, 2, true);
    g.set_edge(0, 2, true);
    return g;
}

long long recount_cross(const Graph& g, const Partition& part, int i, int j) {
    long long m = 0;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (((part.label(u) == i && part.label(v) == j) ||
                 (part.label(u) == j && part.label(v) == i)) &&
                g.edge(u, v))
                ++m;
    return m;
}

}  // namespace

TEST_CASE("zero flip probabilities freeze the graph") {
    RngStream rng(1, 0);
    Graph g0 = sample_er(6, 0.5, rng);
    StandardWalkParams params{0.0, 0.0};
    WalkState s = WalkState::standard(g0, rng);
    for (int t = 0; t < 500; ++t) {
        step_standard(s, params, rng);
        REQUIRE(s.graph == g0);
    }
    REQUIRE(s.step == 500);
}

TEST_CASE("self-jumps leave the graph unchanged; q=1 traversals always flip") {
    // n = 2 makes both branches observable: the graph changes exactly when
    // the walker moves.
    Graph g0(2);
    g0.set_edge(0, 1, true);
    StandardWalkParams params{1.0, 1.0};
    RngStream rng(3, 0);
    WalkState s = WalkState::standard(g0, rng);
    int moves = 0, holds = 0;
    for (int t = 0; t < 400; ++t) {
        Graph before = s.graph;
        int old_pos = s.position;
        step_standard(s, params, rng);
        if (s.position == old_pos) {
            REQUIRE(s.graph == before);
            ++holds;
        } else {
            REQUIRE(s.graph != before);
            REQUIRE(s.graph.edge(0, 1) != before.edge(0, 1));
            ++moves;
        }
    }
    REQUIRE(moves > 100);
    REQUIRE(holds > 100);
}

TEST_CASE("q=1 single step on the triangle flips exactly the traversed lamp") {
    StandardWalkParams params{1.0, 1.0};
    for (int seed = 0; seed < 40; ++seed) {
        RngStream rng(seed, 99);
        WalkState s = WalkState::standard(triangle_on(), rng);
        int u = s.position;
        step_standard(s, params, rng);
        int v = s.position;
        if (u == v) {
            REQUIRE(s.graph == triangle_on());
        } else {
            REQUIRE(!s.graph.edge(u, v));
            REQUIRE(s.graph.edge_count() == 2);  // only {u,v} changed
        }
    }
}

TEST_CASE("cover tracker is monotone and completes exactly once") {
    RngStream rng(5, 0);
    Graph g0 = sample_er(5, 0.5, rng);
    StandardWalkParams params{0.5, 0.5};
    WalkState s = WalkState::standard(g0, rng);
    std::size_t last = 0;
    while (!s.cover.complete()) {
        step_standard(s, params, rng);
        REQUIRE(s.cover.covered_count() >= last);
        last = s.cover.covered_count();
        REQUIRE(s.cover.rate() >= 0.0);
        REQUIRE(s.cover.rate() <= 1.0);
        REQUIRE(s.cover.complete() == s.cover.cover_time().has_value());
        REQUIRE(s.step < 10000);  // n = 5 covers fast
    }
    long long at = *s.cover.cover_time();
    for (int t = 0; t < 50; ++t) step_standard(s, params, rng);
    REQUIRE(*s.cover.cover_time() == at);
    REQUIRE(s.cover.rate() == 1.0);
}

TEST_CASE("covered lamp is Bernoulli(q2) regardless of the initial configuration") {
    // q1 = 1 - q2: once covered, a pair's indicator is an exact resample.
    const double q2 = 0.7;
    StandardWalkParams params{1.0 - q2, q2};
    const int n = 6, steps = 60, reps = 10000;
    for (bool initially_on : {true, false}) {
        Graph g0(n);
        if (initially_on)
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) g0.set_edge(u, v, true);
        long long covered = 0, on_given_covered = 0;
        RngStream root(initially_on ? 10 : 11, 0);
        for (int r = 0; r < reps; ++r) {
            RngStream rng = root.split(r);
            WalkState s = WalkState::standard(g0, rng);
            for (int t = 0; t < steps; ++t) step_standard(s, params, rng);
            if (s.cover.covered(s.graph.pair_index(0, 1))) {
                ++covered;
                if (s.graph.edge(0, 1)) ++on_given_covered;
            }
        }
        REQUIRE(covered > 2000);
        double freq = static_cast<double>(on_given_covered) / covered;
        double sigma = std::sqrt(q2 * (1 - q2) / static_cast<double>(covered));
        REQUIRE(std::abs(freq - q2) < 4.0 * sigma);
    }
}

TEST_CASE("marginal position chain is uniform (chi-square, n = 10)") {
    RngStream rng(21, 0);
    Graph g0 = sample_er(10, 0.5, rng);
    StandardWalkParams params{0.5, 0.5};
    WalkState s = WalkState::standard(g0, rng);
    std::vector<long long> counts(10, 0);
    const int draws = 100000;
    for (int t = 0; t < draws; ++t) {
        step_standard(s, params, rng);
        ++counts[s.position];
    }
    double chi = 0.0, expect = draws / 10.0;
    for (long long c : counts) chi += (c - expect) * (c - expect) / expect;
    REQUIRE(chi < chi_square_critical(9, 3.0902));  // alpha = 0.001
}

TEST_CASE("consecutive position pairs are iid draws of two uniform vertices") {
    // {L_{2t}, L_{2t+1}} cells: unordered pair {u,v} has mass 2/n^2, a
    // self-pair {v,v} has mass 1/n^2 (n = 6).
    const int n = 6;
    RngStream rng(31, 0);
    Graph g0 = sample_er(n, 0.5, rng);
    StandardWalkParams params{0.5, 0.5};
    WalkState s = WalkState::standard(g0, rng);
    Graph indexer(n);
    const int pairs = 30000;
    std::vector<long long> off_diag(Graph::pair_count(n), 0);
    std::vector<long long> diag(n, 0);
    for (int t = 0; t < pairs; ++t) {
        int a = s.position;
        step_standard(s, params, rng);
        int b = s.position;
        step_standard(s, params, rng);  // consume the odd step: pairs are disjoint
        if (a == b)
            ++diag[a];
        else
            ++off_diag[indexer.pair_index(a, b)];
        a = s.position;
    }
    double chi = 0.0;
    for (long long c : off_diag) {
        double expect = pairs * 2.0 / (n * n);
        chi += (c - expect) * (c - expect) / expect;
    }
    for (long long c : diag) {
        double expect = pairs * 1.0 / (n * n);
        chi += (c - expect) * (c - expect) / expect;
    }
    REQUIRE(chi < chi_square_critical(static_cast<int>(Graph::pair_count(n)) + n - 1, 3.0902));
}

TEST_CASE("block walk conserves cross-community edge counts") {
    // Two communities with m12 = 3; full recount each step is the oracle.
    Partition part = Partition::contiguous({4, 5});
    Graph g0(9);
    RngStream init(41, 0);
    for (int u = 0; u < 9; ++u)
        for (int v = u + 1; v < 9; ++v)
            if (part.label(u) == part.label(v) && init.bernoulli(0.5)) g0.set_edge(u, v, true);
    g0.set_edge(0, 4, true);
    g0.set_edge(1, 6, true);
    g0.set_edge(3, 8, true);
    REQUIRE(recount_cross(g0, part, 0, 1) == 3);

    BlockWalkParams params = BlockWalkParams::uniform(2, 0.5, 0.5);
    RngStream rng(42, 0);
    WalkState s = WalkState::block(g0, part, rng);
    for (int t = 0; t < 10000; ++t) {
        step_block(s, params, part, rng);
        REQUIRE(recount_cross(s.graph, part, 0, 1) == 3);
    }
    REQUIRE(s.step == 10000);
}

TEST_CASE("block walk with one community behaves as the standard within-block walk") {
    Partition part = Partition::contiguous({5});
    RngStream rng(43, 0);
    Graph g0 = sample_er(5, 0.5, rng);
    BlockWalkParams params = BlockWalkParams::uniform(1, 0.5, 0.5);
    WalkState s = WalkState::block(g0, part, rng);
    for (int t = 0; t < 2000; ++t) step_block(s, params, part, rng);
    REQUIRE(s.step == 2000);
    REQUIRE(s.community == 0);
    REQUIRE(s.cover.complete());  // the stay branch alone covers all pairs
}

TEST_CASE("degenerate cross blocks skip the swap but still move") {
    // No cross edges at all: m12 = 0 stays 0, moves still happen.
    Partition part = Partition::contiguous({3, 3});
    Graph g0(6);
    g0.set_edge(0, 1, true);
    g0.set_edge(3, 4, true);
    BlockWalkParams params = BlockWalkParams::uniform(2, 0.5, 0.5);
    RngStream rng(44, 0);
    WalkState s = WalkState::block(g0, part, rng);
    bool visited_both = false;
    int first = s.community;
    for (int t = 0; t < 500; ++t) {
        step_block(s, params, part, rng);
        REQUIRE(recount_cross(s.graph, part, 0, 1) == 0);
        if (s.community != first) visited_both = true;
    }
    REQUIRE(visited_both);
}

TEST_CASE("run_walk snapshots and determinism") {
    RngStream rng(51, 0);
    Graph g0 = sample_er(8, 0.5, rng);
    StandardWalkParams params{0.5, 0.5};

    auto zero = run_walk(g0, params, 0, 5, RngStream(7, 7));
    REQUIRE(zero.size() == 1);
    REQUIRE(zero[0].graph == g0);
    REQUIRE(zero[0].step == 0);

    auto a = run_walk(g0, params, 10, 3, RngStream(7, 7));
    REQUIRE(a.size() == 4);  // steps 0, 3, 6, 9
    REQUIRE(a[3].step == 9);

    auto b = run_walk(g0, params, 10, 3, RngStream(7, 7));
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].graph == b[i].graph);
        REQUIRE(a[i].position == b[i].position);
        REQUIRE(a[i].cover.covered_count() == b[i].cover.covered_count());
    }

    int observed = 0;
    run_walk(g0, params, 10, 3, RngStream(7, 7), [&](const WalkState&) { ++observed; }, false);
    REQUIRE(observed == 4);
}

TEST_CASE("block run_walk is deterministic and keeps the community in sync") {
    Partition part = Partition::contiguous({3, 4});
    RngStream rng(61, 0);
    Graph g0 = sample_er(7, 0.5, rng);
    BlockWalkParams params = BlockWalkParams::uniform(2, 0.5, 0.5);
    auto a = run_walk(g0, params, part, 200, 50, RngStream(8, 8), {}, true);
    auto b = run_walk(g0, params, part, 200, 50, RngStream(8, 8), {}, true);
    REQUIRE(a.size() == 5);
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].graph == b[i].graph);
        REQUIRE(a[i].position == b[i].position);
        REQUIRE(a[i].community == part.label(a[i].position));
    }
    Partition wrong = Partition::contiguous({3, 3});
    RngStream r2(9, 9);
    REQUIRE_THROWS_AS(WalkState::block(g0, wrong, r2), std::invalid_argument);
}
