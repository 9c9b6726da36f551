#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "edgelighter/brute_force.hpp"
#include "edgelighter/gmp.hpp"
#include "edgelighter/lap.hpp"
#include "edgelighter/sampling.hpp"
#include "edgelighter/sgm.hpp"
#include "edgelighter/walk.hpp"

using namespace edgelighter;

namespace {

CostMatrix random_cost(int n, RngStream& rng) {
    CostMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c.at(i, j) = rng.next_double() * 10.0 - 5.0;
    return c;
}

double exhaustive_min_cost(const CostMatrix& c) {
    std::vector<int> img(c.n());
    for (int i = 0; i < c.n(); ++i) img[i] = i;
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0;
        for (int i = 0; i < c.n(); ++i) total += c.at(i, img[i]);
        best = std::min(best, total);
    } while (std::next_permutation(img.begin(), img.end()));
    return best;
}

// Second, independently coded exhaustive matcher used as an oracle; counts
// ordered pairs, i.e. the trace itself.
long long oracle_best_objective(const Graph& a, const Graph& b) {
    std::vector<int> img(a.n());
    for (int i = 0; i < a.n(); ++i) img[i] = i;
    long long best = -1;
    do {
        long long obj = 0;
        for (int i = 0; i < a.n(); ++i)
            for (int j = 0; j < a.n(); ++j)
                if (i != j && a.edge(i, j) && b.edge(img[i], img[j])) ++obj;
        best = std::max(best, obj);
    } while (std::next_permutation(img.begin(), img.end()));
    return best;
}

MatchResult best_of_restarts(const Graph& a, const Graph& b, const SeedSet& seeds, int restarts,
                             RngStream rng) {
    SolverOptions opts;
    opts.init = SgmInit::barycenter;
    MatchResult best = sgm_faq(a, b, seeds, opts);
    for (int r = 1; r < restarts; ++r) {
        SolverOptions alt;
        alt.init = SgmInit::random;
        alt.rng = rng.split(r);
        MatchResult cand = sgm_faq(a, b, seeds, alt);
        if (cand.objective > best.objective) best = cand;
    }
    return best;
}

Graph cycle(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.set_edge(i, (i + 1) % n, true);
    return g;
}

}  // namespace

TEST_CASE("lap_solve basics and tie rule") {
    CostMatrix diag0(3, 1.0);
    for (int i = 0; i < 3; ++i) diag0.at(i, i) = 0.0;
    PermutationMap p = lap_solve(diag0);
    REQUIRE(p == PermutationMap::identity(3));

    CostMatrix equal(4, 3.25);
    REQUIRE(lap_solve(equal) == PermutationMap::identity(4));  // lex tie rule

    CostMatrix bad(2);
    bad.at(0, 0) = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_THROWS_AS(lap_solve(bad), std::invalid_argument);
}

TEST_CASE("lap_solve matches the exhaustive assignment on 200 random 8x8 costs") {
    RngStream rng(101, 0);
    for (int inst = 0; inst < 200; ++inst) {
        CostMatrix c = random_cost(8, rng);
        PermutationMap p = lap_solve(c);
        double total = 0;
        for (int i = 0; i < 8; ++i) total += c.at(i, p(i));
        REQUIRE(total == Catch::Approx(exhaustive_min_cost(c)).margin(1e-9));
    }
}

TEST_CASE("lap_solve returns the lexicographically smallest optimum under heavy ties") {
    // Quantized costs force large optimal sets; the exhaustive scan is the
    // oracle for both the optimal value and the lex rule.
    RngStream rng(222, 0);
    for (int inst = 0; inst < 60; ++inst) {
        const int n = 6;
        CostMatrix c(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                c.at(i, j) = static_cast<double>(rng.next_below(3));  // values in {0,1,2}
        PermutationMap got = lap_solve(c);
        std::vector<int> img(n);
        for (int i = 0; i < n; ++i) img[i] = i;
        double best = 1e300;
        std::vector<int> lex_best;
        do {
            double total = 0;
            for (int i = 0; i < n; ++i) total += c.at(i, img[i]);
            if (total < best - 1e-9) {
                best = total;
                lex_best = img;
            } else if (std::abs(total - best) <= 1e-9 && img < lex_best) {
                lex_best = img;
            }
        } while (std::next_permutation(img.begin(), img.end()));
        REQUIRE(got.image() == lex_best);
    }
}

TEST_CASE("lap_solve argmin is invariant to row/column shifts and positive scaling") {
    RngStream rng(102, 0);
    for (int inst = 0; inst < 30; ++inst) {
        CostMatrix c = random_cost(6, rng);
        // Introduce a tie block now and then.
        if (inst % 3 == 0) {
            c.at(0, 1) = c.at(0, 2) = c.at(0, 3);
            c.at(1, 1) = c.at(1, 2) = c.at(1, 3);
        }
        PermutationMap base = lap_solve(c);

        CostMatrix shifted = c;
        for (int j = 0; j < 6; ++j) shifted.at(2, j) += 7.5;   // row constant
        for (int i = 0; i < 6; ++i) shifted.at(i, 4) -= 3.25;  // column constant
        REQUIRE(lap_solve(shifted) == base);

        CostMatrix scaled = c;
        for (double& x : scaled.data()) x *= 4.0;
        REQUIRE(lap_solve(scaled) == base);
    }
}

TEST_CASE("brute force on a = b keeps the identity in the optimum set") {
    RngStream rng(103, 0);
    Graph a = sample_er(6, 0.5, rng);
    BruteForceResult res = brute_force_gmp(a, a, SeedSet::none());
    REQUIRE(res.objective == gmp_objective(a, a, PermutationMap::identity(6)));
    bool has_identity = false;
    for (const auto& p : res.optima) has_identity |= (p == PermutationMap::identity(6));
    REQUIRE(has_identity);
}

TEST_CASE("brute force on K4 finds all 24 permutations optimal") {
    Graph k4(4);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) k4.set_edge(u, v, true);
    BruteForceResult res = brute_force_gmp(k4, k4, SeedSet::none());
    REQUIRE(res.optima.size() == 24);
    REQUIRE(res.objective == 12);  // Tr(A^2) = sum of degrees
}

TEST_CASE("brute force agrees with an independently coded permutation loop") {
    RngStream rng(104, 0);
    for (int inst = 0; inst < 10; ++inst) {
        Graph a = sample_er(6, 0.5, rng);
        Graph b = sample_er(6, 0.5, rng);
        BruteForceResult res = brute_force_gmp(a, b, SeedSet::none());
        REQUIRE(res.objective == oracle_best_objective(a, b));
    }
}

TEST_CASE("brute force respects seeds and the size cap") {
    RngStream rng(105, 0);
    Graph a = sample_er(12, 0.4, rng);
    Graph b = sample_er(12, 0.4, rng);
    SeedSet seeds(std::vector<int>{0, 1, 2, 3});  // 8 free vertices
    BruteForceResult res = brute_force_gmp(a, b, seeds);
    for (const auto& p : res.optima)
        for (int s : seeds.seeds) REQUIRE(p(s) == s);
    REQUIRE_THROWS_AS(brute_force_gmp(a, b, SeedSet(std::vector<int>{0, 1})),
                      std::invalid_argument);  // 10 free
}

TEST_CASE("optimum set is closed under automorphisms of the pair") {
    Graph c5 = cycle(5);
    BruteForceResult res = brute_force_gmp(c5, c5, SeedSet::none());
    std::set<std::vector<int>> optima;
    for (const auto& p : res.optima) optima.insert(p.image());
    // Rotation and reflection generate the automorphism group of the cycle.
    PermutationMap rot(std::vector<int>{1, 2, 3, 4, 0});
    PermutationMap refl(std::vector<int>{0, 4, 3, 2, 1});
    for (const auto& img : optima) {
        PermutationMap p(img);
        REQUIRE(optima.count(rot.compose(p).image()) == 1);
        REQUIRE(optima.count(refl.compose(p).image()) == 1);
    }
    REQUIRE(res.optima.size() == 10);  // dihedral group of the 5-cycle
}

TEST_CASE("sgm with every vertex seeded returns the identity") {
    RngStream rng(106, 0);
    Graph a = sample_er(10, 0.5, rng);
    Graph b = sample_er(10, 0.5, rng);
    MatchResult res = sgm_faq(a, b, SeedSet::all(10), SolverOptions{});
    REQUIRE(res.permutation == PermutationMap::identity(10));
    REQUIRE(res.correctness == 1.0);
    REQUIRE(res.converged);
}

TEST_CASE("identity init on a = b is a fixed point of the ascent") {
    RngStream rng(107, 0);
    for (int inst = 0; inst < 50; ++inst) {
        Graph a = sample_er(20, 0.3, rng);
        SolverOptions opts;
        opts.init = SgmInit::identity;
        MatchResult res = sgm_faq(a, a, SeedSet::none(), opts);
        REQUIRE(res.permutation == PermutationMap::identity(20));
        REQUIRE(res.objective == gmp_objective(a, a, PermutationMap::identity(20)));
    }
}

TEST_CASE("sgm objective sequence is nondecreasing (exact line search)") {
    RngStream rng(108, 0);
    for (int inst = 0; inst < 50; ++inst) {
        Graph a = sample_er(15, 0.5, rng);
        Graph b = sample_er(15, 0.5, rng);
        SolverOptions opts;
        opts.init = (inst % 2 == 0) ? SgmInit::barycenter : SgmInit::random;
        opts.rng = rng.split(inst);
        MatchResult res = sgm_faq(a, b, SeedSet(std::vector<int>{0, 1}), opts);
        for (std::size_t t = 1; t < res.objective_trace.size(); ++t)
            REQUIRE(res.objective_trace[t] >= res.objective_trace[t - 1] - 1e-9);
        REQUIRE(res.objective == gmp_objective(a, b, res.permutation));
        for (int s : {0, 1}) REQUIRE(res.permutation(s) == s);
    }
}

TEST_CASE("sgm with restarts reaches the exhaustive optimum on most small instances") {
    // Correlated pairs: 5 walk steps on ER(7, 1/2); barycenter plus five
    // restarts, >= 80% of 200 instances (artifact target).
    RngStream rng(109, 0);
    StandardWalkParams walk{0.5, 0.5};
    int hits = 0;
    const int instances = 200;
    for (int inst = 0; inst < instances; ++inst) {
        RngStream inst_rng = rng.split(inst);
        Graph a = sample_er(7, 0.5, inst_rng);
        WalkState s = WalkState::standard(a, inst_rng);
        for (int t = 0; t < 5; ++t) step_standard(s, walk, inst_rng);
        Graph b = s.graph;
        BruteForceResult exact = brute_force_gmp(a, b, SeedSet::none());
        MatchResult heur = best_of_restarts(a, b, SeedSet::none(), 6, inst_rng.split(999));
        if (heur.objective >= exact.objective) ++hits;
    }
    INFO("exhaustive-optimum hit rate: " << hits << "/" << instances);
    REQUIRE(hits >= 160);
}

TEST_CASE("sgm rejects mismatched sizes and bad options") {
    Graph a(5), b(6);
    REQUIRE_THROWS_AS(sgm_faq(a, b, SeedSet::none(), SolverOptions{}), std::invalid_argument);
    SolverOptions bad;
    bad.tolerance = 0.0;
    Graph c(5);
    REQUIRE_THROWS_AS(sgm_faq(a, c, SeedSet::none(), bad), std::invalid_argument);
}

TEST_CASE("match correctness: identity, derangement, and community locality") {
    REQUIRE(match_correctness(PermutationMap::identity(8), SeedSet::none()).overall == 1.0);

    std::vector<int> derangement{1, 2, 3, 4, 5, 6, 7, 0};
    REQUIRE(match_correctness(PermutationMap(derangement), SeedSet::none()).overall == 0.0);

    Partition part = Partition::contiguous({3, 3, 3});
    std::vector<int> img{0, 1, 2, 3, 5, 4, 6, 7, 8};  // transposition inside community 2
    Correctness c = match_correctness(PermutationMap(img), SeedSet::none(), &part);
    REQUIRE(c.per_community[0] == 1.0);
    REQUIRE(c.per_community[1] == Catch::Approx(1.0 / 3.0));
    REQUIRE(c.per_community[2] == 1.0);
    REQUIRE(c.overall == Catch::Approx(7.0 / 9.0));
}
