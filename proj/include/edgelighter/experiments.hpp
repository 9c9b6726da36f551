// End-to-end experiment drivers: anonymization sweeps over random graph
// families, runs on loaded networks, and the log-log slope fit.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "edgelighter/cover.hpp"
#include "edgelighter/gmp.hpp"
#include "edgelighter/graph.hpp"
#include "edgelighter/parallel.hpp"
#include "edgelighter/partition.hpp"
#include "edgelighter/rng.hpp"
#include "edgelighter/sampling.hpp"
#include "edgelighter/seeds.hpp"
#include "edgelighter/sgm.hpp"
#include "edgelighter/stats.hpp"
#include "edgelighter/trace.hpp"
#include "edgelighter/walk.hpp"

namespace edgelighter {

// Community layout used by the structured sweeps: smallest block of size
// floor(n^{1/4}), middle blocks of size floor(n^{2/3}), and a largest block
// absorbing the remainder. The block count follows the n in {81, 256, 625}
// reference configurations (K = 5, 7, 9) and generalizes as
// K = 2 + floor((n - s1 - m) / m).
inline SbmParams sbm_preset(int n) {
    if (n < 16) throw std::invalid_argument("sbm_preset: n too small for the block layout");
    int s1 = static_cast<int>(std::floor(std::pow(n, 0.25) + 1e-9));
    int mid = static_cast<int>(std::floor(std::pow(n, 2.0 / 3.0) + 1e-9));
    int k = 2 + (n - s1 - mid) / mid;
    std::vector<int> sizes{s1};
    for (int i = 0; i < k - 2; ++i) sizes.push_back(mid);
    int rest = n;
    for (int s : sizes) rest -= s;
    sizes.push_back(rest);
    if (rest < mid) throw std::logic_error("sbm_preset: largest block not largest");

    double off = std::log(n) / std::pow(n, 0.75);
    SbmParams params;
    params.sizes = sizes;
    params.lambda.assign(k, std::vector<double>(k, off));
    for (int i = 0; i < k; ++i) params.lambda[i][i] = off + 0.5;
    params.validate();
    return params;
}

struct ExperimentConfig {
    enum class Model { er, sbm, loaded };

    Model model = Model::er;
    std::string name = "experiment";
    std::vector<int> n_values;
    double p = 0.5;               // ER edge probability
    double q_on_to_off = 0.5;     // walk lamp probabilities (all communities)
    double q_off_to_on = 0.5;
    WalkKind walk_kind = WalkKind::standard;  // loaded-graph runs only
    long long steps = -1;         // -1 = auto budget per n (>= 0 is explicit)
    long long cadence = 0;        // 0 = auto per n
    double seed_fraction = 0.05;
    std::vector<double> betas = {0.5};
    int persistence = 3;
    int replicates = 5;
    SgmInit init = SgmInit::identity;
    int max_iterations = 30;
    double tolerance = 1e-6;
    std::uint64_t master_seed = 1;
    int threads = 0;
    bool stop_after_detection = false;
    bool reference_cadence = false;  // use the fixed per-n cadence table below

    void validate() const {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("config: p must lie in [0,1]");
        if (cadence < 0) throw std::invalid_argument("config: cadence must be >= 1 (or 0 = auto)");
        if (steps < -1) throw std::invalid_argument("config: steps must be >= 0 (or -1 = auto)");
        if (replicates < 1) throw std::invalid_argument("config: replicates >= 1");
        if (persistence < 1) throw std::invalid_argument("config: persistence >= 1");
        for (double b : betas)
            if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("config: beta must lie in (0,1)");
        if (!(seed_fraction >= 0.0 && seed_fraction <= 1.0))
            throw std::invalid_argument("config: seed fraction must lie in [0,1]");
    }

    // Reference runs match every step at small n, then every s_n = 3, 30,
    // 300 steps for n = 225, 324, 729 (ER) and every 1, 90, 2100 steps for
    // n = 81, 256, 625 (block sweep).
    long long cadence_for(int n) const {
        if (cadence > 0) return cadence;
        if (reference_cadence) {
            if (model == Model::sbm) {
                if (n <= 81) return 1;
                if (n <= 256) return 90;
                return 2100;
            }
            if (n <= 144) return 1;
            if (n == 225) return 3;
            if (n == 324) return 30;
            return 300;
        }
        double scale = static_cast<double>(n) * n * std::log(std::max(3, n));
        return std::max<long long>(1, std::llround(scale / 1024.0));
    }

    long long budget_for(int n) const {
        if (steps >= 0) return steps;
        double scale = static_cast<double>(n) * n * std::log(std::max(3, n));
        return std::llround(8.0 * scale);
    }
};

struct ReplicateRun {
    int n = 0;
    int replicate = 0;
    std::vector<TraceRecord> records;
    std::optional<long long> cover_time;
    std::vector<int> community_sizes;       // empty for plain runs
    std::vector<int> community_free_counts; // non-seed vertices per community
    int free_count = 0;
};

struct DetectionRow {
    int n = 0;
    int replicate = 0;
    double beta = 0.5;
    std::string scope;  // "global" or "community_<k>" (1-based)
    std::optional<long long> t_hat;
};

struct MedianRow {
    int n = 0;
    double beta = 0.5;
    std::string scope;
    std::optional<double> median_t_hat;  // over detected replicates
    int detected = 0;
    int replicates = 0;
};

struct SweepResult {
    std::vector<ReplicateRun> runs;
    std::vector<DetectionRow> detections;
    std::vector<MedianRow> medians;
};

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> residuals;
};

// Ordinary least squares on (log x, log y).
inline LogLogFit loglog_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("loglog_fit: need >= 2 points");
    std::vector<double> xs, ys;
    for (auto [x, y] : points) {
        if (!(x > 0.0) || !(y > 0.0))
            throw std::invalid_argument("loglog_fit: coordinates must be positive");
        xs.push_back(std::log(x));
        ys.push_back(std::log(y));
    }
    double mx = mean(xs), my = mean(ys), sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("loglog_fit: degenerate abscissae");
    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.residuals.push_back(ys[i] - fit.intercept - fit.slope * xs[i]);
    return fit;
}

namespace detail {

struct RunSetup {
    Graph g0;
    std::optional<Partition> partition;
    SeedSet seeds;
    SolverOptions solver;
};

// One replicate of the match-under-noise pipeline. Checkpoints at step 0 and
// every `cadence` steps; optionally stops once every requested detection has
// been confirmed.
inline ReplicateRun run_replicate(const ExperimentConfig& cfg, int n, int replicate,
                                  const Graph& g0, const Partition* partition,
                                  const SeedSet& seeds, RngStream walk_rng, bool block_walk) {
    ReplicateRun run;
    run.n = n;
    run.replicate = replicate;
    run.free_count = n - seeds.count();
    if (partition) {
        run.community_sizes = partition->sizes();
        run.community_free_counts.assign(partition->communities(), 0);
        for (int v = 0; v < n; ++v)
            if (!seeds.contains(v)) ++run.community_free_counts[partition->label(v)];
    }

    SolverOptions solver;
    solver.init = cfg.init;
    solver.max_iterations = cfg.max_iterations;
    solver.tolerance = cfg.tolerance;
    solver.rng = walk_rng.split(0xa11ce);

    const long long cadence = cfg.cadence_for(n);
    const long long budget = cfg.budget_for(n);
    StandardWalkParams std_params{cfg.q_on_to_off, cfg.q_off_to_on};
    BlockWalkParams blk_params;
    if (block_walk)
        blk_params = BlockWalkParams::uniform(partition->communities(), cfg.q_on_to_off,
                                              cfg.q_off_to_on);

    WalkState state = block_walk ? WalkState::block(g0, *partition, walk_rng)
                                 : WalkState::standard(g0, walk_rng);

    auto all_detected = [&]() {
        for (double beta : cfg.betas) {
            if (!detect_anonymization(run.records, n, run.free_count, beta, cfg.persistence).t_hat)
                return false;
            if (partition)
                for (int k = 0; k < partition->communities(); ++k)
                    if (!detect_anonymization(run.records, partition->size_of(k),
                                              run.community_free_counts[k], beta, cfg.persistence,
                                              k)
                             .t_hat)
                        return false;
        }
        return true;
    };

    auto checkpoint = [&]() {
        MatchResult res = sgm_faq(g0, state.graph, seeds, solver, partition);
        TraceRecord rec;
        rec.step = state.step;
        rec.correctness = res.correctness;
        rec.cover_rate = state.cover.rate();
        rec.objective = res.objective;
        if (res.per_community_correctness) rec.per_community = *res.per_community_correctness;
        run.records.push_back(std::move(rec));
    };

    checkpoint();
    for (long long t = 1; t <= budget; ++t) {
        if (block_walk)
            step_block(state, blk_params, *partition, walk_rng);
        else
            step_standard(state, std_params, walk_rng);
        if (t % cadence == 0) {
            checkpoint();
            if (cfg.stop_after_detection && all_detected()) break;
        }
    }
    run.cover_time = state.cover.cover_time();
    return run;
}

inline void collect_detections(const ExperimentConfig& cfg, SweepResult& result) {
    for (const ReplicateRun& run : result.runs) {
        for (double beta : cfg.betas) {
            DetectionRow row;
            row.n = run.n;
            row.replicate = run.replicate;
            row.beta = beta;
            row.scope = "global";
            row.t_hat =
                detect_anonymization(run.records, run.n, run.free_count, beta, cfg.persistence)
                    .t_hat;
            result.detections.push_back(row);
            for (std::size_t k = 0; k < run.community_sizes.size(); ++k) {
                DetectionRow crow;
                crow.n = run.n;
                crow.replicate = run.replicate;
                crow.beta = beta;
                crow.scope = "community_" + std::to_string(k + 1);
                crow.t_hat = detect_anonymization(run.records, run.community_sizes[k],
                                                  run.community_free_counts[k], beta,
                                                  cfg.persistence, static_cast<int>(k))
                                 .t_hat;
                result.detections.push_back(crow);
            }
        }
    }
    // Median per (n, beta, scope), over the replicates where detection fired.
    for (std::size_t i = 0; i < result.detections.size(); ++i) {
        const DetectionRow& row = result.detections[i];
        bool seen = false;
        for (std::size_t j = 0; j < i; ++j) {
            const DetectionRow& prev = result.detections[j];
            if (prev.n == row.n && prev.beta == row.beta && prev.scope == row.scope) {
                seen = true;
                break;
            }
        }
        if (seen) continue;
        MedianRow med;
        med.n = row.n;
        med.beta = row.beta;
        med.scope = row.scope;
        std::vector<double> detected;
        for (const DetectionRow& other : result.detections)
            if (other.n == row.n && other.beta == row.beta && other.scope == row.scope) {
                ++med.replicates;
                if (other.t_hat) detected.push_back(static_cast<double>(*other.t_hat));
            }
        med.detected = static_cast<int>(detected.size());
        if (!detected.empty()) med.median_t_hat = median(detected);
        result.medians.push_back(med);
    }
}

}  // namespace detail

// Standard walk on ER initial graphs; one trace per (n, replicate).
inline SweepResult run_er_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.n_values.empty()) throw std::invalid_argument("run_er_sweep: no n values");
    SweepResult result;
    std::vector<std::pair<int, int>> jobs;
    for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni)
        for (int r = 0; r < cfg.replicates; ++r) jobs.push_back({static_cast<int>(ni), r});
    result.runs.resize(jobs.size());
    int threads = cfg.threads > 0 ? cfg.threads : default_thread_count();
    RngStream root(cfg.master_seed, 0);
    parallel_for(jobs.size(), threads, [&](std::size_t j) {
        auto [ni, r] = jobs[j];
        int n = cfg.n_values[ni];
        RngStream rep = root.split(static_cast<std::uint64_t>(n)).split(static_cast<std::uint64_t>(r));
        RngStream sample_rng = rep.split(1);
        RngStream seed_rng = rep.split(2);
        RngStream walk_rng = rep.split(3);
        Graph g0 = sample_er(n, cfg.p, sample_rng);
        SeedSet seeds = SeedSet::sample_fraction(n, cfg.seed_fraction, seed_rng);
        result.runs[j] = detail::run_replicate(cfg, n, r, g0, nullptr, seeds, walk_rng, false);
    });
    detail::collect_detections(cfg, result);
    return result;
}

// Block walk on SBM initial graphs with the reference community layout;
// per-community correctness is tracked alongside the global trace.
inline SweepResult run_sbm_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.n_values.empty()) throw std::invalid_argument("run_sbm_sweep: no n values");
    SweepResult result;
    std::vector<std::pair<int, int>> jobs;
    for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni)
        for (int r = 0; r < cfg.replicates; ++r) jobs.push_back({static_cast<int>(ni), r});
    result.runs.resize(jobs.size());
    int threads = cfg.threads > 0 ? cfg.threads : default_thread_count();
    RngStream root(cfg.master_seed, 0);
    parallel_for(jobs.size(), threads, [&](std::size_t j) {
        auto [ni, r] = jobs[j];
        int n = cfg.n_values[ni];
        SbmParams params = sbm_preset(n);
        RngStream rep = root.split(static_cast<std::uint64_t>(n)).split(static_cast<std::uint64_t>(r));
        RngStream sample_rng = rep.split(1);
        RngStream seed_rng = rep.split(2);
        RngStream walk_rng = rep.split(3);
        auto [g0, partition] = sample_sbm(params, sample_rng);
        SeedSet seeds = SeedSet::sample_fraction(n, cfg.seed_fraction, seed_rng);
        result.runs[j] = detail::run_replicate(cfg, n, r, g0, &partition, seeds, walk_rng, true);
    });
    detail::collect_detections(cfg, result);
    return result;
}

// Same pipeline on an externally loaded network. A partition is required for
// block-walk runs.
inline SweepResult run_loaded_graph(const Graph& g0, const Partition* partition,
                                    const ExperimentConfig& cfg) {
    cfg.validate();
    const bool block = cfg.walk_kind == WalkKind::block;
    if (block && !partition)
        throw std::invalid_argument("run_loaded_graph: block walk requires a partition");
    if (partition && partition->n() != g0.n())
        throw std::invalid_argument("run_loaded_graph: partition size mismatch");
    SweepResult result;
    result.runs.resize(cfg.replicates);
    int threads = cfg.threads > 0 ? cfg.threads : default_thread_count();
    RngStream root(cfg.master_seed, 0);
    const int n = g0.n();
    parallel_for(static_cast<std::size_t>(cfg.replicates), threads, [&](std::size_t r) {
        RngStream rep = root.split(static_cast<std::uint64_t>(n)).split(r);
        RngStream seed_rng = rep.split(2);
        RngStream walk_rng = rep.split(3);
        SeedSet seeds = SeedSet::sample_fraction(n, cfg.seed_fraction, seed_rng);
        result.runs[r] = detail::run_replicate(cfg, n, static_cast<int>(r), g0,
                                               block ? partition : nullptr, seeds, walk_rng, block);
    });
    detail::collect_detections(cfg, result);
    return result;
}

}  // namespace edgelighter
