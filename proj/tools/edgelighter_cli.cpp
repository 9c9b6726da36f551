// Command-line surface for the edgelighter toolkit.
//
// Subcommands: sample, walk, chain (enumerate|stationary|mixing|cover),
// match, experiment (er-sweep|sbm-sweep|loaded), ingest, plot.
// Exit codes: 0 success, 2 configuration error, 3 data error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "edgelighter/edgelighter.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace edgelighter;

namespace {

struct GlobalFlags {
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out_dir = ".";
};

fs::path out_path(const GlobalFlags& g, const std::string& name) {
    fs::create_directories(g.out_dir);
    return fs::path(g.out_dir) / name;
}

void write_manifest(const GlobalFlags& g, const std::string& command, const json& extra) {
    json manifest;
    manifest["command"] = command;
    manifest["seed"] = g.seed;
    manifest["threads"] = g.threads;
    manifest["parameters"] = extra;
    std::ofstream out(out_path(g, command + "_manifest.json"));
    out << manifest.dump(2) << "\n";
}

Graph load_graph(const std::string& path, bool directed, bool one_indexed,
                 std::vector<long long>* ids = nullptr) {
    LoadedGraph lg = parse_edge_list({path, directed, one_indexed});
    if (ids) *ids = lg.original_ids;
    return lg.graph;
}

std::optional<Partition> load_partition(const std::string& label_path,
                                        const std::vector<long long>& ids) {
    if (label_path.empty()) return std::nullopt;
    return partition_from_labels(ids, parse_label_file(label_path));
}

ExperimentConfig build_experiment_config(const GlobalFlags& g, const std::string& preset,
                                         const std::string& config_path) {
    ExperimentConfig cfg = preset.empty() ? ExperimentConfig{} : preset_config(preset);
    if (!config_path.empty()) apply_config_overrides(cfg, parse_config_file(config_path));
    cfg.master_seed = g.seed;
    cfg.threads = g.threads;
    return cfg;
}

void emit_sweep_outputs(const GlobalFlags& g, const std::string& tag, const SweepResult& result) {
    for (const ReplicateRun& run : result.runs) {
        std::string base = tag + "_n" + std::to_string(run.n) + "_r" + std::to_string(run.replicate);
        write_trace_csv(run.records, out_path(g, base + ".csv").string());
        write_svg_plot(run.records, base, out_path(g, base + ".svg").string());
    }
    write_summary_csv(result, out_path(g, tag + "_summary.csv").string());
    // Log-log plot of global medians when at least two sizes detected.
    for (double beta : {0.5}) {
        std::vector<std::pair<double, double>> pts;
        for (const MedianRow& med : result.medians)
            if (med.scope == "global" && med.beta == beta && med.median_t_hat)
                pts.push_back({static_cast<double>(med.n), *med.median_t_hat});
        if (pts.size() >= 2) {
            LogLogFit fit = loglog_fit(pts);
            write_loglog_svg(pts, fit, tag + " anonymization times",
                             out_path(g, tag + "_loglog.svg").string());
            std::printf("%s: log-log slope %.4f over %zu sizes\n", tag.c_str(), fit.slope,
                        pts.size());
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edgelighter: Markov edge-noise walks, matching and anonymization experiments"};
    app.require_subcommand(1);
    GlobalFlags g;
    app.add_option("--seed", g.seed, "master RNG seed");
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
    app.add_option("--out-dir", g.out_dir, "output directory");

    // --- sample ---------------------------------------------------------
    auto* sample = app.add_subcommand("sample", "sample a random graph");
    std::string sample_model = "er";
    int sample_n = 100;
    double sample_p = 0.5;
    sample->add_option("--model", sample_model, "er|sbm")
        ->check(CLI::IsMember({"er", "sbm"}));
    sample->add_option("-n,--n", sample_n, "vertex count");
    sample->add_option("-p,--p", sample_p, "ER edge probability");

    // --- walk -----------------------------------------------------------
    auto* walk = app.add_subcommand("walk", "run a noise walk, dump the cover curve");
    std::string walk_input, walk_labels, walk_kind = "standard";
    int walk_er_n = 0;
    double walk_er_p = 0.5, walk_q1 = 0.5, walk_q2 = 0.5;
    long long walk_steps = 10000, walk_every = 100;
    bool walk_directed = false, walk_one_indexed = false;
    walk->add_option("--input", walk_input, "edge list file (else use --er-n)");
    walk->add_option("--er-n", walk_er_n, "sample an ER graph of this size instead");
    walk->add_option("--er-p", walk_er_p, "ER probability for --er-n");
    walk->add_option("--labels", walk_labels, "label file (block walk)");
    walk->add_option("--kind", walk_kind, "standard|block")
        ->check(CLI::IsMember({"standard", "block"}));
    walk->add_option("--q1", walk_q1, "on-to-off probability");
    walk->add_option("--q2", walk_q2, "off-to-on probability");
    walk->add_option("--steps", walk_steps, "number of moves");
    walk->add_option("--checkpoint-every", walk_every, "checkpoint cadence");
    walk->add_flag("--directed", walk_directed, "input lists one direction per line");
    walk->add_flag("--one-indexed", walk_one_indexed, "input ids start at 1");

    // --- chain ----------------------------------------------------------
    auto* chain = app.add_subcommand("chain", "exact analysis of tiny chains");
    std::string chain_op = "mixing", chain_kind = "standard", chain_input, chain_labels;
    int chain_n = 3;
    double chain_q1 = 0.5, chain_q2 = 0.5, chain_eps = 0.25;
    long long chain_reps = 1000;
    chain->add_option("--op", chain_op, "enumerate|stationary|mixing|cover")
        ->check(CLI::IsMember({"enumerate", "stationary", "mixing", "cover"}));
    chain->add_option("--kind", chain_kind, "standard|block")
        ->check(CLI::IsMember({"standard", "block"}));
    chain->add_option("-n,--n", chain_n, "vertex count (standard)");
    chain->add_option("--input", chain_input, "edge list (block chain / block cover)");
    chain->add_option("--labels", chain_labels, "label file (block)");
    chain->add_option("--q1", chain_q1, "on-to-off probability");
    chain->add_option("--q2", chain_q2, "off-to-on probability");
    chain->add_option("--epsilon", chain_eps, "mixing threshold");
    chain->add_option("--replicates", chain_reps, "cover-time replicates");

    // --- match ----------------------------------------------------------
    auto* match = app.add_subcommand("match", "match two graphs");
    std::string match_a, match_b, match_init = "barycenter";
    double match_seed_fraction = 0.05;
    bool match_exact = false;
    match->add_option("a", match_a, "first edge list")->required();
    match->add_option("b", match_b, "second edge list")->required();
    match->add_option("--init", match_init, "identity|barycenter|random")
        ->check(CLI::IsMember({"identity", "barycenter", "random"}));
    match->add_option("--seed-fraction", match_seed_fraction, "fraction of pinned vertices");
    match->add_flag("--exact", match_exact, "exhaustive solver (<= 9 free vertices)");

    // --- experiment -----------------------------------------------------
    auto* experiment = app.add_subcommand("experiment", "anonymization experiments");
    std::string exp_kind, exp_preset, exp_config, exp_input, exp_labels;
    bool exp_directed = false, exp_one_indexed = false;
    experiment->add_option("kind", exp_kind, "er-sweep|sbm-sweep|loaded")
        ->required()
        ->check(CLI::IsMember({"er-sweep", "sbm-sweep", "loaded"}));
    experiment->add_option("--preset", exp_preset,
                           "er-reference|er-ci|sbm-reference|sbm-ci|facebook|eu-email");
    experiment->add_option("--config", exp_config, "key = value config file");
    experiment->add_option("--input", exp_input, "edge list (loaded)");
    experiment->add_option("--labels", exp_labels, "label file (loaded, block walk)");
    experiment->add_flag("--directed", exp_directed, "symmetrize the input");
    experiment->add_flag("--one-indexed", exp_one_indexed, "input ids start at 1");

    // --- ingest ---------------------------------------------------------
    auto* ingest = app.add_subcommand("ingest", "normalize an external network");
    std::string ingest_input, ingest_labels, ingest_out = "ingested";
    bool ingest_directed = false, ingest_one_indexed = false, ingest_lcc = false;
    long long range_lo = -1, range_hi = -1;
    ingest->add_option("input", ingest_input, "edge list file")->required();
    ingest->add_option("--labels", ingest_labels, "label file to carry through");
    ingest->add_option("--name", ingest_out, "output base name");
    ingest->add_flag("--directed", ingest_directed, "drop directedness");
    ingest->add_flag("--one-indexed", ingest_one_indexed, "input ids start at 1");
    ingest->add_flag("--lcc", ingest_lcc, "keep only the largest connected component");
    ingest->add_option("--range-lo", range_lo, "keep original ids >= this");
    ingest->add_option("--range-hi", range_hi, "keep original ids <= this");

    // --- plot -----------------------------------------------------------
    auto* plot = app.add_subcommand("plot", "render CSV outputs as SVG");
    std::string plot_kind = "trace", plot_input, plot_output = "plot.svg", plot_title = "trace";
    std::string plot_scope = "global";
    double plot_beta = 0.5;
    plot->add_option("kind", plot_kind, "trace|loglog")->check(CLI::IsMember({"trace", "loglog"}));
    plot->add_option("input", plot_input, "trace CSV or sweep summary CSV")->required();
    plot->add_option("--output", plot_output, "SVG path");
    plot->add_option("--title", plot_title, "plot title");
    plot->add_option("--beta", plot_beta, "beta row to plot (loglog)");
    plot->add_option("--scope", plot_scope, "scope rows to plot (loglog)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*sample) {
            RngStream rng(g.seed, 0);
            if (sample_model == "er") {
                Graph graph = sample_er(sample_n, sample_p, rng);
                write_edge_list(graph, out_path(g, "er_sample.txt").string());
                std::printf("er(%d, %g): %lld edges -> er_sample.txt\n", sample_n, sample_p,
                            graph.edge_count());
                write_manifest(g, "sample", {{"model", "er"}, {"n", sample_n}, {"p", sample_p}});
            } else {
                SbmParams params = sbm_preset(sample_n);
                auto [graph, part] = sample_sbm(params, rng);
                write_edge_list(graph, out_path(g, "sbm_sample.txt").string());
                std::ofstream labels(out_path(g, "sbm_sample_labels.txt"));
                labels << "# vertex_id label\n";
                for (int v = 0; v < part.n(); ++v) labels << v << " " << part.label(v) << "\n";
                std::printf("sbm(n=%d, K=%d): %lld edges -> sbm_sample.txt (+labels)\n", sample_n,
                            part.communities(), graph.edge_count());
                write_manifest(g, "sample",
                               {{"model", "sbm"}, {"n", sample_n}, {"K", part.communities()}});
            }
        } else if (*walk) {
            RngStream rng(g.seed, 0);
            std::vector<long long> ids;
            Graph graph = walk_input.empty()
                              ? sample_er(walk_er_n > 0 ? walk_er_n : 100, walk_er_p, rng)
                              : load_graph(walk_input, walk_directed, walk_one_indexed, &ids);
            std::vector<TraceRecord> cover_curve;
            WalkObserver observer = [&](const WalkState& s) {
                TraceRecord r;
                r.step = s.step;
                r.correctness = 1.0;  // no matching in this mode
                r.cover_rate = s.cover.rate();
                cover_curve.push_back(r);
            };
            if (walk_kind == "standard") {
                run_walk(graph, StandardWalkParams{walk_q1, walk_q2}, walk_steps, walk_every,
                         rng.split(1), observer, false);
            } else {
                if (walk_input.empty() || walk_labels.empty())
                    throw std::invalid_argument("block walk needs --input and --labels");
                auto part = load_partition(walk_labels, ids);
                run_walk(graph, BlockWalkParams::uniform(part->communities(), walk_q1, walk_q2),
                         *part, walk_steps, walk_every, rng.split(1), observer, false);
            }
            write_trace_csv(cover_curve, out_path(g, "walk_cover.csv").string());
            std::printf("walk: %lld steps, final cover rate %.6f -> walk_cover.csv\n", walk_steps,
                        cover_curve.back().cover_rate);
            write_manifest(g, "walk",
                           {{"kind", walk_kind}, {"steps", walk_steps}, {"q1", walk_q1},
                            {"q2", walk_q2}});
        } else if (*chain) {
            if (chain_op == "cover") {
                RngStream rng(g.seed, 0);
                CoverStats stats;
                if (chain_kind == "standard") {
                    stats = cover_time_stats_standard(chain_n, chain_reps, rng, g.threads);
                } else {
                    std::vector<long long> ids;
                    Graph graph = load_graph(chain_input, false, false, &ids);
                    auto part = load_partition(chain_labels, ids);
                    if (!part) throw std::invalid_argument("block cover needs --labels");
                    stats = cover_time_stats_block(*part, chain_reps, rng, g.threads);
                }
                std::printf("cover n=%d: mean %.2f, bracket [%.2f, %.2f]\n", stats.n, stats.mean,
                            stats.lower_ref, stats.upper_ref);
                std::vector<std::vector<double>> rows;
                for (auto [q, v] : stats.quantiles) rows.push_back({q, v});
                write_table_csv("quantile,value", rows, out_path(g, "cover_quantiles.csv").string());
            } else {
                ChainModel model;
                if (chain_kind == "standard") {
                    model = enumerate_standard_chain(chain_n, {chain_q1, chain_q2});
                } else {
                    std::vector<long long> ids;
                    Graph graph = load_graph(chain_input, false, false, &ids);
                    auto part = load_partition(chain_labels, ids);
                    if (!part) throw std::invalid_argument("block chain needs --labels");
                    model = enumerate_block_chain(
                        graph, *part,
                        BlockWalkParams::uniform(part->communities(), chain_q1, chain_q2));
                }
                if (chain_op == "enumerate") {
                    std::vector<std::vector<double>> rows;
                    for (std::size_t x = 0; x < model.num_states; ++x)
                        for (const auto& [y, p] : model.rows[x])
                            rows.push_back({static_cast<double>(x), static_cast<double>(y), p});
                    write_table_csv("from,to,probability", rows,
                                    out_path(g, "chain_transitions.csv").string());
                    std::printf("chain: %zu states -> chain_transitions.csv\n", model.num_states);
                } else if (chain_op == "stationary") {
                    std::vector<std::vector<double>> rows;
                    for (std::size_t s = 0; s < model.num_states; ++s)
                        rows.push_back({static_cast<double>(s), model.stationary[s]});
                    write_table_csv("state,probability", rows,
                                    out_path(g, "chain_stationary.csv").string());
                    std::printf("stationary over %zu states; detailed-balance residual %.3e\n",
                                model.num_states, detailed_balance_residual(model));
                } else {
                    MixingReport rep = exact_mixing_time(model, chain_eps, 100000, g.threads);
                    std::vector<std::vector<double>> rows;
                    for (std::size_t t = 0; t < rep.tv_curve.size(); ++t)
                        rows.push_back({static_cast<double>(t), rep.tv_curve[t]});
                    write_table_csv("t,worst_start_tv", rows,
                                    out_path(g, "chain_tv_curve.csv").string());
                    std::printf("t_mix(eps=%g) = %lld -> chain_tv_curve.csv\n", chain_eps,
                                rep.t_mix);
                }
            }
            write_manifest(g, "chain", {{"op", chain_op}, {"kind", chain_kind}, {"n", chain_n}});
        } else if (*match) {
            Graph a = load_graph(match_a, false, false);
            Graph b = load_graph(match_b, false, false);
            if (a.n() != b.n()) throw std::runtime_error("match: graphs differ in size");
            RngStream rng(g.seed, 0);
            SeedSet seeds = SeedSet::sample_fraction(a.n(), match_seed_fraction, rng);
            if (match_exact) {
                BruteForceResult res = brute_force_gmp(a, b, seeds);
                std::printf("exact optimum %lld attained by %zu permutations\n", res.objective,
                            res.optima.size());
            } else {
                SolverOptions opts;
                opts.init = match_init == "identity"
                                ? SgmInit::identity
                                : (match_init == "random" ? SgmInit::random : SgmInit::barycenter);
                opts.rng = rng.split(1);
                MatchResult res = sgm_faq(a, b, seeds, opts);
                std::printf("objective %lld, correctness %.4f, iterations %d%s\n", res.objective,
                            res.correctness, res.iterations, res.converged ? "" : " (iteration cap)");
            }
        } else if (*experiment) {
            ExperimentConfig cfg = build_experiment_config(g, exp_preset, exp_config);
            json params{{"preset", exp_preset}, {"config", exp_config}};
            if (exp_kind == "er-sweep") {
                cfg.model = ExperimentConfig::Model::er;
                emit_sweep_outputs(g, "er_sweep", run_er_sweep(cfg));
                write_manifest(g, "er_sweep", params);
            } else if (exp_kind == "sbm-sweep") {
                cfg.model = ExperimentConfig::Model::sbm;
                emit_sweep_outputs(g, "sbm_sweep", run_sbm_sweep(cfg));
                write_manifest(g, "sbm_sweep", params);
            } else {
                if (exp_input.empty()) throw std::invalid_argument("loaded experiment needs --input");
                cfg.model = ExperimentConfig::Model::loaded;
                std::vector<long long> ids;
                Graph graph = load_graph(exp_input, exp_directed, exp_one_indexed, &ids);
                auto part = load_partition(exp_labels, ids);
                emit_sweep_outputs(g, "loaded",
                                   run_loaded_graph(graph, part ? &*part : nullptr, cfg));
                write_manifest(g, "loaded", params);
            }
        } else if (*ingest) {
            std::vector<long long> ids;
            Graph graph = load_graph(ingest_input, ingest_directed, ingest_one_indexed, &ids);
            if (range_lo >= 0 || range_hi >= 0) {
                std::vector<int> keep;
                for (std::size_t i = 0; i < ids.size(); ++i) {
                    if (range_lo >= 0 && ids[i] < range_lo) continue;
                    if (range_hi >= 0 && ids[i] > range_hi) continue;
                    keep.push_back(static_cast<int>(i));
                }
                std::vector<long long> kept_ids;
                for (int i : keep) kept_ids.push_back(ids[i]);
                graph = induced_subgraph(graph, keep);
                ids = kept_ids;
            }
            if (ingest_lcc) {
                std::vector<int> keep = largest_component_vertices(graph);
                std::vector<long long> kept_ids;
                for (int i : keep) kept_ids.push_back(ids[i]);
                graph = induced_subgraph(graph, keep);
                ids = kept_ids;
            }
            write_edge_list(graph, out_path(g, ingest_out + ".txt").string());
            if (!ingest_labels.empty()) {
                auto labels = parse_label_file(ingest_labels);
                Partition part = partition_from_labels(ids, labels);
                std::ofstream out(out_path(g, ingest_out + "_labels.txt"));
                out << "# vertex_id label\n";
                for (int v = 0; v < part.n(); ++v) out << v << " " << part.label(v) << "\n";
            }
            std::printf("ingested: n=%d, %lld edges -> %s.txt\n", graph.n(), graph.edge_count(),
                        ingest_out.c_str());
            write_manifest(g, "ingest",
                           {{"input", ingest_input}, {"lcc", ingest_lcc},
                            {"range", {range_lo, range_hi}}});
        } else if (*plot) {
            if (plot_kind == "trace") {
                write_svg_plot(read_trace_csv(plot_input), plot_title,
                               out_path(g, plot_output).string());
            } else {
                // Read median rows from a sweep summary CSV.
                std::ifstream in(plot_input);
                if (!in) throw std::runtime_error("plot: cannot open " + plot_input);
                std::string line;
                std::getline(in, line);
                std::vector<std::pair<double, double>> pts;
                while (std::getline(in, line)) {
                    std::istringstream ss(line);
                    std::string n_s, beta_s, scope_s, rep_s, t_s;
                    std::getline(ss, n_s, ',');
                    std::getline(ss, beta_s, ',');
                    std::getline(ss, scope_s, ',');
                    std::getline(ss, rep_s, ',');
                    std::getline(ss, t_s, ',');
                    if (rep_s == "median" && scope_s == plot_scope && t_s != "none" &&
                        std::abs(std::stod(beta_s) - plot_beta) < 1e-12)
                        pts.push_back({std::stod(n_s), std::stod(t_s)});
                }
                if (pts.size() < 2) throw std::runtime_error("plot: need >= 2 median points");
                LogLogFit fit = loglog_fit(pts);
                write_loglog_svg(pts, fit, plot_title, out_path(g, plot_output).string());
                std::printf("loglog slope %.4f -> %s\n", fit.slope, plot_output.c_str());
            }
            std::printf("plot written\n");
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    }
    return 0;
}
