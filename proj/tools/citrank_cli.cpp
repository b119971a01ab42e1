// Command-line front end: synthetic data generation, metric computation,
// rescaling, and seminal-set evaluation on citation networks.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "citrank/evaluation.hpp"
#include "citrank/io.hpp"
#include "citrank/registry.hpp"
#include "citrank/report.hpp"
#include "citrank/runconfig.hpp"
#include "citrank/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace citrank;

namespace {

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 14695981039346656037ull;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= std::uint8_t(buf[i]);
            h *= 1099511628211ull;
        }
    }
    return h;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& writer) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write file: " + path.string());
    writer(out);
}

// Runs fn(i) for i in [0, n) on up to `workers` threads.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < std::min(workers, n); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

struct CommonOpts {
    std::string config_path;
    std::string metrics_csv, z_csv;
    long groups = -1, window = -1, workers = -1, seed = -1;
    std::string out_dir;
    std::string nodes_path, edges_path, seminal_path;
    bool snapshots = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "run config file (key=value, [section] blocks)");
        cmd->add_option("--nodes", nodes_path, "node file: id<TAB>YYYY-MM-DD");
        cmd->add_option("--edges", edges_path, "edge file: citing<TAB>cited");
        cmd->add_option("--seminal", seminal_path, "seminal id file, one per line");
        cmd->add_option("--metrics", metrics_csv, "comma-separated metric labels");
        cmd->add_option("--z", z_csv, "comma-separated top fractions");
        cmd->add_option("--groups", groups, "age group count G");
        cmd->add_option("--window", window, "rescaling window W (0 = automatic)");
        cmd->add_option("--workers", workers, "worker thread count");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_flag("--snapshots", snapshots, "evaluate yearly snapshots (age curves)");
    }

    RunConfig resolve() const {
        RunConfig rc = config_path.empty()
                           ? RunConfig{}
                           : RunConfig::from(KeyValueConfig::parse_file(config_path));
        if (!nodes_path.empty()) rc.nodes_path = nodes_path;
        if (!edges_path.empty()) rc.edges_path = edges_path;
        if (!seminal_path.empty()) rc.seminal_path = seminal_path;
        if (!out_dir.empty()) rc.out_dir = out_dir;
        if (!metrics_csv.empty()) rc.metrics = split_list(metrics_csv);
        if (!z_csv.empty()) {
            rc.z_list.clear();
            for (const auto& z : split_list(z_csv)) rc.z_list.push_back(std::stod(z));
        }
        if (groups >= 0) rc.groups = std::size_t(groups);
        if (window >= 0) rc.window = std::size_t(window);
        if (workers >= 0) rc.workers = std::size_t(workers);
        if (seed >= 0) {
            rc.seed = std::uint64_t(seed);
            rc.synth.seed = rc.seed;
        }
        if (snapshots) rc.snapshots = true;
        rc.validate_metrics();
        return rc;
    }
};

json config_echo(const RunConfig& rc) {
    json j;
    j["nodes"] = rc.nodes_path;
    j["edges"] = rc.edges_path;
    j["seminal"] = rc.seminal_path;
    j["metrics"] = rc.metrics;
    j["z"] = rc.z_list;
    j["groups"] = rc.groups;
    j["window"] = rc.window;
    j["workers"] = rc.workers;
    j["seed"] = rc.seed;
    j["snapshots"] = rc.snapshots;
    j["alpha"] = rc.metric_cfg.alpha;
    j["tau_years"] = rc.metric_cfg.citerank_tau_days / kDaysPerYear;
    j["epsilon"] = rc.metric_cfg.epsilon;
    j["max_iterations"] = rc.metric_cfg.max_iterations;
    j["ci_level"] = rc.metric_cfg.ci_level;
    return j;
}

CitationNetwork load_input(const RunConfig& rc, LoadSummary* summary = nullptr) {
    if (rc.nodes_path.empty() || rc.edges_path.empty())
        throw UsageError("missing --nodes/--edges (or config keys)");
    return load_network_files(rc.nodes_path, rc.edges_path, summary);
}

// Expands R-variants so the base metric is emitted alongside, deduplicated,
// base first.
std::vector<std::string> expand_metric_list(const std::vector<std::string>& metrics) {
    std::vector<std::string> out;
    auto push = [&](const std::string& m) {
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    };
    for (const auto& m : metrics) {
        if (m.size() > 1 && m[0] == 'R') push(m.substr(1));
        push(m);
    }
    return out;
}

RescaleConfig rescale_cfg_for(const RunConfig& rc) { return RescaleConfig{rc.window}; }

std::map<std::string, ScoreVector> compute_all(const RunConfig& rc, const CitationNetwork& net,
                                               const std::vector<std::string>& names,
                                               json* solve_log = nullptr) {
    std::vector<ScoreVector> results(names.size());
    std::vector<SolveInfo> infos(names.size());
    parallel_for(names.size(), rc.workers, [&](std::size_t i) {
        results[i] = compute_metric(names[i], net, rc.metric_cfg, rescale_cfg_for(rc), &infos[i]);
    });
    std::map<std::string, ScoreVector> out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (solve_log && infos[i].iterations > 0)
            (*solve_log)[names[i]] = {{"iterations", infos[i].iterations},
                                      {"residual", infos[i].residual}};
        out.emplace(names[i], std::move(results[i]));
    }
    return out;
}

int cmd_synth(const CommonOpts& opts) {
    RunConfig rc = opts.resolve();
    if (rc.synth.n_nodes == 0) throw UsageError("synth: n_nodes must be positive");
    auto result = generate_synthetic(rc.synth);
    fs::create_directories(rc.out_dir);
    const fs::path dir(rc.out_dir);
    write_file(dir / "nodes.tsv", [&](std::ostream& out) {
        for (const auto& rec : result.network.nodes())
            out << rec.id << '\t' << format_date(rec.date) << '\n';
    });
    write_file(dir / "edges.tsv", [&](std::ostream& out) {
        result.network.for_each_edge([&](std::uint32_t a, std::uint32_t b) {
            out << result.network.node(a).id << '\t' << result.network.node(b).id << '\n';
        });
    });
    write_file(dir / "seminal.txt", [&](std::ostream& out) {
        for (const auto& id : result.seminal.ids) out << id << '\n';
    });
    write_file(dir / "quality.tsv", [&](std::ostream& out) {
        char buf[32];
        for (const auto& [id, q] : result.quality) {
            std::snprintf(buf, sizeof(buf), "%.12g", q);
            out << id << '\t' << buf << '\n';
        }
    });
    // Self-report: seminal age histogram over 40 groups.
    const auto grouping = AgeGrouping::make(result.network.node_count(),
                                            std::min<std::size_t>(40, result.network.node_count()));
    std::vector<std::size_t> hist(grouping.groups, 0);
    for (std::uint32_t s : result.seminal.indices) ++hist[grouping.assignment[s]];
    json manifest;
    manifest["config"] = config_echo(rc);
    manifest["n_nodes"] = result.network.node_count();
    manifest["n_edges"] = result.network.edge_count();
    manifest["clamped_references"] = result.clamped_references;
    manifest["seminal_group_histogram"] = hist;
    write_file(dir / "synth_manifest.json", [&](std::ostream& out) { out << manifest.dump(2) << '\n'; });
    std::cout << "wrote " << result.network.node_count() << " nodes, "
              << result.network.edge_count() << " edges to " << rc.out_dir << '\n';
    return 0;
}

void maybe_tune_citerank(RunConfig& rc, const CitationNetwork& net, json& manifest) {
    if (rc.tune_alpha_grid.empty() || rc.tune_tau_years_grid.empty()) return;
    std::vector<double> tau_days;
    for (double t : rc.tune_tau_years_grid) tau_days.push_back(t * kDaysPerYear);
    auto tuned = tune_citerank_params(net, rc.tune_alpha_grid, tau_days,
                                      rc.recent_window_years * kDaysPerYear, rc.metric_cfg);
    rc.metric_cfg.alpha = tuned.alpha;
    rc.metric_cfg.citerank_tau_days = tuned.tau_days;
    manifest["citerank_tuning"] = {{"alpha", tuned.alpha},
                                   {"tau_years", tuned.tau_days / kDaysPerYear},
                                   {"correlation", tuned.correlation}};
}

int cmd_rank(const CommonOpts& opts) {
    RunConfig rc = opts.resolve();
    if (rc.metrics.empty()) throw UsageError("rank: no metrics requested");
    const auto start = std::chrono::steady_clock::now();
    LoadSummary summary;
    auto net = load_input(rc, &summary);
    json manifest;
    maybe_tune_citerank(rc, net, manifest);
    const auto names = expand_metric_list(rc.metrics);
    json solve_log = json::object();
    auto scores = compute_all(rc, net, names, &solve_log);
    fs::create_directories(rc.out_dir);
    const fs::path dir(rc.out_dir);
    for (const auto& name : names) {
        write_file(dir / (name + ".tsv"),
                   [&](std::ostream& out) { save_scores(scores.at(name), net, out); });
        json sidecar;
        sidecar["metric"] = name;
        sidecar["config"] = config_echo(rc);
        if (name.size() > 1 && name[0] == 'R')
            sidecar["window"] = rc.window ? rc.window
                                          : RescaleConfig::default_window(net.node_count());
        write_file(dir / (name + ".meta.json"),
                   [&](std::ostream& out) { out << sidecar.dump(2) << '\n'; });
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    manifest["config"] = config_echo(rc);
    manifest["input_checksums"] = {{"nodes", fnv1a_file(rc.nodes_path)},
                                   {"edges", fnv1a_file(rc.edges_path)}};
    manifest["load_summary"] = {{"nodes", summary.nodes},
                                {"edges", summary.edges},
                                {"rejected_unknown_endpoint", summary.rejected_unknown_endpoint},
                                {"rejected_self_citation", summary.rejected_self_citation},
                                {"rejected_duplicate_edge", summary.rejected_duplicate_edge},
                                {"backdated_citations", summary.backdated_citations}};
    manifest["solver"] = solve_log;
    manifest["wall_clock_seconds"] = wall;
    write_file(dir / "manifest.json", [&](std::ostream& out) { out << manifest.dump(2) << '\n'; });
    return 0;
}

EvalReport build_report(const RunConfig& rc, const CitationNetwork& net, const SeminalSet& seminal,
                        const std::vector<std::string>& names,
                        const std::map<std::string, ScoreVector>& scores) {
    EvalReport report;
    report.metric_names = names;
    report.primary_z = rc.z_list.front();
    report.groups = rc.groups;
    const auto grouping = AgeGrouping::make(net.node_count(), rc.groups);
    for (const auto& name : names) {
        MetricEval ev;
        const auto& sv = scores.at(name);
        for (double z : rc.z_list) {
            ev.ir[z] = identification_rate(sv, seminal, z);
            ev.nir[z] = normalized_identification_rate(sv, seminal, grouping, z);
        }
        ev.bias = bias_profile(sv, grouping, report.primary_z, 1000, rc.seed);
        report.metrics.emplace(name, std::move(ev));
    }
    std::vector<ScoreVector> ordered;
    for (const auto& name : names) ordered.push_back(scores.at(name));
    report.spearman = spearman_matrix(ordered);
    if (rc.snapshots) {
        auto snaps = yearly_snapshots(net);
        std::vector<std::string> curve_names = names;
        parallel_for(curve_names.size(), rc.workers, [&](std::size_t i) {
            const std::string name = curve_names[i];
            auto curve = identification_curve(
                snaps,
                [&](const CitationNetwork& snap) {
                    return compute_metric(name, snap, rc.metric_cfg, rescale_cfg_for(rc));
                },
                seminal.ids, report.primary_z, rc.groups);
            report.metrics.at(name).age_curve = std::move(curve);
        });
    }
    return report;
}

int cmd_evaluate(const CommonOpts& opts, bool bias_only = false, bool similarity_only = false) {
    RunConfig rc = opts.resolve();
    if (rc.metrics.empty()) rc.metrics = all_metric_names();
    auto net = load_input(rc);
    SeminalSet seminal;
    if (!similarity_only && !bias_only) {
        if (rc.seminal_path.empty()) throw UsageError("missing --seminal (or config key)");
        seminal = load_seminal_file(rc.seminal_path, net);
        for (const auto& id : seminal.unresolved)
            std::cerr << "warning: unresolved seminal id: " << id << '\n';
        if (seminal.size() == 0 && !bias_only)
            throw DataError("no seminal id resolves against the network");
    }
    json manifest;
    maybe_tune_citerank(rc, net, manifest);
    const auto names = expand_metric_list(rc.metrics);
    auto scores = compute_all(rc, net, names);
    fs::create_directories(rc.out_dir);
    const fs::path dir(rc.out_dir);

    if (similarity_only) {
        EvalReport report;
        report.metric_names = names;
        std::vector<ScoreVector> ordered;
        for (const auto& name : names) ordered.push_back(scores.at(name));
        report.spearman = spearman_matrix(ordered);
        write_file(dir / "spearman.csv", [&](std::ostream& out) { write_spearman_csv(report, out); });
        return 0;
    }
    if (bias_only) {
        const auto grouping = AgeGrouping::make(net.node_count(), rc.groups);
        EvalReport report;
        report.metric_names = names;
        report.primary_z = rc.z_list.front();
        report.groups = rc.groups;
        for (const auto& name : names) {
            MetricEval ev;
            ev.bias = bias_profile(scores.at(name), grouping, report.primary_z, 1000, rc.seed);
            report.metrics.emplace(name, std::move(ev));
        }
        write_file(dir / "bias_hist.csv", [&](std::ostream& out) { write_bias_hist_csv(report, out); });
        write_file(dir / "bias_sigma.csv", [&](std::ostream& out) {
            out << "metric\tsigma\tsigma0\tsigma0_analytic\tratio\n";
            for (const auto& name : names) {
                const auto& b = report.metrics.at(name).bias;
                out << name << '\t' << b.sigma << '\t' << b.sigma0 << '\t' << b.sigma0_analytic
                    << '\t' << b.ratio << '\n';
            }
        });
        return 0;
    }

    auto report = build_report(rc, net, seminal, names, scores);
    write_file(dir / "ir.csv", [&](std::ostream& out) { write_ir_csv(report, out); });
    write_file(dir / "bias_hist.csv", [&](std::ostream& out) { write_bias_hist_csv(report, out); });
    write_file(dir / "spearman.csv", [&](std::ostream& out) { write_spearman_csv(report, out); });
    if (rc.snapshots)
        write_file(dir / "age_curves.csv",
                   [&](std::ostream& out) { write_age_curves_csv(report, out); });
    write_file(dir / "report.json",
               [&](std::ostream& out) { out << to_json(report).dump(2) << '\n'; });
    manifest["config"] = config_echo(rc);
    manifest["seminal_resolved"] = seminal.size();
    manifest["seminal_unresolved"] = seminal.unresolved;
    write_file(dir / "evaluate_manifest.json",
               [&](std::ostream& out) { out << manifest.dump(2) << '\n'; });
    return 0;
}

int cmd_snapshots(const CommonOpts& opts) {
    RunConfig rc = opts.resolve();
    auto net = load_input(rc);
    auto snaps = yearly_snapshots(net);
    std::cout << "cutoff\tnodes\tedges\n";
    for (const auto& [cutoff, snap] : snaps)
        std::cout << format_date(cutoff) << '\t' << snap.node_count() << '\t' << snap.edge_count()
                  << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"citrank: citation-network ranking metrics and seminal-set evaluation"};
    app.require_subcommand(1);

    CommonOpts synth_opts, rank_opts, eval_opts, bias_opts, sim_opts, snap_opts;
    synth_opts.attach(app.add_subcommand("synth", "generate a synthetic citation network"));
    rank_opts.attach(app.add_subcommand("rank", "compute metric score files"));
    eval_opts.attach(app.add_subcommand("evaluate", "evaluate metrics against a seminal set"));
    bias_opts.attach(app.add_subcommand("bias", "age-bias histograms and sigma ratios"));
    sim_opts.attach(app.add_subcommand("similarity", "pairwise Spearman matrix of metrics"));
    snap_opts.attach(app.add_subcommand("snapshots", "list yearly snapshot sizes"));

    try {
        app.parse(argc, argv);
        if (app.got_subcommand("synth")) return cmd_synth(synth_opts);
        if (app.got_subcommand("rank")) return cmd_rank(rank_opts);
        if (app.got_subcommand("evaluate")) return cmd_evaluate(eval_opts);
        if (app.got_subcommand("bias")) return cmd_evaluate(bias_opts, /*bias_only=*/true);
        if (app.got_subcommand("similarity"))
            return cmd_evaluate(sim_opts, false, /*similarity_only=*/true);
        if (app.got_subcommand("snapshots")) return cmd_snapshots(snap_opts);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const ConvergenceError& e) {
        std::cerr << "numerical error: " << e.what() << " (residual " << e.last_residual << ")\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
