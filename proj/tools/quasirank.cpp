// quasirank - decompose a directed graph into its recurrent core and
// absorbing part, compute parameter-free centrality measures next to the
// damped walk, and run the perturbation / conditioned-walk reports.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quasirank/album.hpp"
#include "quasirank/conditioned_walk.hpp"
#include "quasirank/decomposition.hpp"
#include "quasirank/errors.hpp"
#include "quasirank/graph.hpp"
#include "quasirank/io.hpp"
#include "quasirank/perturbation.hpp"
#include "quasirank/rank_compare.hpp"
#include "quasirank/spectral.hpp"

using namespace quasirank;

namespace {

constexpr int EXIT_PARSE = 2;
constexpr int EXIT_VALIDATION = 3;
constexpr int EXIT_CONVERGENCE = 4;
constexpr int EXIT_STATISTICAL = 5;

struct RunConfig {
    std::string input;
    std::string out_dir = ".";
    double damping = 0.85;
    double tol = 1e-10;
    std::size_t max_iter = 1'000'000;
    std::uint64_t seed = 0;
    std::vector<std::string> measures = {"pagerank", "pi_hat", "pi_bar", "pi_tilde", "pi_check"};
    bool measures_explicit = false;
    std::vector<double> c_grid = {0.5, 0.85, 0.95, 0.99, 0.999};
    std::vector<double> eps_grid = PerturbationFamily::default_epsilon_grid();
    std::size_t horizon = 10;
    std::uint64_t samples = 100'000;
    std::size_t top_k = 20;
    std::string start;

    // album generator; defaults give the ~1000 node reference instance
    std::size_t albums = 45;
    std::size_t pages = 20;
    std::size_t hubs = 24;
    double density = 1.0;
    std::size_t leaves = 24;
    std::size_t exits = 6;

    SolverOptions solver() const { return {tol, max_iter}; }

    void validate() const {
        if (!(damping > 0.0 && damping < 1.0))
            throw ValidationError("--damping must lie strictly inside (0, 1)");
        if (!(tol > 0.0)) throw ValidationError("--tol must be positive");
        if (max_iter == 0) throw ValidationError("--max-iter must be at least 1");
        if (samples == 0) throw ValidationError("--samples must be at least 1");
        if (horizon == 0) throw ValidationError("--horizon must be at least 1");
        if (top_k == 0) throw ValidationError("--top-k must be at least 1");
        for (double c : c_grid) {
            if (!(c > 0.0 && c < 1.0))
                throw ValidationError("--c-grid entries must lie strictly inside (0, 1)");
        }
        for (double e : eps_grid) {
            if (!(e > 0.0)) throw ValidationError("--eps-grid entries must be positive");
        }
        for (const auto& name : measures) measure_from_name(name);
    }
};

struct Loaded {
    WebGraph graph;
    Decomposition decomp;
};

Loaded load(const RunConfig& cfg) {
    WebGraph g = build_graph(load_edge_list(cfg.input));
    Decomposition d = split_escc_pout(g);
    return {std::move(g), std::move(d)};
}

LabelFn labels_of(const WebGraph& g) {
    return [&g](NodeId v) { return g.label(v); };
}

LabelFn core_labels_of(const WebGraph& g, const Decomposition& d) {
    return [&g, &d](NodeId local) { return g.label(d.escc[local]); };
}

int cmd_decompose(const RunConfig& cfg) {
    WebGraph g = build_graph(load_edge_list(cfg.input));
    Decomposition d = split_escc_pout(g);
    SccLabeling s = tarjan_scc(g);
    ComponentStats st = component_stats(g, s, d);

    OutputStage stage(cfg.out_dir);
    stage.add("stats.json", stats_json(st));
    stage.add("partition.csv", partition_csv(d, labels_of(g)));
    stage.commit();
    std::cout << "escc=" << st.escc_size << " pout=" << st.pout_size
              << " residual_in=" << (st.total - st.escc_size - st.pout_size) << "\n";
    return 0;
}

int cmd_rank(const RunConfig& cfg) {
    auto [g, d] = load(cfg);
    const SolverOptions opt = cfg.solver();
    OutputStage stage(cfg.out_dir);

    std::vector<std::string> measures = cfg.measures;
    bool leaks = false;
    for (std::size_t i = 0; i < d.T.size() && !leaks; ++i) leaks = d.T.exit_sum(i) > 1e-15;
    if (!leaks && !cfg.measures_explicit) {
        // occupation scores are undefined without exit mass; only drop them
        // silently when the user did not ask for them by name
        const auto it = std::find(measures.begin(), measures.end(), "pi_hat");
        if (it != measures.end()) {
            measures.erase(it);
            std::cerr << "warning: core keeps all mass (no exits); skipping pi_hat\n";
        }
    }

    bool want_core = false;
    for (const auto& name : measures) want_core |= name != "pagerank";

    SpectralResult qs;
    CentralityVector pi_bar;
    RightVectors rv;
    if (want_core) {
        qs = quasi_stationary(d.T, opt);
        pi_bar = with_domain(bar_stationary(bar_transition(d.T), opt), d);
        rv = right_eigenvector(d.T, pi_bar, qs.pi_tilde, opt);
        qs.u = rv.u;
        qs.pi_tilde = with_domain(std::move(qs.pi_tilde), d);
        stage.add("spectral.json", spectral_json(qs, lambda_from_exit(qs.pi_tilde, d.T)));
    }
    for (const auto& name : measures) {
        const Measure m = measure_from_name(name);
        CentralityVector v;
        switch (m) {
            case Measure::PageRank: v = pagerank(g, cfg.damping, opt); break;
            case Measure::PiHat: v = with_domain(pseudo_stationary(d.T, opt), d); break;
            case Measure::PiBar: v = pi_bar; break;
            case Measure::PiTilde: v = qs.pi_tilde; break;
            case Measure::PiCheck:
                v = with_domain(check_stationary(qs.pi_tilde, rv.u_tilde), d);
                break;
        }
        stage.add(std::string(name) + ".csv", centrality_csv(v, labels_of(g)));
    }
    stage.commit();
    return 0;
}

int cmd_compare(const RunConfig& cfg) {
    auto [g, d] = load(cfg);
    const SolverOptions opt = cfg.solver();
    OutputStage stage(cfg.out_dir);

    const auto sweep = damping_sweep(d.T, cfg.c_grid, opt);
    stage.add("sweep.csv", sweep_csv(sweep));

    const SpectralResult qs = quasi_stationary(d.T, opt);
    const CentralityVector pi_bar = bar_stationary(bar_transition(d.T), opt);
    const RightVectors rv = right_eigenvector(d.T, pi_bar, qs.pi_tilde, opt);
    const CentralityVector pi_check = check_stationary(qs.pi_tilde, rv.u_tilde);
    std::vector<CentralityVector> vecs{qs.pi_tilde, pi_bar, pi_check};
    bool leaks = false;
    for (std::size_t i = 0; i < d.T.size() && !leaks; ++i) leaks = d.T.exit_sum(i) > 1e-15;
    if (leaks) vecs.insert(vecs.begin(), pseudo_stationary(d.T, opt));
    stage.add("tau_matrix.csv", tau_matrix_csv(tau_table(vecs)));

    // damped scores restricted to the core, against the quasi-stationary law
    const CentralityVector pr_full = pagerank(g, cfg.damping, opt);
    CentralityVector pr_core;
    pr_core.measure = Measure::PageRank;
    pr_core.nodes = d.escc;
    pr_core.scores.reserve(d.escc.size());
    for (NodeId v : d.escc) pr_core.scores.push_back(pr_full.scores[v]);
    CentralityVector quasi = with_domain(qs.pi_tilde, d);
    const auto shifts = divergence_report(pr_core, quasi, cfg.top_k);
    stage.add("divergence.csv", divergence_csv(shifts, labels_of(g)));
    stage.commit();
    return 0;
}

int cmd_perturb(const RunConfig& cfg) {
    auto [g, d] = load(cfg);
    const PerturbationFamily family = PerturbationFamily::from_block(d.T, cfg.eps_grid);
    const ExpansionReport report = expansion_report(family);
    OutputStage stage(cfg.out_dir);
    stage.add("expansion_report.csv", expansion_csv(report));
    stage.commit();
    for (const auto& [name, slope] : report.fitted_exponents)
        std::cout << name << " decay exponent " << slope << "\n";
    return 0;
}

int cmd_simulate(const RunConfig& cfg) {
    auto [g, d] = load(cfg);
    if (cfg.start.empty()) throw ValidationError("--start node label is required");
    NodeId global = 0;
    bool found = false;
    for (NodeId v = 0; v < g.size(); ++v) {
        if (g.label(v) == cfg.start) {
            global = v;
            found = true;
            break;
        }
    }
    if (!found) throw ValidationError("unknown start node: " + cfg.start);
    const std::size_t local = d.core_index(global);
    if (local == Decomposition::npos)
        throw ValidationError("start node lies outside the core: " + cfg.start);

    const auto rows = simulate_conditioned(d.T, local, cfg.horizon, cfg.samples, cfg.seed);
    const ConditionedKernel ck(d.T, cfg.horizon);
    std::vector<double> analytic;
    analytic.reserve(rows.size());
    for (const auto& r : rows) analytic.push_back(ck.entry(r.start, r.target));

    OutputStage stage(cfg.out_dir);
    stage.add("walks.csv", walk_csv(rows, analytic, core_labels_of(g, d)));
    stage.commit();
    return 0;
}

int cmd_gen_album(const RunConfig& cfg) {
    const AlbumGraph ag = generate_album_graph(
        {cfg.albums, cfg.pages, cfg.hubs, cfg.density, cfg.seed, cfg.leaves, cfg.exits});
    OutputStage stage(cfg.out_dir);
    stage.add("album_graph.tsv", render_edge_list(ag.edges));
    nlohmann::ordered_json meta;
    meta["nodes"] = ag.edges.node_count();
    meta["hubs"] = ag.hubs;
    meta["indexes"] = ag.indexes;
    meta["interiors"] = ag.interiors;
    meta["leaves"] = ag.leaves;
    meta["exits"] = ag.exits;
    stage.add("album_meta.json", meta.dump(2) + "\n");
    stage.commit();
    std::cout << "wrote album_graph.tsv with " << ag.edges.node_count() << " nodes, "
              << ag.edges.edges.size() << " edges\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-stationary centrality toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&cfg](CLI::App* cmd, bool needs_input) {
        if (needs_input)
            cmd->add_option("--input", cfg.input, "edge list file")->required();
        cmd->add_option("--out", cfg.out_dir, "output directory");
        cmd->add_option("--damping", cfg.damping, "damping factor");
        cmd->add_option("--tol", cfg.tol, "solver tolerance");
        cmd->add_option("--max-iter", cfg.max_iter, "iteration budget");
        cmd->add_option("--seed", cfg.seed, "PRNG seed");
    };

    auto* decompose = app.add_subcommand("decompose", "partition and component stats");
    add_common(decompose, true);

    auto* rank = app.add_subcommand("rank", "centrality measures");
    add_common(rank, true);
    rank->add_option("--measures", cfg.measures, "subset of pagerank,pi_hat,pi_bar,pi_tilde,pi_check")
        ->delimiter(',');

    auto* compare = app.add_subcommand("compare", "damping sweep, tau table, divergence report");
    add_common(compare, true);
    compare->add_option("--c-grid", cfg.c_grid, "damping grid")->delimiter(',');
    compare->add_option("--top-k", cfg.top_k, "rows flagged in the divergence report");

    auto* perturb = app.add_subcommand("perturb", "first-order expansion residuals");
    add_common(perturb, true);
    perturb->add_option("--eps-grid", cfg.eps_grid, "epsilon grid")->delimiter(',');

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo conditioned walks");
    add_common(simulate, true);
    simulate->add_option("--start", cfg.start, "start node label")->required();
    simulate->add_option("--horizon", cfg.horizon, "steps the walk must survive");
    simulate->add_option("--samples", cfg.samples, "number of walks");

    auto* gen = app.add_subcommand("gen-album", "write a synthetic album site graph");
    add_common(gen, false);
    gen->add_option("--albums", cfg.albums, "number of albums");
    gen->add_option("--pages", cfg.pages, "photo pages per album");
    gen->add_option("--hubs", cfg.hubs, "hub core size");
    gen->add_option("--density", cfg.density, "hub interlink density in [0,1]");
    gen->add_option("--leaves", cfg.leaves, "dangling leaves on the hubs");
    gen->add_option("--exits", cfg.exits, "size of the absorbing exit cycle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : EXIT_PARSE;
    }

    cfg.measures_explicit = rank->count("--measures") > 0;

    try {
        cfg.validate();
        if (decompose->parsed()) return cmd_decompose(cfg);
        if (rank->parsed()) return cmd_rank(cfg);
        if (compare->parsed()) return cmd_compare(cfg);
        if (perturb->parsed()) return cmd_perturb(cfg);
        if (simulate->parsed()) return cmd_simulate(cfg);
        if (gen->parsed()) return cmd_gen_album(cfg);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return EXIT_PARSE;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return EXIT_VALIDATION;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << " (residual " << e.residual() << ")\n";
        return EXIT_CONVERGENCE;
    } catch (const StatisticalError& e) {
        std::cerr << "statistical error: " << e.what() << "\n";
        return EXIT_STATISTICAL;
    }
    return 0;
}
