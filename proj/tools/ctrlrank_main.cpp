// ctrlrank: nonlinear (tipping-recovery) vs linear (driver-sampling)
// node-importance rankings on networks, from the command line.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctrlrank/compare.hpp"
#include "ctrlrank/connectome.hpp"
#include "ctrlrank/dynamics.hpp"
#include "ctrlrank/errors.hpp"
#include "ctrlrank/linctrl.hpp"
#include "ctrlrank/netio.hpp"
#include "ctrlrank/outputs.hpp"
#include "ctrlrank/runconfig.hpp"
#include "ctrlrank/tipping.hpp"

namespace fs = std::filesystem;
using namespace ctrlrank;

namespace {

constexpr int kExitError = 1;     // runtime failure (divergence, sampling, ...)
constexpr int kExitParse = 2;     // unreadable or malformed input
constexpr int kExitDegenerate = 3; // degenerate ranking
constexpr int kExitPartial = 4;   // batch compare finished with skips

// Every flag funnels through apply_config_entry so the CLI, the config
// file, and the defaults agree on validation. Precedence: defaults, then
// --config, then flags.
struct OptionSet {
    std::string config_path;
    std::map<std::string, std::string> raw; // config key -> CLI value
    std::vector<std::pair<const CLI::Option*, std::string>> used; // option, key
    CLI::App* sub = nullptr;

    void add(const std::string& flag, const std::string& key, const std::string& help) {
        used.emplace_back(sub->add_option(flag, raw[key], help), key);
    }

    RunConfig resolve() const {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config(outputs::read_file(config_path));
        for (const auto& [opt, key] : used)
            if (opt->count() > 0) apply_config_entry(cfg, key, raw.at(key));
        return cfg;
    }
};

void add_io_options(OptionSet& opts) {
    opts.sub->add_option("--config", opts.config_path,
                         "key=value config file (flags take precedence)");
    opts.add("-i,--input", "input", "network file (.csv incidence or edge list)");
    opts.add("-o,--outdir", "outdir", "output directory (created if missing)");
    opts.add("--model", "model", "auto|mutualistic|gene (auto: by file suffix)");
}

void add_dynamics_options(OptionSet& opts) {
    opts.add("--gamma-grid", "gamma_grid", "mutualistic sweep grid lo:hi:step");
    opts.add("--c-grid", "c_grid", "gene sweep grid lo:hi:step");
    opts.add("--threshold", "threshold", "survival threshold on abundances");
    opts.add("--as", "as", "held value of the pinned node");
    opts.add("--dt", "dt", "integrator time step");
    opts.add("--eps", "eps", "steady-state tolerance on max|dx/dt|");
    opts.add("--t-max", "t_max", "integration horizon per grid point");
}

void add_linear_options(OptionSet& opts) {
    opts.add("--samples", "samples", "number of sampled controller sets (F)");
    opts.add("--seed", "seed", "random seed");
    opts.add("--cluster-tol", "cluster_tol", "eigenvalue clustering tolerance (relative)");
    opts.add("--rank-tol", "rank_tol", "numerical rank tolerance (relative)");
}

std::string require_input(const RunConfig& cfg) {
    if (cfg.input_path.empty()) throw ParseError("no input file given (use --input)");
    return cfg.input_path;
}

fs::path prepare_outdir(const RunConfig& cfg) {
    fs::path dir = cfg.output_dir.empty() ? fs::path(".") : fs::path(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + dir.string() + "'");
    return dir;
}

std::string network_id(const std::string& path) {
    std::string stem = fs::path(path).stem().string();
    return stem.empty() ? path : stem;
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fingerprint(const RunConfig& cfg) {
    const std::uint64_t h = fnv1a64(outputs::provenance_header(provenance(cfg, "")));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct LoadedNetwork {
    std::string model; // mutualistic | gene
    netio::BipartiteNetwork bip;  // filled when mutualistic
    netio::DirectedNetwork net;   // adjacency form in both cases
};

LoadedNetwork load_network(const RunConfig& cfg) {
    LoadedNetwork out;
    out.model = resolve_model(cfg);
    const std::string text = outputs::read_file(require_input(cfg));
    if (out.model == "mutualistic") {
        out.bip = netio::parse_incidence(text);
        out.net = netio::bipartite_to_adjacency(out.bip);
    } else {
        out.net = netio::parse_edge_list(text);
    }
    return out;
}

int run_ingest(const RunConfig& cfg) {
    const LoadedNetwork loaded = load_network(cfg);
    std::cout << "input: " << cfg.input_path << "\n";
    std::cout << "model: " << loaded.model << "\n";
    if (loaded.model == "mutualistic") {
        std::cout << "pollinators: " << loaded.bip.n_pollinators() << "\n";
        std::cout << "plants: " << loaded.bip.n_plants() << "\n";
        std::cout << "links: " << loaded.bip.link_count() << "\n";
    } else {
        int edges = 0;
        for (int i = 0; i < loaded.net.size(); ++i)
            for (int j = 0; j < loaded.net.size(); ++j)
                if (loaded.net.adjacency(i, j) != 0.0) ++edges;
        std::cout << "nodes: " << loaded.net.size() << "\n";
        std::cout << "edges: " << edges << "\n";
        std::cout << "classes: " << (loaded.net.has_classes() ? "yes" : "no") << "\n";
    }
    std::cout << "ok\n";
    return 0;
}

// Model + grid for the input's family, shared by sweep/rank-nl/compare.
struct NonlinearSetup {
    std::unique_ptr<dynamics::Model> model;
    std::vector<double> grid; // ascending
};

NonlinearSetup nonlinear_setup(const RunConfig& cfg, const LoadedNetwork& loaded) {
    NonlinearSetup s;
    if (loaded.model == "mutualistic") {
        s.model = std::make_unique<dynamics::MutualisticModel>(loaded.bip, cfg.mut);
        s.grid = make_grid(cfg.gamma_grid);
    } else {
        s.model = std::make_unique<dynamics::GeneModel>(loaded.net, cfg.gene);
        s.grid = make_grid(cfg.c_grid);
    }
    return s;
}

int run_sweep(const RunConfig& cfg, const std::string& direction) {
    const LoadedNetwork loaded = load_network(cfg);
    NonlinearSetup s = nonlinear_setup(cfg, loaded);
    const fs::path outdir = prepare_outdir(cfg);

    tipping::SweepResult result;
    if (direction == "descending") {
        std::vector<double> grid(s.grid.rbegin(), s.grid.rend());
        Eigen::VectorXd x0 = Eigen::VectorXd::Constant(s.model->size(), 2.0);
        result = tipping::sweep(*s.model, grid, tipping::SweepDirection::descending, x0,
                                cfg.integ, cfg.threshold);
    } else {
        Eigen::VectorXd x0 = Eigen::VectorXd::Zero(s.model->size());
        result = tipping::sweep(*s.model, s.grid, tipping::SweepDirection::ascending, x0,
                                cfg.integ, cfg.threshold);
    }

    const auto prov = provenance(cfg, "sweep");
    outputs::write_file((outdir / "sweep.csv").string(),
                        outputs::sweep_csv(result, loaded.net.node_labels, prov));
    if (result.tipping_point)
        std::cout << "tipping_point: " << outputs::format_double(*result.tipping_point)
                  << "\n";
    else
        std::cout << "tipping_point: none\n";
    std::cout << "wrote " << (outdir / "sweep.csv").string() << "\n";
    return 0;
}

int run_rank_nl(const RunConfig& cfg) {
    const LoadedNetwork loaded = load_network(cfg);
    NonlinearSetup s = nonlinear_setup(cfg, loaded);
    const fs::path outdir = prepare_outdir(cfg);

    const auto analysis =
        tipping::analyze_nonlinear(*s.model, s.grid, cfg.threshold, cfg.a_s, cfg.integ);
    const auto degs = netio::degrees(loaded.net);
    const auto prov = provenance(cfg, "rank-nl");

    outputs::write_file((outdir / "recovery.csv").string(),
                        outputs::recovery_csv(analysis.recovery, loaded.net.node_labels,
                                              degs, prov));
    outputs::write_file((outdir / "ranking_nl.csv").string(),
                        outputs::ranking_csv(analysis.ranking, loaded.net.node_labels,
                                             degs, prov));
    outputs::write_file((outdir / "ranking_nl.json").string(),
                        outputs::ranking_json(analysis.ranking, loaded.net.node_labels,
                                              prov));
    if (analysis.descending.tipping_point)
        std::cout << "tipping_point: "
                  << outputs::format_double(*analysis.descending.tipping_point) << "\n";
    else
        std::cout << "tipping_point: none\n";
    std::cout << "ranked " << analysis.ranking.size() << " nodes (scope "
              << analysis.ranking.scope << ")\n";
    std::cout << "wrote " << (outdir / "ranking_nl.csv").string() << "\n";
    return 0;
}

int run_rank_lin(const RunConfig& cfg) {
    const LoadedNetwork loaded = load_network(cfg);
    const fs::path outdir = prepare_outdir(cfg);

    linctrl::ControllabilityContext ctx(loaded.net.adjacency, loaded.net.kind, cfg.tol);
    const auto degs = netio::degrees(loaded.net);
    const auto prov = provenance(cfg, "rank-lin");

    outputs::write_file((outdir / "spectrum.json").string(),
                        outputs::spectrum_json(ctx.spectrum(), ctx.min_drivers(),
                                               ctx.lambda_M(), prov));
    const auto ranking = ctx.importance(cfg.samples, cfg.seed);
    outputs::write_file((outdir / "ranking_lin.csv").string(),
                        outputs::ranking_csv(ranking, loaded.net.node_labels, degs, prov));
    outputs::write_file((outdir / "ranking_lin.json").string(),
                        outputs::ranking_json(ranking, loaded.net.node_labels, prov));
    if (cfg.keep_sets) {
        const auto sets = ctx.sample_many(cfg.samples, cfg.seed);
        outputs::write_file((outdir / "sets.csv").string(),
                            outputs::sets_csv(sets, loaded.net.node_labels, prov));
    }
    std::cout << "n_d: " << ctx.min_drivers() << "\n";
    std::cout << "lambda_m: " << outputs::format_complex(ctx.lambda_M()) << "\n";
    std::cout << "wrote " << (outdir / "ranking_lin.csv").string() << "\n";
    return 0;
}

compare::Report compare_one(const RunConfig& cfg, const LoadedNetwork& loaded) {
    NonlinearSetup s = nonlinear_setup(cfg, loaded);
    const auto analysis =
        tipping::analyze_nonlinear(*s.model, s.grid, cfg.threshold, cfg.a_s, cfg.integ);
    linctrl::ControllabilityContext ctx(loaded.net.adjacency, loaded.net.kind, cfg.tol);
    const auto lin = ctx.importance(cfg.samples, cfg.seed);
    const auto degs = netio::degrees(loaded.net);
    return compare::build_report(analysis.ranking, lin, degs, loaded.net.node_labels,
                                 cfg.seed, network_id(cfg.input_path), cfg.samples,
                                 fingerprint(cfg));
}

int run_compare(const RunConfig& cfg, const std::string& batch_path) {
    const fs::path outdir = prepare_outdir(cfg);
    const auto prov = provenance(cfg, "compare");

    if (batch_path.empty()) {
        const LoadedNetwork loaded = load_network(cfg);
        const auto report = compare_one(cfg, loaded);
        outputs::write_file((outdir / "table.csv").string(),
                            outputs::report_csv(report, prov));
        outputs::write_file((outdir / "comparison.json").string(),
                            outputs::record_json(report.record, prov));
        std::cout << "pearson_r: " << outputs::format_double(report.record.pearson_r)
                  << "\n";
        std::cout << "cosine_distance: "
                  << outputs::format_double(report.record.cosine_d) << "\n";
        std::cout << "wrote " << (outdir / "comparison.json").string() << "\n";
        return 0;
    }

    std::vector<compare::ComparisonRecord> records;
    int skipped = 0;
    std::istringstream manifest(outputs::read_file(batch_path));
    std::string line;
    while (std::getline(manifest, line)) {
        const auto from = line.find_first_not_of(" \t\r");
        if (from == std::string::npos || line[from] == '#') continue;
        const auto to = line.find_last_not_of(" \t\r");
        RunConfig one = cfg;
        one.input_path = line.substr(from, to - from + 1);
        try {
            const LoadedNetwork loaded = load_network(one);
            records.push_back(compare_one(one, loaded).record);
        } catch (const std::exception& e) {
            std::cerr << "warning: skipping " << one.input_path << ": " << e.what()
                      << "\n";
            ++skipped;
        }
    }
    outputs::write_file((outdir / "scatter.csv").string(),
                        outputs::scatter_csv(records, prov));
    std::cout << "networks: " << records.size() << " compared, " << skipped
              << " skipped\n";
    std::cout << "wrote " << (outdir / "scatter.csv").string() << "\n";
    return skipped > 0 ? kExitPartial : 0;
}

int run_connectome(const RunConfig& cfg) {
    const std::string text = outputs::read_file(require_input(cfg));
    const netio::DirectedNetwork net = netio::parse_edge_list(text);
    if (!net.has_classes())
        throw ParseError("connectome analysis needs a '# classes:' header");
    const fs::path outdir = prepare_outdir(cfg);
    const auto prov = provenance(cfg, "connectome");

    linctrl::ControllabilityContext ctx(net.adjacency, net.kind, cfg.tol);
    const auto ranking = ctx.importance(cfg.samples, cfg.seed);
    const auto means = connectome::class_mean_importance(ranking, net.node_classes);

    std::vector<int> sources, targets;
    for (int i = 0; i < net.size(); ++i) {
        if (net.node_classes[i] == netio::NodeClass::sensory) sources.push_back(i);
        if (net.node_classes[i] == netio::NodeClass::motor) targets.push_back(i);
    }
    const auto matrix =
        cfg.path_mode == "walks"
            ? connectome::count_walks(net, sources, targets, cfg.max_path_length)
            : connectome::count_simple_paths_matrix(net, sources, targets,
                                                    cfg.max_path_length);

    outputs::write_file((outdir / "class_means.csv").string(),
                        outputs::class_means_csv(means, prov));
    outputs::write_file((outdir / "paths.csv").string(),
                        outputs::path_matrix_csv(matrix, net.node_labels, prov));

    nlohmann::json doc;
    doc["n_d"] = ctx.min_drivers();
    doc["lambda_m"] = outputs::format_complex(ctx.lambda_M());
    for (const auto& [cls, mean] : means)
        doc["class_means"][netio::to_string(cls)] = mean;
    nlohmann::json cfgobj = nlohmann::json::object();
    for (const auto& [k, v] : prov) cfgobj[k] = v;
    doc["config"] = cfgobj;
    outputs::write_file((outdir / "report.json").string(), doc.dump(2) + "\n");

    std::cout << "n_d: " << ctx.min_drivers() << "\n";
    for (const auto& [cls, mean] : means)
        std::cout << "mean[" << netio::to_string(cls)
                  << "]: " << outputs::format_double(mean) << "\n";
    std::cout << "wrote " << (outdir / "report.json").string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlinear vs linear control-importance rankings on networks"};
    app.require_subcommand(1);

    OptionSet ingest_opts, sweep_opts, nl_opts, lin_opts, cmp_opts, conn_opts;
    std::string sweep_direction = "descending";
    std::string batch_path;

    auto* ingest = app.add_subcommand("ingest-check", "parse and validate a network file");
    ingest_opts.sub = ingest;
    add_io_options(ingest_opts);

    auto* sweep = app.add_subcommand("sweep", "quasi-static bifurcation sweep");
    sweep_opts.sub = sweep;
    add_io_options(sweep_opts);
    add_dynamics_options(sweep_opts);
    sweep->add_option("--direction", sweep_direction, "descending|ascending")
        ->check(CLI::IsMember({"descending", "ascending"}));

    auto* rank_nl = app.add_subcommand("rank-nl", "nonlinear importance from recovery points");
    nl_opts.sub = rank_nl;
    add_io_options(nl_opts);
    add_dynamics_options(nl_opts);

    auto* rank_lin = app.add_subcommand("rank-lin", "linear importance from sampled driver sets");
    lin_opts.sub = rank_lin;
    add_io_options(lin_opts);
    add_linear_options(lin_opts);
    const CLI::Option* keep_flag = rank_lin->add_flag_callback(
        "--keep-sets", [&] { lin_opts.raw["keep_sets"] = "1"; },
        "persist the sampled controller sets");
    lin_opts.used.emplace_back(keep_flag, "keep_sets");

    auto* cmp = app.add_subcommand("compare", "both rankings plus Pearson/cosine statistics");
    cmp_opts.sub = cmp;
    add_io_options(cmp_opts);
    add_dynamics_options(cmp_opts);
    add_linear_options(cmp_opts);
    cmp->add_option("--batch", batch_path, "manifest of network files, one per line");

    auto* conn = app.add_subcommand("connectome", "driver statistics by node class and path counts");
    conn_opts.sub = conn;
    add_io_options(conn_opts);
    add_linear_options(conn_opts);
    conn_opts.add("--mode", "mode", "path counting mode: walks|simple");
    conn_opts.add("-L,--path-length", "path_length", "maximum path length");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest->parsed()) return run_ingest(ingest_opts.resolve());
        if (sweep->parsed()) return run_sweep(sweep_opts.resolve(), sweep_direction);
        if (rank_nl->parsed()) return run_rank_nl(nl_opts.resolve());
        if (rank_lin->parsed()) return run_rank_lin(lin_opts.resolve());
        if (cmp->parsed()) return run_compare(cmp_opts.resolve(), batch_path);
        if (conn->parsed()) return run_connectome(conn_opts.resolve());
    } catch (const DegenerateRankingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return 0;
}
