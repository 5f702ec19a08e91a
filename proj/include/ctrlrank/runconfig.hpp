#ifndef CTRLRANK_RUNCONFIG_HPP
#define CTRLRANK_RUNCONFIG_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ctrlrank/dynamics.hpp"
#include "ctrlrank/linctrl.hpp"

namespace ctrlrank {

struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    double step = 0.1;
};

/// Ascending grid lo, lo+step, ..., hi (last point included within half a
/// step). Throws ParseError on a non-positive step or empty range.
std::vector<double> make_grid(const GridSpec& spec);

/// Parse "lo:hi:step".
GridSpec parse_grid(const std::string& text);

/// Effective settings of one CLI run. Defaults are the standard parameter
/// setting, so a bare command reproduces it.
struct RunConfig {
    std::string model = "auto"; // auto | mutualistic | gene
    dynamics::MutualisticParams mut;
    dynamics::GeneParams gene;
    GridSpec gamma_grid{0.0, 3.0, 0.05};
    GridSpec c_grid{0.0, 1.0, 0.02};
    double threshold = 0.1; // survival threshold on abundances
    double a_s = 1.5;       // held value of the pinned node
    int samples = 1000;     // F
    std::uint64_t seed = 42;
    linctrl::Tolerances tol;
    dynamics::IntegrateOptions integ;
    int max_path_length = 7;          // connectome L
    std::string path_mode = "walks";  // walks | simple
    std::string input_path;
    std::string output_dir = ".";
    bool keep_sets = false; // persist sampled controller sets
};

/// Set one key=value pair; throws ParseError on unknown keys or bad
/// values. Keys mirror the CLI flags (model, gamma_grid, c_grid,
/// threshold, as, samples, seed, cluster_tol, rank_tol, mode, dt, eps,
/// t_max, path_length, input, outdir, keep_sets, plus the model
/// parameters h, t, beta_intra, beta_inter, alpha_a, alpha_p, mu_a, mu_p,
/// gene_b, gene_f, gene_h).
void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value);

/// Parse a flat key=value config file ('#' comments, blank lines ignored)
/// on top of `base`.
RunConfig load_config(const std::string& text, RunConfig base = {});

/// Model family for an input path when model == "auto": ".csv" means a
/// bipartite incidence file (mutualistic), anything else an edge list.
std::string resolve_model(const RunConfig& config);

/// The full effective configuration as ordered key/value pairs, embedded
/// verbatim in every output file.
std::vector<std::pair<std::string, std::string>>
provenance(const RunConfig& config, const std::string& command);

} // namespace ctrlrank

#endif
