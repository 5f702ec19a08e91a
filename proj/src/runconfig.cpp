#include "ctrlrank/runconfig.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "ctrlrank/errors.hpp"
#include "ctrlrank/outputs.hpp"

namespace ctrlrank {

namespace {

double to_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ParseError("bad numeric value '" + value + "' for " + key);
    return out;
}

long to_long(const std::string& key, const std::string& value) {
    long out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ParseError("bad integer value '" + value + "' for " + key);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

std::vector<double> make_grid(const GridSpec& spec) {
    if (spec.step <= 0.0) throw ParseError("grid step must be positive");
    if (spec.hi < spec.lo) throw ParseError("grid range is empty");
    const long count = std::lround((spec.hi - spec.lo) / spec.step);
    std::vector<double> grid;
    grid.reserve(count + 1);
    for (long k = 0; k <= count; ++k) {
        double v = spec.lo + static_cast<double>(k) * spec.step;
        if (v > spec.hi + 0.5 * spec.step) break;
        grid.push_back(v);
    }
    if (grid.empty()) grid.push_back(spec.lo);
    return grid;
}

GridSpec parse_grid(const std::string& text) {
    std::istringstream iss(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(iss, part, ':')) parts.push_back(trim(part));
    if (parts.size() != 3)
        throw ParseError("grid spec '" + text + "' is not lo:hi:step");
    GridSpec spec;
    spec.lo = to_double("grid lo", parts[0]);
    spec.hi = to_double("grid hi", parts[1]);
    spec.step = to_double("grid step", parts[2]);
    if (spec.step <= 0.0) throw ParseError("grid step must be positive");
    if (spec.hi < spec.lo) throw ParseError("grid range is empty");
    return spec;
}

void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value) {
    if (key == "model") {
        if (value != "auto" && value != "mutualistic" && value != "gene")
            throw ParseError("model must be auto, mutualistic, or gene");
        config.model = value;
    } else if (key == "gamma_grid") {
        config.gamma_grid = parse_grid(value);
    } else if (key == "c_grid") {
        config.c_grid = parse_grid(value);
    } else if (key == "threshold") {
        config.threshold = to_double(key, value);
    } else if (key == "as") {
        config.a_s = to_double(key, value);
    } else if (key == "samples") {
        const long f = to_long(key, value);
        if (f < 1) throw ParseError("samples must be at least 1");
        config.samples = static_cast<int>(f);
    } else if (key == "seed") {
        std::uint64_t out = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
        if (ec != std::errc{} || ptr != value.data() + value.size())
            throw ParseError("bad seed '" + value + "'");
        config.seed = out;
    } else if (key == "cluster_tol") {
        config.tol.cluster_tol_rel = to_double(key, value);
    } else if (key == "rank_tol") {
        config.tol.rank_tol = to_double(key, value);
    } else if (key == "mode") {
        if (value != "walks" && value != "simple")
            throw ParseError("mode must be walks or simple");
        config.path_mode = value;
    } else if (key == "dt") {
        config.integ.dt = to_double(key, value);
        if (config.integ.dt <= 0) throw ParseError("dt must be positive");
    } else if (key == "eps") {
        config.integ.eps = to_double(key, value);
        if (config.integ.eps <= 0) throw ParseError("eps must be positive");
    } else if (key == "t_max") {
        config.integ.t_max = to_double(key, value);
    } else if (key == "path_length") {
        config.max_path_length = static_cast<int>(to_long(key, value));
    } else if (key == "input") {
        config.input_path = value;
    } else if (key == "outdir") {
        config.output_dir = value;
    } else if (key == "keep_sets") {
        if (value != "0" && value != "1" && value != "true" && value != "false")
            throw ParseError("keep_sets must be a boolean");
        config.keep_sets = value == "1" || value == "true";
    } else if (key == "h") {
        config.mut.h = to_double(key, value);
    } else if (key == "t") {
        config.mut.t = to_double(key, value);
    } else if (key == "beta_intra") {
        config.mut.beta_intra = to_double(key, value);
    } else if (key == "beta_inter") {
        config.mut.beta_inter = to_double(key, value);
    } else if (key == "alpha_a") {
        config.mut.alpha_A = to_double(key, value);
    } else if (key == "alpha_p") {
        config.mut.alpha_P = to_double(key, value);
    } else if (key == "mu_a") {
        config.mut.mu_A = to_double(key, value);
    } else if (key == "mu_p") {
        config.mut.mu_P = to_double(key, value);
    } else if (key == "gene_b") {
        config.gene.B = to_double(key, value);
    } else if (key == "gene_f") {
        config.gene.f = to_double(key, value);
    } else if (key == "gene_h") {
        config.gene.h_hill = to_double(key, value);
    } else {
        throw ParseError("unknown config key '" + key + "'");
    }
}

RunConfig load_config(const std::string& text, RunConfig base) {
    std::istringstream iss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(iss, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(lineno) +
                             " is not key=value");
        apply_config_entry(base, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return base;
}

std::string resolve_model(const RunConfig& config) {
    if (config.model != "auto") return config.model;
    const std::string& p = config.input_path;
    if (p.size() >= 4 && p.compare(p.size() - 4, 4, ".csv") == 0) return "mutualistic";
    return "gene";
}

std::vector<std::pair<std::string, std::string>>
provenance(const RunConfig& config, const std::string& command) {
    using outputs::format_double;
    std::vector<std::pair<std::string, std::string>> kv;
    auto grid = [](const GridSpec& g) {
        return format_double(g.lo) + ":" + format_double(g.hi) + ":" +
               format_double(g.step);
    };
    kv.emplace_back("tool", "ctrlrank");
    kv.emplace_back("command", command);
    kv.emplace_back("input", config.input_path);
    kv.emplace_back("model", resolve_model(config));
    kv.emplace_back("gamma_grid", grid(config.gamma_grid));
    kv.emplace_back("c_grid", grid(config.c_grid));
    kv.emplace_back("threshold", format_double(config.threshold));
    kv.emplace_back("as", format_double(config.a_s));
    kv.emplace_back("samples", std::to_string(config.samples));
    kv.emplace_back("seed", std::to_string(config.seed));
    kv.emplace_back("cluster_tol", format_double(config.tol.cluster_tol_rel));
    kv.emplace_back("rank_tol", format_double(config.tol.rank_tol));
    kv.emplace_back("dt", format_double(config.integ.dt));
    kv.emplace_back("eps", format_double(config.integ.eps));
    kv.emplace_back("t_max", format_double(config.integ.t_max));
    kv.emplace_back("path_length", std::to_string(config.max_path_length));
    kv.emplace_back("mode", config.path_mode);
    kv.emplace_back("h", format_double(config.mut.h));
    kv.emplace_back("t", format_double(config.mut.t));
    kv.emplace_back("beta_intra", format_double(config.mut.beta_intra));
    kv.emplace_back("beta_inter", format_double(config.mut.beta_inter));
    kv.emplace_back("alpha_a", format_double(config.mut.alpha_A));
    kv.emplace_back("alpha_p", format_double(config.mut.alpha_P));
    kv.emplace_back("mu_a", format_double(config.mut.mu_A));
    kv.emplace_back("mu_p", format_double(config.mut.mu_P));
    kv.emplace_back("gene_b", format_double(config.gene.B));
    kv.emplace_back("gene_f", format_double(config.gene.f));
    kv.emplace_back("gene_h", format_double(config.gene.h_hill));
    return kv;
}

} // namespace ctrlrank
