#include "ctrlrank/outputs.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ctrlrank/errors.hpp"

namespace ctrlrank {

const char* to_string(RankKind k) {
    return k == RankKind::nonlinear ? "nonlinear" : "linear";
}

} // namespace ctrlrank

namespace ctrlrank::outputs {

using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw Error("number formatting failed");
    return std::string(buf, ptr);
}

std::string format_complex(std::complex<double> value) {
    if (value.imag() == 0.0) return format_double(value.real());
    std::string s = format_double(value.real());
    if (value.imag() >= 0.0) s += "+";
    return s + format_double(value.imag()) + "i";
}

std::string provenance_header(const Provenance& prov) {
    std::string out;
    for (const auto& [key, value] : prov)
        out += "# " + key + "=" + value + "\n";
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
    if (!out) throw Error("write to '" + path + "' failed");
}

namespace {

json provenance_json(const Provenance& prov) {
    json obj = json::object();
    for (const auto& [key, value] : prov) obj[key] = value;
    return obj;
}

} // namespace

std::string ranking_csv(const ImportanceRanking& ranking,
                        const std::vector<std::string>& labels,
                        const std::vector<int>& degrees, const Provenance& prov) {
    std::string out = provenance_header(prov);
    out += "node,label,degree,";
    out += ranking.kind == RankKind::nonlinear ? "r_nl" : "r_l";
    out += "\n";
    for (int k = 0; k < ranking.size(); ++k) {
        const int node = ranking.node_indices[k];
        out += std::to_string(node) + "," + labels.at(node) + "," +
               std::to_string(degrees.at(node)) + "," +
               format_double(ranking.values[k]) + "\n";
    }
    return out;
}

std::string ranking_json(const ImportanceRanking& ranking,
                         const std::vector<std::string>& labels,
                         const Provenance& prov) {
    json doc;
    doc["kind"] = to_string(ranking.kind);
    doc["scope"] = ranking.scope;
    json values = json::array();
    for (int k = 0; k < ranking.size(); ++k) {
        const int node = ranking.node_indices[k];
        values.push_back({{"node", node},
                          {"label", labels.at(node)},
                          {"value", ranking.values[k]}});
    }
    doc["values"] = std::move(values);
    doc["config"] = provenance_json(prov);
    return doc.dump(2) + "\n";
}

std::string recovery_csv(const tipping::RecoveryTable& table,
                         const std::vector<std::string>& labels,
                         const std::vector<int>& degrees, const Provenance& prov) {
    std::string out = provenance_header(prov);
    out += "node,label,degree,recovery_point\n";
    for (std::size_t k = 0; k < table.points.size(); ++k) {
        const int node = table.node_indices[k];
        out += std::to_string(node) + "," + labels.at(node) + "," +
               std::to_string(degrees.at(node)) + ",";
        out += table.points[k] ? format_double(*table.points[k]) : "none";
        out += "\n";
    }
    return out;
}

std::string sweep_csv(const tipping::SweepResult& result,
                      const std::vector<std::string>& labels, const Provenance& prov) {
    std::string out = provenance_header(prov);
    out += "# direction=";
    out += result.direction == tipping::SweepDirection::descending ? "descending"
                                                                   : "ascending";
    out += "\n# tipping_point=";
    out += result.tipping_point ? format_double(*result.tipping_point) : "none";
    out += "\nparameter";
    for (const auto& label : labels) out += "," + label;
    out += "\n";
    for (std::size_t k = 0; k < result.grid.size(); ++k) {
        out += format_double(result.grid[k]);
        for (int i = 0; i < result.states[k].size(); ++i)
            out += "," + format_double(result.states[k](i));
        out += "\n";
    }
    return out;
}

std::string spectrum_json(const linctrl::SpectrumReport& report, int n_d,
                          std::complex<double> lambda_m, const Provenance& prov) {
    json doc;
    doc["n_d"] = n_d;
    doc["lambda_m"] = format_complex(lambda_m);
    doc["sigma_max"] = report.sigma_max;
    doc["cluster_tol_abs"] = report.cluster_tol;
    doc["rank_tol"] = report.rank_tol;
    json clusters = json::array();
    for (const auto& c : report.clusters)
        clusters.push_back({{"lambda", format_complex(c.value)},
                            {"algebraic", c.algebraic},
                            {"geometric", c.geometric}});
    doc["clusters"] = std::move(clusters);
    doc["config"] = provenance_json(prov);
    return doc.dump(2) + "\n";
}

std::string sets_csv(const std::vector<linctrl::ControllerSet>& sets,
                     const std::vector<std::string>& labels, const Provenance& prov) {
    std::string out = provenance_header(prov);
    out += "sample,lambda_m,drivers\n";
    for (std::size_t k = 0; k < sets.size(); ++k) {
        out += std::to_string(k) + "," + format_complex(sets[k].lambda_M) + ",";
        for (std::size_t j = 0; j < sets[k].drivers.size(); ++j) {
            if (j) out += " ";
            out += labels.at(sets[k].drivers[j]);
        }
        out += "\n";
    }
    return out;
}

std::string report_csv(const compare::Report& report, const Provenance& prov) {
    std::string out = provenance_header(prov);
    out += "# pearson_r=" + format_double(report.record.pearson_r) + "\n";
    out += "# cosine_distance=" + format_double(report.record.cosine_d) + "\n";
    out += "node,label,degree,r_nl,r_l,in_scope\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.node) + "," + row.label + "," +
               std::to_string(row.degree) + "," +
               (row.in_scope ? format_double(row.r_nl) : "none") + "," +
               format_double(row.r_l) + "," + (row.in_scope ? "1" : "0") + "\n";
    }
    return out;
}

namespace {

json record_to_json(const compare::ComparisonRecord& record) {
    return {{"network", record.network_id}, {"pearson_r", record.pearson_r},
            {"cosine_distance", record.cosine_d}, {"scope", record.scope},
            {"n_scope", record.n_scope}, {"samples", record.F},
            {"fingerprint", record.fingerprint}};
}

} // namespace

std::string record_json(const compare::ComparisonRecord& record, const Provenance& prov) {
    json doc = record_to_json(record);
    doc["config"] = provenance_json(prov);
    return doc.dump(2) + "\n";
}

std::string scatter_csv(const std::vector<compare::ComparisonRecord>& records,
                        const Provenance& prov) {
    std::string out = provenance_header(prov);
    out += "network,pearson_r,cosine_distance,n_scope\n";
    for (const auto& r : records)
        out += r.network_id + "," + format_double(r.pearson_r) + "," +
               format_double(r.cosine_d) + "," + std::to_string(r.n_scope) + "\n";
    return out;
}

std::string path_matrix_csv(const connectome::PathCountMatrix& matrix,
                            const std::vector<std::string>& labels,
                            const Provenance& prov) {
    std::string out = provenance_header(prov);
    out += "# mode=";
    out += matrix.mode == connectome::PathMode::walks ? "walks" : "simple_paths";
    out += "\n# max_length=" + std::to_string(matrix.max_length) + "\n";
    out += "source";
    for (int t : matrix.targets) out += "," + labels.at(t);
    out += "\n";
    for (std::size_t si = 0; si < matrix.sources.size(); ++si) {
        out += labels.at(matrix.sources[si]);
        for (std::size_t ti = 0; ti < matrix.targets.size(); ++ti)
            out += "," + connectome::count_to_string(matrix.counts[si][ti]);
        out += "\n";
    }
    return out;
}

std::string class_means_csv(const std::map<netio::NodeClass, double>& means,
                            const Provenance& prov) {
    std::string out = provenance_header(prov);
    out += "class,mean_importance\n";
    for (const auto& [cls, mean] : means)
        out += std::string(netio::to_string(cls)) + "," + format_double(mean) + "\n";
    return out;
}

} // namespace ctrlrank::outputs
