#ifndef CTRLRANK_OUTPUTS_HPP
#define CTRLRANK_OUTPUTS_HPP

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ctrlrank/compare.hpp"
#include "ctrlrank/connectome.hpp"
#include "ctrlrank/linctrl.hpp"
#include "ctrlrank/ranking.hpp"
#include "ctrlrank/tipping.hpp"

// Deterministic text serialization: fixed key order, shortest round-trip
// float formatting, no timestamps — identical runs produce identical bytes.
namespace ctrlrank::outputs {

using Provenance = std::vector<std::pair<std::string, std::string>>;

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);
std::string format_complex(std::complex<double> value);

/// "# key=value" lines, one per pair, in the given order.
std::string provenance_header(const Provenance& prov);

std::string read_file(const std::string& path);  // ParseError when unreadable
void write_file(const std::string& path, const std::string& content);

std::string ranking_csv(const ImportanceRanking& ranking,
                        const std::vector<std::string>& labels,
                        const std::vector<int>& degrees, const Provenance& prov);
std::string ranking_json(const ImportanceRanking& ranking,
                         const std::vector<std::string>& labels,
                         const Provenance& prov);

std::string recovery_csv(const tipping::RecoveryTable& table,
                         const std::vector<std::string>& labels,
                         const std::vector<int>& degrees, const Provenance& prov);

std::string sweep_csv(const tipping::SweepResult& result,
                      const std::vector<std::string>& labels, const Provenance& prov);

std::string spectrum_json(const linctrl::SpectrumReport& report, int n_d,
                          std::complex<double> lambda_m, const Provenance& prov);

std::string sets_csv(const std::vector<linctrl::ControllerSet>& sets,
                     const std::vector<std::string>& labels, const Provenance& prov);

std::string report_csv(const compare::Report& report, const Provenance& prov);
std::string record_json(const compare::ComparisonRecord& record, const Provenance& prov);
std::string scatter_csv(const std::vector<compare::ComparisonRecord>& records,
                        const Provenance& prov);

std::string path_matrix_csv(const connectome::PathCountMatrix& matrix,
                            const std::vector<std::string>& labels,
                            const Provenance& prov);
std::string class_means_csv(const std::map<netio::NodeClass, double>& means,
                            const Provenance& prov);

} // namespace ctrlrank::outputs

#endif
