#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "effpot/agmon.hpp"
#include "effpot/demo2d.hpp"
#include "effpot/eigensolve.hpp"
#include "effpot/ensemble.hpp"
#include "effpot/landscape.hpp"
#include "effpot/verify.hpp"
#include "effpot/wells.hpp"

namespace effpot {

/// 17 significant digits ("%.17g"); "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);

/// Throws Io on failure. Parent directories are created.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

/// Reads V and optional a (scalar column `a` or per-axis `a0`, `a1`) and m, one row per node,
/// from a headed CSV. v_bar <= 0 selects max V.
CoefficientField load_coefficients_csv(const std::filesystem::path& path, const GridSpec& grid,
                                       double v_bar = -1.0);

void write_landscape_csv(const std::filesystem::path& path, const GridSpec& grid,
                         const CoefficientField& coeffs, const Landscape& landscape);
void write_distance_csv(const std::filesystem::path& path, const GridSpec& grid,
                        const DistanceField& field);
void write_partition_csv(const std::filesystem::path& path, const GridSpec& grid,
                         const Landscape& landscape, const WellPartition& partition);
void write_partition_json(const std::filesystem::path& path, const WellPartition& partition,
                          const std::string& config_echo);

/// domain_tag,index,value,residual,degenerate_group for every set.
void write_eigenvalues_csv(const std::filesystem::path& path, const std::vector<const EigenSet*>& sets);
void write_eigenvalues_csv(const std::filesystem::path& path, const EigenSet& global,
                           const LocalizedEigenSet& localized);
/// node, coordinates, then one column per eigenvector (full-grid vectors only).
void write_eigenvectors_csv(const std::filesystem::path& path, const GridSpec& grid,
                            const EigenSet& set);

/// JSON array of check records.
std::string reports_json(const std::vector<CheckReport>& reports);
void write_reports_json(const std::filesystem::path& path, const std::vector<CheckReport>& reports,
                        const std::string& config_echo);

void write_records_csv(const std::filesystem::path& path,
                       const std::vector<RealizationRecord>& records);
void write_summary_json(const std::filesystem::path& path, const EnsembleSummary& summary,
                        const std::string& config_echo);

void write_masses_csv(const std::filesystem::path& path, const std::vector<EigenvectorMass>& masses);
void write_demo_summary_json(const std::filesystem::path& path, const Demo2DResult& result,
                             const std::string& config_echo);

/// {"error": tag, "message": ...}
std::string error_json(std::string_view tag, std::string_view message);

}  // namespace effpot
