#include "effpot/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "effpot/errors.hpp"
#include "effpot/prng.hpp"

namespace effpot {

namespace {

using json = nlohmann::ordered_json;

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json echo(const std::string& config_echo) {
  if (config_echo.empty()) return json(nullptr);
  try {
    return json::parse(config_echo);
  } catch (const json::parse_error&) {
    return json(config_echo);
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

std::string coords_header(const GridSpec& grid) { return grid.dim() == 1 ? "x" : "x,y"; }

void append_coords(std::ostringstream& os, const GridSpec& grid, Index i) {
  for (int k = 0; k < grid.dim(); ++k) os << ',' << format_double(grid.coordinate(i, k));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return out;
}

json report_to_json(const CheckReport& r) {
  json j;
  j["name"] = r.name;
  j["lhs"] = num(r.lhs);
  j["rhs"] = num(r.rhs);
  j["pass"] = r.pass;
  j["margin"] = num(r.margin);
  j["slack"] = r.slack;
  j["vacuous"] = r.vacuous;
  j["skipped"] = r.skipped;
  j["degenerate"] = r.degenerate;
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = num(v);
  j["params"] = params;
  if (!std::isfinite(r.lhs)) j["lhs_nonfinite"] = format_double(r.lhs);
  if (!std::isfinite(r.rhs)) j["rhs_nonfinite"] = format_double(r.rhs);
  j["notes"] = r.notes;
  return j;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CoefficientField load_coefficients_csv(const std::filesystem::path& path, const GridSpec& grid,
                                       double v_bar) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Io, path.string() + " is empty");
  const auto header = split_csv_line(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t k = 0; k < header.size(); ++k) col[header[k]] = k;
  if (!col.count("V")) throw Error(ErrorCode::Io, path.string() + " has no V column");
  const bool scalar_a = col.count("a") > 0;
  const bool axis_a = col.count("a0") > 0;
  const bool has_m = col.count("m") > 0;
  if (axis_a && grid.dim() == 2 && !col.count("a1")) {
    throw Error(ErrorCode::Io, path.string() + " has a0 but no a1");
  }
  const auto n = static_cast<std::size_t>(grid.node_count());
  CoefficientField f;
  f.V.reserve(n);
  std::vector<std::vector<double>> a(axis_a ? static_cast<std::size_t>(grid.dim()) : 1);
  std::vector<double> m;
  std::size_t row = 0;
  auto parse = [&](const std::vector<std::string>& cells, const std::string& name) {
    const std::size_t k = col.at(name);
    if (k >= cells.size()) {
      throw Error(ErrorCode::Io, path.string() + ": row " + std::to_string(row) + " is short");
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(cells[k], &used);
      if (used != cells[k].size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::Io, path.string() + ": bad number '" + cells[k] + "' in column " + name);
    }
  };
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    f.V.push_back(parse(cells, "V"));
    if (scalar_a) a[0].push_back(parse(cells, "a"));
    if (axis_a) {
      for (int k = 0; k < grid.dim(); ++k) a[static_cast<std::size_t>(k)].push_back(parse(cells, "a" + std::to_string(k)));
    }
    if (has_m) m.push_back(parse(cells, "m"));
    ++row;
  }
  if (row != n) {
    throw Error(ErrorCode::LengthMismatch, path.string() + " has " + std::to_string(row) +
                                               " rows for " + std::to_string(n) + " nodes");
  }
  if (!scalar_a && !axis_a) a[0].assign(n, 1.0);
  if (!has_m) m.assign(n, 1.0);
  f.a = std::move(a);
  f.m = std::move(m);
  double vmax = 0.0;
  for (double v : f.V) vmax = std::max(vmax, v);
  f.v_bar = v_bar > 0.0 ? v_bar : vmax;
  validate_coefficients(grid, f);
  return f;
}

void write_landscape_csv(const std::filesystem::path& path, const GridSpec& grid,
                         const CoefficientField& coeffs, const Landscape& landscape) {
  std::ostringstream os;
  os << "node," << coords_header(grid) << ",V,u,W\n";
  for (Index i = 0; i < grid.node_count(); ++i) {
    os << i;
    append_coords(os, grid, i);
    os << ',' << format_double(coeffs.V[static_cast<std::size_t>(i)]) << ','
       << format_double(landscape.u[i]) << ',' << format_double(landscape.W[i]) << '\n';
  }
  write_text_file(path, os.str());
}

void write_distance_csv(const std::filesystem::path& path, const GridSpec& grid,
                        const DistanceField& field) {
  std::ostringstream os;
  os << "node," << coords_header(grid) << ",h,source\n";
  std::vector<char> src = field.sources.mask(grid.node_count());
  for (Index i = 0; i < grid.node_count(); ++i) {
    os << i;
    append_coords(os, grid, i);
    os << ',' << format_double(field.h[i]) << ',' << int(src[static_cast<std::size_t>(i)]) << '\n';
  }
  write_text_file(path, os.str());
}

void write_partition_csv(const std::filesystem::path& path, const GridSpec& grid,
                         const Landscape& landscape, const WellPartition& partition) {
  const Index n = grid.node_count();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < partition.components.size(); ++c) {
    for (Index i : partition.components[c]) comp[static_cast<std::size_t>(i)] = static_cast<int>(c);
  }
  std::ostringstream os;
  os << "node," << coords_header(grid)
     << ",W,component,cluster,omega,nearest_cluster,rho_nearest\n";
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    os << i;
    append_coords(os, grid, i);
    const int c = comp[k];
    os << ',' << format_double(landscape.W[i]) << ',' << c << ','
       << (c >= 0 ? partition.component_cluster[static_cast<std::size_t>(c)] : -1) << ','
       << partition.omega_owner[k] << ',' << partition.nearest_cluster[k] << ','
       << format_double(partition.rho_nearest[i]) << '\n';
  }
  write_text_file(path, os.str());
}

void write_partition_json(const std::filesystem::path& path, const WellPartition& partition,
                          const std::string& config_echo) {
  json j;
  j["mu_bar"] = partition.mu_bar;
  j["delta"] = partition.delta;
  j["nu"] = partition.nu;
  j["merge_threshold"] = partition.merge_threshold;
  j["stencil"] = std::string(stencil_name(partition.stencil));
  j["E_size"] = partition.E.size();
  j["component_sizes"] = json::array();
  for (const auto& c : partition.components) j["component_sizes"].push_back(c.size());
  j["component_cluster"] = partition.component_cluster;
  j["cluster_sizes"] = json::array();
  for (const auto& c : partition.clusters) j["cluster_sizes"].push_back(c.size());
  j["omega_sizes"] = json::array();
  for (const auto& o : partition.omegas) j["omega_sizes"].push_back(o.size());
  j["S_bar"] = num(partition.S_bar);
  j["S_bar_infinite"] = std::isinf(partition.S_bar);
  j["single_cluster"] = partition.single_cluster;
  json sep = json::array();
  for (Index r = 0; r < partition.separation.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < partition.separation.cols(); ++c) row.push_back(num(partition.separation(r, c)));
    sep.push_back(row);
  }
  j["separation"] = sep;
  j["config"] = echo(config_echo);
  write_json(path, j);
}

void write_eigenvalues_csv(const std::filesystem::path& path, const std::vector<const EigenSet*>& sets) {
  std::ostringstream os;
  os << "domain_tag,index,value,residual,degenerate_group\n";
  for (const EigenSet* s : sets) {
    for (std::size_t i = 0; i < s->values.size(); ++i) {
      os << s->domain << ',' << i + 1 << ',' << format_double(s->values[i]) << ','
         << format_double(s->residuals[i]) << ','
         << (i < s->degenerate_group.size() ? s->degenerate_group[i] : -1) << '\n';
    }
  }
  write_text_file(path, os.str());
}

void write_eigenvalues_csv(const std::filesystem::path& path, const EigenSet& global,
                           const LocalizedEigenSet& localized) {
  std::vector<const EigenSet*> sets{&global};
  for (const auto& w : localized.wells) sets.push_back(&w);
  write_eigenvalues_csv(path, sets);
}

void write_eigenvectors_csv(const std::filesystem::path& path, const GridSpec& grid,
                            const EigenSet& set) {
  if (set.vectors.rows() != grid.node_count()) {
    throw Error(ErrorCode::LengthMismatch, "eigenvectors are not full-grid vectors");
  }
  std::ostringstream os;
  os << "node," << coords_header(grid);
  for (Index c = 0; c < set.vectors.cols(); ++c) os << ",psi" << c + 1;
  os << '\n';
  for (Index i = 0; i < grid.node_count(); ++i) {
    os << i;
    append_coords(os, grid, i);
    for (Index c = 0; c < set.vectors.cols(); ++c) os << ',' << format_double(set.vectors(i, c));
    os << '\n';
  }
  write_text_file(path, os.str());
}

std::string reports_json(const std::vector<CheckReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr.dump(2);
}

void write_reports_json(const std::filesystem::path& path, const std::vector<CheckReport>& reports,
                        const std::string& config_echo) {
  json j;
  std::size_t passed = 0, failed = 0, skipped = 0;
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back(report_to_json(r));
    if (r.skipped) ++skipped;
    else if (r.pass) ++passed;
    else ++failed;
  }
  j["passed"] = passed;
  j["failed"] = failed;
  j["skipped"] = skipped;
  j["checks"] = arr;
  j["config"] = echo(config_echo);
  write_json(path, j);
}

void write_records_csv(const std::filesystem::path& path,
                       const std::vector<RealizationRecord>& records) {
  std::ostringstream os;
  os << "seed,T,lambda1,lambda2,gap,delta,component_count,S_min,S_median,runtime_ms,error_tag\n";
  for (const auto& r : records) {
    os << r.seed << ',' << r.T << ',' << format_double(r.lambda1) << ',' << format_double(r.lambda2)
       << ',' << format_double(r.gap) << ',' << format_double(r.delta) << ',' << r.component_count
       << ',' << format_double(r.S_min) << ',' << format_double(r.S_median) << ','
       << format_double(r.runtime_ms) << ',' << r.error_tag << '\n';
  }
  write_text_file(path, os.str());
}

void write_summary_json(const std::filesystem::path& path, const EnsembleSummary& summary,
                        const std::string& config_echo) {
  json j;
  j["prng"] = Rng::kId;
  j["records"] = summary.records.size();
  json per = json::array();
  for (const auto& pt : summary.per_T) {
    json e;
    e["T"] = pt.T;
    e["count"] = pt.count;
    e["failures"] = pt.failures;
    e["single_component"] = pt.single_component;
    e["median_S"] = num(pt.median_S);
    e["median_S_infinite"] = std::isinf(pt.median_S);
    e["gap_fraction"] = num(pt.gap_fraction);
    per.push_back(e);
  }
  j["per_T"] = per;
  if (summary.fit_available) {
    j["fit"] = {{"prefactor", summary.prefactor}, {"exponent", summary.exponent}};
  } else {
    j["fit"] = nullptr;
  }
  j["medians_nondecreasing"] = summary.medians_nondecreasing;
  j["config"] = echo(config_echo);
  write_json(path, j);
}

void write_masses_csv(const std::filesystem::path& path, const std::vector<EigenvectorMass>& masses) {
  std::ostringstream os;
  os << "index,lambda,cluster_count,best_cluster,best_fraction,set_fraction,basin_cluster,"
        "basin_fraction,localized\n";
  for (const auto& m : masses) {
    os << m.index << ',' << format_double(m.lambda) << ',' << m.cluster_count << ','
       << m.best_cluster << ',' << format_double(m.best_fraction) << ','
       << format_double(m.set_fraction) << ',' << m.basin_cluster << ','
       << format_double(m.basin_fraction) << ',' << int(m.localized) << '\n';
  }
  write_text_file(path, os.str());
}

void write_demo_summary_json(const std::filesystem::path& path, const Demo2DResult& result,
                             const std::string& config_echo) {
  json j;
  j["prng"] = Rng::kId;
  j["seed_used"] = result.seed_used;
  j["skipped_seeds"] = result.skipped_seeds;
  j["eigenvalues"] = result.eigen.values;
  j["eigen_method"] = result.eigen.method;
  j["delta"] = result.delta;
  j["mu_bar"] = result.mu_bar;
  j["components"] = result.partition.components.size();
  j["clusters"] = result.partition.clusters.size();
  j["S_bar"] = num(result.partition.S_bar);
  j["localized_count"] = result.localized_count;
  std::size_t basin_count = 0;
  for (const auto& m : result.masses) basin_count += m.basin_fraction >= 0.9 ? 1 : 0;
  j["basin_localized_count"] = basin_count;
  j["config"] = echo(config_echo);
  write_json(path, j);
}

std::string error_json(std::string_view tag, std::string_view message) {
  json j;
  j["error"] = std::string(tag);
  j["message"] = std::string(message);
  return j.dump(2) + "\n";
}

}  // namespace effpot
