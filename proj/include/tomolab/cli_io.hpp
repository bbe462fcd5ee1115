#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "tomolab/dataset.hpp"
#include "tomolab/gaussian_sim.hpp"
#include "tomolab/reconstruct.hpp"

namespace tomolab {

// Dataset file: one '#'-prefixed JSON header line describing the grid,
// efficiency, seed and record count, followed by the records either as CSV
// rows `grid_index,x_value` (optionally with explicit theta/psi columns)
// or as fixed-width little-endian binary (u32 index + f64 value).
void write_dataset(const QuadratureDataset& data, const std::string& path,
                   bool binary = false, bool expanded = false);

// Reads either encoding (detected from the header). Throws io_error on
// malformed headers, bad rows, or record-count mismatches.
QuadratureDataset read_dataset(const std::string& path);

// Estimate tables, written as JSON (full metadata) and CSV (flat rows).
void write_quasidist_files(const QuasiDistTable& table, const std::string& base_path);
void write_rho_files(const RhoTable& table, const std::string& base_path);
void write_moments_files(const MomentTable& table, const std::string& base_path);
void write_validation_file(const ValidationReport& report, const std::string& path);

// Run configuration, parsed from a JSON file; CLI flags override fields.
struct RunConfig {
  std::string task = "simulate";  // simulate | q | rho | moments
  std::string state_type = "demo";  // demo | vacuum | coherent
  double r = 1.0;
  int modes = 3;
  std::vector<std::complex<double>> displacements;  // coherent state alphas
  std::string grid_kind = "quasidistribution";      // or "moment"
  int theta_count = 10;
  int psi_count = 10;
  int per_point = 50;
  double eta = 1.0;
  std::uint64_t seed = 1;
  double s = -1.0;
  int cutoff = 1;
  int max_order = 4;
  std::string out_dir = ".";
  int threads = 0;
  bool binary = false;
  bool expanded = false;
};

RunConfig parse_run_config(const std::string& path);
GaussianState build_state(const RunConfig& config);
SamplingGrid build_grid_from(const RunConfig& config);

}  // namespace tomolab
