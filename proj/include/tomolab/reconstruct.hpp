#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "tomolab/dataset.hpp"
#include "tomolab/kernels.hpp"

namespace tomolab {

struct Estimate {
  std::complex<double> value;
  double std_error = 0.0;  // one standard error, propagated per grid point
};

// Streaming mean/variance accumulator with associative merge, so record
// partitions can be processed in parallel and reduced in any tree order.
struct WelfordAccumulator {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x);
  void merge(const WelfordAccumulator& other);
  // Unbiased sample variance; 0 for fewer than two samples.
  double variance() const;
};

// Resolve a worker count: explicit value wins, then the TOMOLAB_THREADS
// environment variable, then hardware concurrency.
int resolve_threads(int requested);

struct PhaseSpacePoint {
  std::vector<std::complex<double>> alpha;
};

struct QuasiDistTable {
  double s = -1.0;
  std::vector<PhaseSpacePoint> points;
  std::vector<Estimate> values;
};

struct RhoTable {
  int modes = 1;
  int cutoff = 0;
  std::vector<MomentIndex> indices;
  std::vector<Estimate> values;

  const Estimate& at(const std::vector<int>& m, const std::vector<int>& n) const;
};

struct MomentTable {
  int modes = 1;
  int max_order = 0;
  double s = 1.0;
  std::vector<MomentIndex> indices;
  std::vector<Estimate> values;

  const Estimate& at(const std::vector<int>& m, const std::vector<int>& n) const;
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;  // the specific inequality, with numbers
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::uint64_t sufficient_points = 0;  // R(M, N) = (M+1)^(2N-1)
  std::uint64_t free_parameters = 0;    // P(M, N) = C(M+2N-1, M)

  bool passed() const;
  std::string first_failure() const;
};

std::uint64_t sufficient_point_count(int max_order, int modes);
std::uint64_t free_parameter_count(int max_order, int modes);

ValidationReport validate_quasidist_request(const QuadratureDataset& data, double s);
ValidationReport validate_rho_request(const QuadratureDataset& data, int cutoff);
ValidationReport validate_moment_request(const QuadratureDataset& data, double s,
                                         int max_order);

// W_s estimate at each phase-space point: the grid-weighted average of
// s_kernel(X/sqrt(eta) - Xtilde) over all records. Throws bound_error with
// the failed inequality when validation rejects the request.
QuasiDistTable estimate_quasidist(const QuadratureDataset& data, double s,
                                  const std::vector<PhaseSpacePoint>& points,
                                  int threads = 0);

// Every rho_mn with all Fock indices <= cutoff. Hermitian by construction:
// conjugate index pairs share one accumulator.
RhoTable estimate_rho(const QuadratureDataset& data, int cutoff, int threads = 0);

// Every s-ordered moment with total order <= max_order; for s = 1 and
// eta < 1 the eta^(-M/2) compensation is applied.
MomentTable estimate_moments(const QuadratureDataset& data, double s,
                             int max_order, int threads = 0);

struct MandelResult {
  double q = 0.0;
  double std_error = 0.0;
};

// Q_j = (<:n_j^2:> - <n_j>^2) / <n_j> from a normally ordered (s = 1)
// moment table. Throws std::domain_error when <n_j> is not resolved above
// its own standard error (vacuum-like input).
MandelResult mandel_q(const MomentTable& table, int mode);

}  // namespace tomolab
