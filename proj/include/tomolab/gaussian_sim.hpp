#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "tomolab/dataset.hpp"
#include "tomolab/geometry.hpp"

namespace tomolab {

// Gaussian state of N modes in quadrature convention x = (a + a^dag)/sqrt(2):
// the vacuum covariance is identity/2. Quadrature ordering x_1,p_1,...,x_N,p_N.
struct GaussianState {
  int modes = 0;
  Eigen::VectorXd mean;        // length 2N
  Eigen::MatrixXd covariance;  // 2N x 2N symmetric
};

GaussianState vacuum(int modes);

// Bogoliubov map b -> b cosh r + b^dag sinh r on one mode; the x quadrature
// is anti-squeezed (variance e^{2r}/2 on vacuum).
GaussianState squeeze(const GaussianState& state, int mode, double r);

// a_i -> cos t a_i + sin t a_j, a_j -> -sin t a_i + cos t a_j.
GaussianState beam_splitter(const GaussianState& state, int i, int j, double mixing_angle);

// a -> a exp(-i phi): rotation of one mode's (x, p) plane.
GaussianState phase_shift(const GaussianState& state, int mode, double phi);

// Displacement a -> a + alpha.
GaussianState displace(const GaussianState& state, int mode, std::complex<double> alpha);

// General passive network a = O b for a real orthogonal N x N matrix O,
// applied identically to the x and p blocks.
GaussianState passive_mix(const GaussianState& state, const Eigen::MatrixXd& ortho);

// Squeezed vacuum split equally over three modes through two beam
// splitters; every mode carries <a_j^dag a_j> = sinh(r)^2 / 3.
GaussianState three_mode_demo_state(double r);

// Covariance + (i/2) Omega positive semidefinite up to tol.
bool is_physical(const GaussianState& state, double tol = 1e-10);

// Exact mean and variance of the measured quadrature X for one LO setting.
std::pair<double, double> quadrature_stats(const GaussianState& state,
                                           const LOConfiguration& config);

// Deterministic per-stream RNG (splitmix64 + Box-Muller); one stream per
// grid point keeps datasets reproducible under any worker scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);
  double uniform();  // (0, 1]
  double normal();

 private:
  std::uint64_t next();
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// One detected sample X' = sqrt(eta) X + sqrt(1-eta) X_vac.
double sample_quadrature(const GaussianState& state, const LOConfiguration& config,
                         double eta, RngStream& rng);

// per_point records for every grid point; deterministic for a fixed seed.
QuadratureDataset simulate_dataset(const GaussianState& state, const SamplingGrid& grid,
                                   int per_point, double eta, std::uint64_t seed);

// Exact Husimi Q value <alpha|rho|alpha>/pi^N of the Gaussian state.
double analytic_q(const GaussianState& state,
                  const std::vector<std::complex<double>>& alpha);

// Exact s-ordered moment <a^dag^m a^n>_s via Wick expansion over the
// s-smoothed covariance.
std::complex<double> analytic_moment(const GaussianState& state,
                                     const std::vector<int>& m,
                                     const std::vector<int>& n, double s);

}  // namespace tomolab
