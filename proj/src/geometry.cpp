#include "tomolab/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tomolab {

namespace {
constexpr double kPi = std::numbers::pi;

void check_theta_size(const std::vector<double>& theta, int modes) {
  if (modes < 1) throw std::invalid_argument("mode count must be >= 1");
  if (static_cast<int>(theta.size()) != modes - 1)
    throw std::invalid_argument("theta must have N-1 entries");
}
}  // namespace

std::vector<double> direction_cosines(const std::vector<double>& theta, int modes) {
  check_theta_size(theta, modes);
  std::vector<double> u(modes);
  double sin_prod = 1.0;
  for (int j = 0; j < modes - 1; ++j) {
    u[j] = std::cos(theta[j]) * sin_prod;
    sin_prod *= std::sin(theta[j]);
  }
  u[modes - 1] = sin_prod;
  return u;
}

std::vector<std::complex<double>> mode_coefficients(const LOConfiguration& config) {
  const int n = config.modes();
  auto u = direction_cosines(config.theta, n);
  std::vector<std::complex<double>> z(n);
  for (int j = 0; j < n; ++j)
    z[j] = u[j] * std::polar(1.0, -config.psi[j]);
  return z;
}

double jacobian_weight(const std::vector<double>& theta, int modes) {
  check_theta_size(theta, modes);
  double g = 1.0;
  for (int l = 0; l < modes - 1; ++l) {
    // 1-based angle index: exponent 2(N-l)-1 for l = 1..N-1
    int expo = 2 * (modes - (l + 1)) - 1;
    g *= std::cos(theta[l]) * std::pow(std::sin(theta[l]), expo);
  }
  return g;
}

std::vector<double> quadrature_direction(const LOConfiguration& config) {
  const int n = config.modes();
  auto u = direction_cosines(config.theta, n);
  std::vector<double> d(2 * n);
  for (int j = 0; j < n; ++j) {
    d[2 * j] = u[j] * std::cos(config.psi[j]);
    d[2 * j + 1] = u[j] * std::sin(config.psi[j]);
  }
  return d;
}

double projected_quadrature(const std::vector<std::complex<double>>& alpha,
                            const LOConfiguration& config) {
  if (static_cast<int>(alpha.size()) != config.modes())
    throw std::invalid_argument("alpha must have one amplitude per mode");
  auto d = quadrature_direction(config);
  double x = 0.0;
  constexpr double sqrt2 = 1.4142135623730951;
  for (std::size_t j = 0; j < alpha.size(); ++j)
    x += d[2 * j] * sqrt2 * alpha[j].real() + d[2 * j + 1] * sqrt2 * alpha[j].imag();
  return x;
}

std::size_t SamplingGrid::theta_combos() const {
  std::size_t c = 1;
  for (int j = 0; j < modes - 1; ++j) c *= theta_count();
  return c;
}

std::size_t SamplingGrid::psi_combos() const {
  std::size_t c = 1;
  for (int j = 0; j < modes; ++j) c *= psi_count();
  return c;
}

std::vector<double> SamplingGrid::theta_at(std::size_t theta_combo) const {
  std::vector<double> theta(modes - 1);
  for (int j = modes - 2; j >= 0; --j) {
    theta[j] = theta_values[theta_combo % theta_count()];
    theta_combo /= theta_count();
  }
  return theta;
}

std::vector<double> SamplingGrid::psi_at(std::size_t psi_combo) const {
  std::vector<double> psi(modes);
  for (int j = modes - 1; j >= 0; --j) {
    psi[j] = psi_values[psi_combo % psi_count()];
    psi_combo /= psi_count();
  }
  return psi;
}

LOConfiguration SamplingGrid::config_at(std::size_t index) const {
  return LOConfiguration{theta_at(theta_combo_of(index)), psi_at(psi_combo_of(index))};
}

double SamplingGrid::theta_weight(std::size_t theta_combo) const {
  double w = 1.0;
  for (int j = 0; j < modes - 1; ++j) w *= theta_step();
  if (kind == WeightKind::quasidistribution)
    w *= jacobian_weight(theta_at(theta_combo), modes);
  return w;
}

double SamplingGrid::weight_at(std::size_t index) const {
  double w = theta_weight(theta_combo_of(index));
  for (int j = 0; j < modes; ++j) w *= psi_step();
  return w;
}

SamplingGrid build_grid(int modes, int theta_count, int psi_count, WeightKind kind) {
  if (modes < 1) throw std::invalid_argument("mode count must be >= 1");
  if (theta_count < 1 || psi_count < 1)
    throw std::invalid_argument("grid counts must be >= 1");
  SamplingGrid grid;
  grid.modes = modes;
  grid.kind = kind;
  grid.theta_max = kind == WeightKind::quasidistribution ? kPi / 2.0 : kPi;
  grid.psi_max = kind == WeightKind::quasidistribution ? 2.0 * kPi : kPi;
  grid.theta_values.resize(theta_count);
  grid.psi_values.resize(psi_count);
  for (int k = 1; k <= theta_count; ++k)
    grid.theta_values[k - 1] = grid.theta_max * k / theta_count;
  for (int k = 1; k <= psi_count; ++k)
    grid.psi_values[k - 1] = grid.psi_max * k / psi_count;
  return grid;
}

}  // namespace tomolab
