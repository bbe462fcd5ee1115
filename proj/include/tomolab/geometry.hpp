#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace tomolab {

// Local-oscillator setting: the angles and phases that select which
// superposition mode the homodyne detector measures.
struct LOConfiguration {
  std::vector<double> theta;  // N-1 hyperspherical angles
  std::vector<double> psi;    // N phases

  int modes() const { return static_cast<int>(psi.size()); }
};

enum class WeightKind { quasidistribution, moment };

// u_j = cos(theta_j) prod_{l<j} sin(theta_l), u_N = prod sin(theta_l).
// Unit vector by construction.
std::vector<double> direction_cosines(const std::vector<double>& theta, int modes);

// z_j = u_j exp(-i psi_j); sum |z_j|^2 = 1.
std::vector<std::complex<double>> mode_coefficients(const LOConfiguration& config);

// g(theta) = prod_l cos(theta_l) sin(theta_l)^(2(N-l)-1); 1 for N = 1.
double jacobian_weight(const std::vector<double>& theta, int modes);

// Coefficient vector d of length 2N with X = d . (x_1,p_1,...,x_N,p_N):
// d_(2j) = u_j cos(psi_j), d_(2j+1) = u_j sin(psi_j).
std::vector<double> quadrature_direction(const LOConfiguration& config);

// c-number quadrature of a phase-space point,
// Xtilde = 2^(-1/2) sum_j (u_j e^{-i psi_j} alpha_j + c.c.).
double projected_quadrature(const std::vector<std::complex<double>>& alpha,
                            const LOConfiguration& config);

// Cartesian product grid over N-1 theta axes and N psi axes, stored in
// factorized form (one value list per axis kind). Point ordering is
// lexicographic (theta_1,...,theta_{N-1},psi_1,...,psi_N), theta_1 slowest.
struct SamplingGrid {
  int modes = 1;
  WeightKind kind = WeightKind::quasidistribution;
  double theta_max = 0.0;
  double psi_max = 0.0;
  std::vector<double> theta_values;
  std::vector<double> psi_values;

  std::size_t theta_count() const { return theta_values.size(); }
  std::size_t psi_count() const { return psi_values.size(); }
  std::size_t theta_combos() const;
  std::size_t psi_combos() const;
  std::size_t size() const { return theta_combos() * psi_combos(); }
  double theta_step() const { return theta_max / static_cast<double>(theta_count()); }
  double psi_step() const { return psi_max / static_cast<double>(psi_count()); }

  std::size_t theta_combo_of(std::size_t index) const { return index / psi_combos(); }
  std::size_t psi_combo_of(std::size_t index) const { return index % psi_combos(); }

  // Decoded axis values; theta_1 is the slowest-varying digit.
  std::vector<double> theta_at(std::size_t theta_combo) const;
  std::vector<double> psi_at(std::size_t psi_combo) const;
  LOConfiguration config_at(std::size_t index) const;

  // Quadrature weight of one grid point: the plain product measure for
  // moment grids, times the Jacobian g(theta) for quasidistribution grids.
  double weight_at(std::size_t index) const;
  double theta_weight(std::size_t theta_combo) const;
};

// Quasidistribution kind: theta^(k) = k pi/(2 Ntheta), psi^(k) = 2 pi k/Npsi.
// Moment kind: theta^(k) = k pi/Ntheta, psi^(k) = pi k/Npsi. k = 1..count.
SamplingGrid build_grid(int modes, int theta_count, int psi_count, WeightKind kind);

}  // namespace tomolab
