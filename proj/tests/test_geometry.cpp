#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tomolab/geometry.hpp"

using namespace tomolab;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("direction cosines form a unit vector") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(0.0, kPi / 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    LOConfiguration config;
    for (int j = 0; j < n - 1; ++j) config.theta.push_back(ang(rng));
    for (int j = 0; j < n; ++j) config.psi.push_back(phase(rng));
    const auto u = direction_cosines(config.theta, n);
    const auto z = mode_coefficients(config);
    double su = 0.0, sz = 0.0;
    for (int j = 0; j < n; ++j) {
      su += u[j] * u[j];
      sz += std::norm(z[j]);
    }
    CHECK(su == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sz == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("jacobian weight") {
  CHECK(jacobian_weight({}, 1) == 1.0);
  // N = 2: g(theta) = cos(theta) sin(theta)
  CHECK(jacobian_weight({0.7}, 2) ==
        doctest::Approx(std::cos(0.7) * std::sin(0.7)));
  // N = 3: cos(t1) sin(t1)^3 * cos(t2) sin(t2)
  CHECK(jacobian_weight({0.5, 1.1}, 3) ==
        doctest::Approx(std::cos(0.5) * std::pow(std::sin(0.5), 3) *
                        std::cos(1.1) * std::sin(1.1)));
}

TEST_CASE("total measure converges to the solid-angle volume (N = 2)") {
  // integral of the measure is (2 pi)^N * int g(theta) dtheta; for N = 2
  // int_0^(pi/2) cos sin = 1/2
  const auto grid = build_grid(2, 200, 200, WeightKind::quasidistribution);
  double theta_sum = 0.0;
  for (std::size_t tc = 0; tc < grid.theta_combos(); ++tc)
    theta_sum += grid.theta_weight(tc);
  double psi_measure = 1.0;
  for (int j = 0; j < grid.modes; ++j) psi_measure *= grid.psi_max;
  const double total = theta_sum * psi_measure;
  const double exact = std::pow(2.0 * kPi, 2) * 0.5;
  CHECK(total == doctest::Approx(exact).epsilon(0.01));
}

TEST_CASE("projected quadrature: linearity and phase covariance") {
  LOConfiguration config{{0.6, 1.2}, {0.3, 1.9, 4.4}};
  std::vector<std::complex<double>> a{{0.5, -0.2}, {1.1, 0.4}, {-0.3, 0.8}};
  std::vector<std::complex<double>> b{{-1.0, 0.1}, {0.2, -0.6}, {0.4, 0.9}};
  const double xa = projected_quadrature(a, config);
  const double xb = projected_quadrature(b, config);
  std::vector<std::complex<double>> lin(3);
  for (int j = 0; j < 3; ++j) lin[j] = 2.0 * a[j] - 0.7 * b[j];
  CHECK(projected_quadrature(lin, config) ==
        doctest::Approx(2.0 * xa - 0.7 * xb).epsilon(1e-12));

  // psi_j -> psi_j + phi together with alpha_j -> alpha_j e^{i phi}
  const double phi = 0.77;
  LOConfiguration shifted = config;
  for (auto& p : shifted.psi) p += phi;
  std::vector<std::complex<double>> rotated(3);
  for (int j = 0; j < 3; ++j) rotated[j] = a[j] * std::polar(1.0, phi);
  CHECK(projected_quadrature(rotated, shifted) == doctest::Approx(xa).epsilon(1e-12));
}

TEST_CASE("grid layout and decoding") {
  const auto grid = build_grid(3, 10, 10, WeightKind::quasidistribution);
  CHECK(grid.size() == 100 * 1000);
  CHECK(grid.theta_max == doctest::Approx(kPi / 2));
  CHECK(grid.psi_max == doctest::Approx(2 * kPi));
  CHECK(grid.theta_values.front() == doctest::Approx(kPi / 20));
  CHECK(grid.theta_values.back() == doctest::Approx(kPi / 2));
  CHECK(grid.psi_values.front() == doctest::Approx(2 * kPi / 10));

  // theta_1 is the slowest digit: index = ((t1*10 + t2)*1000) + psi_combo
  const std::size_t index = ((3 * 10 + 7) * 1000) + (4 * 100 + 2 * 10 + 9);
  const auto config = grid.config_at(index);
  CHECK(config.theta[0] == doctest::Approx(grid.theta_values[3]));
  CHECK(config.theta[1] == doctest::Approx(grid.theta_values[7]));
  CHECK(config.psi[0] == doctest::Approx(grid.psi_values[4]));
  CHECK(config.psi[1] == doctest::Approx(grid.psi_values[2]));
  CHECK(config.psi[2] == doctest::Approx(grid.psi_values[9]));

  // quasidistribution weight carries the Jacobian; moment weight does not
  const double w = grid.weight_at(index);
  const double steps = std::pow(grid.theta_step(), 2) * std::pow(grid.psi_step(), 3);
  CHECK(w == doctest::Approx(jacobian_weight(config.theta, 3) * steps));

  const auto mgrid = build_grid(2, 8, 8, WeightKind::moment);
  CHECK(mgrid.theta_max == doctest::Approx(kPi));
  CHECK(mgrid.psi_max == doctest::Approx(kPi));
  CHECK(mgrid.weight_at(5) ==
        doctest::Approx(mgrid.theta_step() * std::pow(mgrid.psi_step(), 2)));
}

TEST_CASE("grid construction rejects bad inputs") {
  CHECK_THROWS_AS(build_grid(0, 5, 5, WeightKind::moment), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(2, 0, 5, WeightKind::moment), std::invalid_argument);
  CHECK_THROWS_AS(direction_cosines({0.2}, 3), std::invalid_argument);
}
