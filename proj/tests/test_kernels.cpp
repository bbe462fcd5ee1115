#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tomolab/errors.hpp"
#include "tomolab/kernels.hpp"
#include "tomolab/special_fns.hpp"

using namespace tomolab;
namespace {
constexpr double kPi = std::numbers::pi;

double hermite_poly(int n, double x) {  // physicists' H_n
  return std::pow(2.0, 0.5 * n) * sf::hermite_scaled(n, x, 1.0);
}
}

TEST_CASE("quasidistribution kernel: closed form") {
  CHECK(s_kernel(0.0, {1, -1.0, 1.0}) == doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-13));
  CHECK(s_kernel(0.0, {2, -1.0, 1.0}) ==
        doctest::Approx(2.0 / std::pow(kPi, 4)).epsilon(1e-13));
  // frozen high-precision reference, xi = 1.3, N = 3, s = -1, eta = 0.8
  CHECK(s_kernel(1.3, {3, -1.0, 0.8}) ==
        doctest::Approx(0.00070232989830052203).epsilon(1e-10));
  CHECK_THROWS_AS((void)s_kernel(0.5, {1, -0.2, 0.8}), bound_error);
  CHECK_THROWS_AS((void)s_kernel(0.5, {1, 0.5, 1.0}), bound_error);
}

TEST_CASE("quasidistribution kernel equals the radial-integral oracle") {
  CHECK(s_kernel_integral_oracle(0.0, {1, -1.0, 1.0}) ==
        doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-9));
  CHECK(s_kernel_integral_oracle(0.0, {1, -1.0, 0.8}) ==
        doctest::Approx(0.13509491152311703).epsilon(1e-9));
  for (int n = 1; n <= 4; ++n)
    for (double se : {-2.0, -1.0, -0.5, -0.1})
      for (double xi = -6.0; xi <= 6.0; xi += 0.75) {
        CAPTURE(n);
        CAPTURE(se);
        CAPTURE(xi);
        const KernelSpec spec{n, se, 1.0};
        CHECK(std::abs(s_kernel(xi, spec) - s_kernel_integral_oracle(xi, spec)) <
              1e-7);
      }
}

TEST_CASE("kernel decay") {
  for (int n = 1; n <= 3; ++n)
    for (double se : {-1.0, -0.4}) {
      const KernelSpec spec{n, se, 1.0};
      const double far = 40.0 * std::sqrt(-se);
      CHECK(std::abs(s_kernel(far, spec)) < 1e-3 * s_kernel(0.0, spec));
    }
}

TEST_CASE("pattern function: closed form") {
  CHECK(pattern_function({{0}, {0}}, 0.0, {}, {1, -1.0, 1.0}) ==
        doctest::Approx(1.0 / kPi).epsilon(1e-13));
  // frozen reference from the Laguerre radial integral:
  // N=2, m=(1,0), n=(0,1), X=0.7, theta=0.9, eta=0.9
  CHECK(pattern_function({{1, 0}, {0, 1}}, 0.7, {0.9}, {2, -1.0, 0.9}) ==
        doctest::Approx(0.35446586534072884).epsilon(1e-8));
  CHECK_THROWS_AS(
      (void)pattern_function({{0}, {0}}, 0.0, {}, {1, -1.0, 0.5}), bound_error);
  CHECK_THROWS_AS(
      (void)pattern_function({{0}, {0}}, 0.0, {}, {1, -1.0, 0.4}), bound_error);
}

TEST_CASE("pattern function equals the integral oracle's real part") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> xdist(-2.5, 2.5);
  std::uniform_real_distribution<double> tdist(0.2, kPi / 2 - 0.2);
  for (int n = 1; n <= 3; ++n)
    for (double eta : {1.0, 0.9, 0.7})
      for (int m1 = 0; m1 <= 2; ++m1)
        for (int n1 = 0; n1 <= 2; ++n1) {
          MomentIndex idx;
          idx.m.assign(n, 0);
          idx.n.assign(n, 0);
          idx.m[0] = m1;
          idx.n[0] = n1;
          if (n > 1) {
            idx.m[n - 1] = n1;  // exercise a second nontrivial mode
            idx.n[n - 1] = 1;
          }
          std::vector<double> theta(n - 1);
          for (auto& t : theta) t = tdist(rng);
          const double x = xdist(rng);
          CAPTURE(n);
          CAPTURE(eta);
          CAPTURE(m1);
          CAPTURE(n1);
          const double closed =
              pattern_function(idx, x, theta, {n, -1.0, eta});
          const auto oracle = pattern_integral_oracle(idx, x, theta, eta);
          CHECK(std::abs(closed - oracle.real()) < 1e-6);
        }
}

TEST_CASE("pattern functions vanish at large |X|") {
  // algebraic (not Gaussian) tails: expect ~X^-2 falloff
  CHECK(std::abs(pattern_function({{2}, {2}}, 50.0, {}, {1, -1.0, 0.8})) < 1e-3);
  CHECK(std::abs(pattern_function({{1, 1}, {0, 2}}, 50.0, {0.8},
                                  {2, -1.0, 0.9})) < 1e-3);
}

TEST_CASE("vacuum normalization through the pattern function") {
  // <rho_00> over the vacuum quadrature law times the 2pi phase volume = 1
  const KernelSpec spec{1, -1.0, 1.0};
  double total = 0.0;
  const double step = 0.01;
  for (double x = -8.0; x <= 8.0; x += step)
    total += pattern_function({{0}, {0}}, x, {}, spec) *
             std::exp(-x * x) / std::sqrt(kPi) * step;
  CHECK(total * 2.0 * kPi == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("angular polynomials G and the Hermite summation rule") {
  CHECK(g_poly(0, 1, 0.8) == doctest::Approx(std::sin(0.8)));
  CHECK(g_poly(1, 2, kPi / 4) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)g_poly(3, 2, 0.1), std::out_of_range);

  const double x1 = 0.7, x2 = -1.2, t = 1.0;
  double rhs = 0.0;
  for (int k = 0; k <= 2; ++k)
    rhs += g_poly(k, 2, t) * hermite_poly(k, x1) * hermite_poly(2 - k, x2);
  CHECK(hermite_poly(2, x1 * std::cos(t) + x2 * std::sin(t)) ==
        doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("multimode Hermite expansion (N = 3, M = 3)") {
  const double t1 = 0.9, t2 = 0.5;
  const auto u = direction_cosines({t1, t2}, 3);
  const double x1 = 0.3, x2 = -0.8, x3 = 1.4;
  const double lhs = hermite_poly(3, x1 * u[0] + x2 * u[1] + x3 * u[2]);
  double rhs = 0.0;
  for (int k1 = 0; k1 <= 3; ++k1)
    for (int k2 = 0; k2 <= 3 - k1; ++k2)
      rhs += g_poly(k1, 3, t1) * hermite_poly(k1, x1) *
             g_poly(k2, 3 - k1, t2) * hermite_poly(k2, x2) *
             hermite_poly(3 - k1 - k2, x3);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("biorthogonal partners: closed form vs linear solve") {
  for (double t : {0.3, 1.0, 2.5}) {
    CHECK(f_biorthogonal_closed(0, 1, t) == doctest::Approx(2.0 / kPi * std::sin(t)));
    CHECK(f_biorthogonal_closed(1, 1, t) == doctest::Approx(2.0 / kPi * std::cos(t)));
  }
  for (int l = 0; l <= 6; ++l) {
    const auto table = f_biorthogonal_solve(l, 24);
    for (int m = 0; m <= l; ++m)
      for (std::size_t i = 0; i < table.theta.size(); ++i) {
        CAPTURE(l);
        CAPTURE(m);
        CAPTURE(i);
        CHECK(std::abs(f_biorthogonal_closed(m, l, table.theta[i]) -
                       table.values[m][i]) < 1e-9);
      }
  }
}

TEST_CASE("discretized biorthogonality holds exactly for l < N_theta") {
  const int n_theta = 10;
  for (int l = 0; l < n_theta; ++l) {
    const auto table = f_biorthogonal_solve(l, n_theta);
    for (int m = 0; m <= l; ++m)
      for (int k = 0; k <= l; ++k) {
        double sum = 0.0;
        for (int i = 0; i < n_theta; ++i)
          sum += table.values[m][i] * g_poly(k, l, table.theta[i]) *
                 (kPi / n_theta);
        CHECK(std::abs(sum - (m == k ? 1.0 : 0.0)) < 1e-10);
      }
  }
  CHECK_THROWS_AS((void)f_biorthogonal_solve(10, 10), bound_error);
}

TEST_CASE("continuum biorthogonality of the closed form") {
  const int steps = 20000;
  const double h = kPi / steps;
  for (int l = 0; l <= 6; ++l)
    for (int m = 0; m <= l; ++m)
      for (int k = 0; k <= l; ++k) {
        double sum = 0.0;
        for (int i = 0; i < steps; ++i) {
          const double t = (i + 0.5) * h;
          sum += f_biorthogonal_closed(m, l, t) * g_poly(k, l, t) * h;
        }
        CAPTURE(l);
        CAPTURE(m);
        CAPTURE(k);
        CHECK(std::abs(sum - (m == k ? 1.0 : 0.0)) < 1e-8);
      }
}

TEST_CASE("moment kernel") {
  LOConfiguration c1{{}, {1.1}};
  CHECK(moment_kernel({{0}, {0}}, 0.37, c1, 1.0, 1.0).real() ==
        doctest::Approx(1.0 / kPi));
  for (double x : {0.0, 0.8, -1.6}) {
    CHECK(moment_kernel({{1}, {1}}, x, c1, 1.0, 1.0).real() ==
          doctest::Approx((2 * x * x - 1) / (2 * kPi)).epsilon(1e-12));
    // both loss-compensation routes agree for s = 1, M = 2
    const double eta = 0.8;
    const auto post = moment_kernel({{1}, {1}}, x, c1, 1.0, eta);
    const double rescaled =
        sf::hermite_scaled(2, x / std::sqrt(eta), 1.0 + (1 - eta) / eta) *
        k_norm(1, 1);
    CHECK(post.real() == doctest::Approx(rescaled).epsilon(1e-12));
    CHECK(post.real() ==
          doctest::Approx((2 * x * x - 1) / (2 * kPi) / eta).epsilon(1e-12));
  }

  // psi enters only through the phase prod e^{i(n_j - m_j) psi_j}
  LOConfiguration c2{{0.7, 1.1}, {0.4, 1.5, 2.2}};
  LOConfiguration c2s = c2;
  const double shift = 0.9;
  for (auto& p : c2s.psi) p += shift;
  const MomentIndex idx{{1, 0, 2}, {0, 1, 1}};
  const auto base = moment_kernel(idx, 0.6, c2, 1.0, 1.0);
  const auto moved = moment_kernel(idx, 0.6, c2s, 1.0, 1.0);
  int net = 0;
  for (int j = 0; j < 3; ++j) net += idx.n[j] - idx.m[j];
  CHECK(std::abs(moved - base * std::polar(1.0, net * shift)) < 1e-12);
}

TEST_CASE("K normalization in log space") {
  CHECK(k_norm(0, 0) == doctest::Approx(1.0 / kPi));
  CHECK(k_norm(1, 1) == doctest::Approx(1.0 / (2 * kPi)));
  CHECK(k_norm(30, 30) * kPi * static_cast<double>(sf::binomial(60, 30)) ==
        doctest::Approx(1.0).epsilon(1e-10));
}
