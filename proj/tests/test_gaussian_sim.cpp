#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "tomolab/gaussian_sim.hpp"

using namespace tomolab;
namespace {
constexpr double kPi = std::numbers::pi;
const std::vector<int> kZero3{0, 0, 0};
}

TEST_CASE("vacuum and squeezing") {
  const auto vac = vacuum(1);
  CHECK(vac.mean.norm() == 0.0);
  CHECK(vac.covariance(0, 0) == doctest::Approx(0.5));
  CHECK(vac.covariance(1, 1) == doctest::Approx(0.5));
  CHECK(is_physical(vac));
  CHECK(is_physical(vacuum(3)));

  const auto sq = squeeze(vac, 0, 1.0);
  CHECK(sq.covariance(0, 0) == doctest::Approx(3.6945280494653251));  // e^2/2
  CHECK(sq.covariance(1, 1) == doctest::Approx(0.067667641618306346));
  CHECK(is_physical(sq));

  const auto undone = squeeze(sq, 0, -1.0);
  CHECK(undone.covariance.isApprox(vac.covariance, 1e-12));
  CHECK(squeeze(vac, 0, 0.0).covariance.isApprox(vac.covariance, 1e-14));
  CHECK_THROWS_AS(squeeze(vac, 2, 1.0), std::out_of_range);
}

TEST_CASE("passive optics preserve the vacuum") {
  auto state = vacuum(3);
  state = beam_splitter(state, 0, 1, 0.7);
  state = phase_shift(state, 2, 1.3);
  state = beam_splitter(state, 1, 2, kPi / 4);
  CHECK(state.covariance.isApprox(0.5 * Eigen::MatrixXd::Identity(6, 6), 1e-12));
  CHECK(state.mean.norm() == doctest::Approx(0.0));

  const auto same = beam_splitter(vacuum(2), 0, 1, 0.0);
  CHECK(same.covariance.isApprox(vacuum(2).covariance, 1e-14));
  CHECK_THROWS_AS(beam_splitter(vacuum(2), 0, 0, 0.3), std::invalid_argument);
}

TEST_CASE("symplectic form is preserved by the network ops") {
  // S Omega S^T = Omega, probed through a squeezed input: physicality and
  // purity (det C = 4^-N) survive any passive network
  auto state = squeeze(vacuum(2), 0, 0.8);
  state = beam_splitter(state, 0, 1, 0.6);
  state = phase_shift(state, 1, 2.1);
  CHECK(is_physical(state, 1e-10));
  CHECK(state.covariance.determinant() == doctest::Approx(std::pow(0.25, 2)).epsilon(1e-10));
}

TEST_CASE("three-mode demo state") {
  const auto demo = three_mode_demo_state(1.0);
  CHECK(is_physical(demo));
  const double nbar = std::sinh(1.0) * std::sinh(1.0) / 3.0;
  for (int j = 0; j < 3; ++j) {
    std::vector<int> e(3, 0);
    e[j] = 1;
    CHECK(analytic_moment(demo, e, e, 1.0).real() ==
          doctest::Approx(nbar).epsilon(1e-12));
  }
  CHECK(analytic_moment(demo, kZero3, {2, 0, 0}, 1.0).real() ==
        doctest::Approx(std::sinh(1.0) * std::cosh(1.0) / 3.0).epsilon(1e-12));
  const auto trivial = three_mode_demo_state(0.0);
  CHECK(trivial.covariance.isApprox(vacuum(3).covariance, 1e-12));
}

TEST_CASE("quadrature statistics") {
  LOConfiguration any{{0.4, 1.2}, {0.5, 2.0, 3.5}};
  const auto [m0, v0] = quadrature_stats(vacuum(3), any);
  CHECK(m0 == 0.0);
  CHECK(v0 == doctest::Approx(0.5).epsilon(1e-12));

  // u = (1,1,1)/sqrt(3): theta = (acos(1/sqrt3), pi/4)
  const auto demo = three_mode_demo_state(1.0);
  LOConfiguration anti{{std::acos(1.0 / std::sqrt(3.0)), kPi / 4}, {0.0, 0.0, 0.0}};
  CHECK(quadrature_stats(demo, anti).second ==
        doctest::Approx(3.6945280494653251).epsilon(1e-12));
  LOConfiguration sqz{anti.theta, {kPi / 2, kPi / 2, kPi / 2}};
  CHECK(quadrature_stats(demo, sqz).second ==
        doctest::Approx(0.067667641618306346).epsilon(1e-12));
}

TEST_CASE("sampling statistics and the loss model") {
  LOConfiguration config{{}, {0.9}};
  RngStream rng(5, 0);
  const int draws = 100000;

  // vacuum at unit efficiency: mean 0, variance 1/2
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = sample_quadrature(vacuum(1), config, 1.0, rng);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / draws;
  const double var = sum2 / draws - mean * mean;
  CHECK(std::abs(mean) < 5.0 * std::sqrt(0.5 / draws));
  CHECK(std::abs(var - 0.5) < 5.0 * std::sqrt(2.0 * 0.25 / draws));

  // random states/configs: Var(X') = eta Var(X) + (1-eta)/2
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double r = uni(gen), eta = uni(gen);
    auto state = squeeze(vacuum(1), 0, r);
    LOConfiguration c{{}, {uni(gen) * 2 * kPi}};
    const double exact_var =
        eta * quadrature_stats(state, c).second + (1.0 - eta) / 2.0;
    RngStream stream(17, trial);
    double s2 = 0.0, s1 = 0.0;
    for (int i = 0; i < draws; ++i) {
      const double x = sample_quadrature(state, c, eta, stream);
      s1 += x;
      s2 += x * x;
    }
    const double v = s2 / draws - (s1 / draws) * (s1 / draws);
    // Var of the sample variance of a Gaussian: 2 sigma^4 / n
    CHECK(std::abs(v - exact_var) <
          5.0 * std::sqrt(2.0 * exact_var * exact_var / draws));
  }
}

TEST_CASE("dataset simulation is deterministic and complete") {
  const auto grid = build_grid(2, 3, 4, WeightKind::quasidistribution);
  const auto state = squeeze(vacuum(2), 0, 0.4);
  const auto a = simulate_dataset(state, grid, 7, 0.9, 123);
  const auto b = simulate_dataset(state, grid, 7, 0.9, 123);
  REQUIRE(a.records.size() == grid.size() * 7);
  CHECK(a.per_point_counts.size() == grid.size());
  bool identical = true;
  for (std::size_t i = 0; i < a.records.size(); ++i)
    identical = identical && a.records[i].grid_index == b.records[i].grid_index &&
                a.records[i].x == b.records[i].x;
  CHECK(identical);
  const auto c = simulate_dataset(state, grid, 7, 0.9, 124);
  CHECK(a.records[0].x != c.records[0].x);
}

TEST_CASE("analytic Q function") {
  CHECK(analytic_q(vacuum(1), {{0.0, 0.0}}) == doctest::Approx(1.0 / kPi).epsilon(1e-13));
  CHECK(analytic_q(vacuum(3), {{0, 0}, {0, 0}, {0, 0}}) ==
        doctest::Approx(1.0 / (kPi * kPi * kPi)).epsilon(1e-13));
  CHECK(analytic_q(three_mode_demo_state(1.0), {{0, 0}, {0, 0}, {0, 0}}) ==
        doctest::Approx(0.020900744721652885).epsilon(1e-12));

  // normalization for N = 1: integral over a truncated grid
  const auto state = squeeze(vacuum(1), 0, 0.5);
  double total = 0.0;
  const double step = 0.05, lim = 6.0;
  for (double x = -lim; x <= lim; x += step)
    for (double y = -lim; y <= lim; y += step)
      total += analytic_q(state, {{x, y}}) * step * step;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("analytic moments") {
  const auto vac = vacuum(1);
  CHECK(std::abs(analytic_moment(vac, {1}, {1}, 1.0)) == doctest::Approx(0.0));
  CHECK(std::abs(analytic_moment(vac, {2}, {2}, 1.0)) == doctest::Approx(0.0));
  // symmetric ordering of n for vacuum: <a^dag a>_0 = 1/2... (check s shift)
  CHECK(analytic_moment(vac, {1}, {1}, 0.0).real() == doctest::Approx(0.5));
  CHECK(analytic_moment(vac, {1}, {1}, -1.0).real() == doctest::Approx(1.0));

  for (double r : {0.2, 0.5, 0.9, 1.3, 2.0})
    CHECK(analytic_moment(squeeze(vacuum(1), 0, r), {1}, {1}, 1.0).real() ==
          doctest::Approx(std::sinh(r) * std::sinh(r)).epsilon(1e-12));

  const auto coh = displace(vacuum(1), 0, {1.0, 0.0});
  CHECK(analytic_moment(coh, {1}, {1}, 1.0).real() == doctest::Approx(1.0));

  CHECK(analytic_moment(three_mode_demo_state(1.0), {2, 0, 0}, {2, 0, 0}, 1.0)
            .real() == doctest::Approx(0.78926573582472789).epsilon(1e-12));
}
