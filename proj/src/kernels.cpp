#include "tomolab/kernels.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tomolab/errors.hpp"
#include "tomolab/special_fns.hpp"

namespace tomolab {

namespace {

constexpr double kPi = std::numbers::pi;

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGlWeight[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

template <typename F>
auto gl_panels(F&& f, double lo, double hi, double panel)
    -> decltype(f(0.0)) {
  const int count = static_cast<int>(std::ceil((hi - lo) / panel));
  const double h = (hi - lo) / count;
  decltype(f(0.0)) total{};
  for (int p = 0; p < count; ++p) {
    const double a = lo + p * h, mid = a + 0.5 * h;
    decltype(f(0.0)) acc{};
    for (int i = 0; i < 16; ++i)
      acc += kGlWeight[i] * f(mid + 0.5 * h * kGlNode[i]);
    total += 0.5 * h * acc;
  }
  return total;
}

void require_negative_ordering(const KernelSpec& spec) {
  const double se = spec.s_eff();
  if (se >= 0.0)
    throw bound_error(
        "ordering bound violated: s + (1-eta)/eta = " + std::to_string(se) +
        " must be < 0 (s=" + std::to_string(spec.s) +
        ", eta=" + std::to_string(spec.eta) + ")");
}

void require_half_efficiency(double eta) {
  if (!(eta > 0.5 && eta <= 1.0))
    throw bound_error("efficiency bound violated: eta must exceed 1/2, got eta=" +
                      std::to_string(eta));
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

double s_kernel(double xi, const KernelSpec& spec) {
  require_negative_ordering(spec);
  const int n = spec.modes;
  const double mag = -spec.s_eff();
  double pref = factorial(n - 1) / std::pow(kPi, 2 * n);
  pref *= std::pow(2.0, n - 1) / std::pow(mag, n);
  return pref * sf::kummer_half(n, xi / std::sqrt(mag));
}

double s_kernel_integral_oracle(double xi, const KernelSpec& spec) {
  require_negative_ordering(spec);
  const int n = spec.modes;
  const double mag = -spec.s_eff();
  const double omega = std::sqrt(2.0) * std::abs(xi);
  // e^{-mag r^2/2} r^{2N-1}: negligible past the Gaussian tail
  const double r_max = std::sqrt(2.0 * 45.0 / mag) + 4.0 * n;
  const double panel = std::min(0.5, 2.5 / std::max(1.0, omega));
  auto f = [&](double r) {
    return std::exp(-0.5 * mag * r * r) * std::cos(std::sqrt(2.0) * r * xi) *
           std::pow(r, 2 * n - 1);
  };
  return gl_panels(f, 0.0, r_max, panel) / std::pow(kPi, 2 * n);
}

XiTable make_xi_table(int modes, double X, double eta, int p_max) {
  require_half_efficiency(eta);
  XiTable table;
  table.modes = modes;
  table.y = X / std::sqrt(2.0 * eta - 1.0);
  table.values.resize(p_max + 1);
  for (int p = 0; p <= p_max; ++p) {
    const int k = p / 2;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    if (p % 2 == 0)
      table.values[p] =
          sign * factorial(modes + k - 1) * sf::kummer_half(modes + k, table.y);
    else
      table.values[p] = sign * 2.0 * table.y * factorial(modes + k) *
                        sf::kummer_three_half(modes + k + 1, table.y);
  }
  return table;
}

PatternPoly pattern_poly(const MomentIndex& idx, const std::vector<double>& u,
                         double eta) {
  require_half_efficiency(eta);
  const int n = idx.modes();
  if (static_cast<int>(u.size()) != n)
    throw std::invalid_argument("pattern_poly: direction vector length mismatch");

  const double c2 = 2.0 * eta / (2.0 * eta - 1.0);  // [sqrt(c2) u_j]^{mu-nu}
  PatternPoly poly;
  poly.prefactor = std::pow(2.0, n - 1) / std::pow(kPi, n) *
                   std::pow(eta / (2.0 * eta - 1.0), n);
  poly.p_base = 0;
  poly.coeff = {1.0};
  for (int j = 0; j < n; ++j) {
    const int mu = idx.mu(j), nu = idx.nu(j);
    poly.p_base += mu - nu;
    poly.prefactor *= std::sqrt(factorial(nu) / factorial(mu)) *
                      std::pow(std::sqrt(c2) * u[j], mu - nu);
    // per-mode series sum_k (1/k!) C(mu, nu-k) (c2 u^2)^k, k = 0..nu
    std::vector<double> mode_coeff(nu + 1);
    const double w = c2 * u[j] * u[j];
    double wk = 1.0;
    for (int k = 0; k <= nu; ++k) {
      mode_coeff[k] =
          wk / factorial(k) * static_cast<double>(sf::binomial(mu, nu - k));
      wk *= w;
    }
    std::vector<double> merged(poly.coeff.size() + nu, 0.0);
    for (std::size_t a = 0; a < poly.coeff.size(); ++a)
      for (int k = 0; k <= nu; ++k) merged[a + k] += poly.coeff[a] * mode_coeff[k];
    poly.coeff = std::move(merged);
  }
  return poly;
}

double pattern_eval(const PatternPoly& poly, const XiTable& table) {
  if (poly.p_max() >= static_cast<int>(table.values.size()))
    throw std::invalid_argument("pattern_eval: XiTable too short for this index");
  double sum = 0.0;
  for (std::size_t t = 0; t < poly.coeff.size(); ++t)
    sum += poly.coeff[t] * table.values[poly.p_base + 2 * t];
  return poly.prefactor * sum;
}

double pattern_function(const MomentIndex& idx, double X,
                        const std::vector<double>& theta, const KernelSpec& spec) {
  if (idx.modes() != spec.modes)
    throw std::invalid_argument("pattern_function: index/spec mode mismatch");
  auto u = direction_cosines(theta, spec.modes);
  auto poly = pattern_poly(idx, u, spec.eta);
  auto table = make_xi_table(spec.modes, X, spec.eta, std::max(poly.p_max(), 0));
  return pattern_eval(poly, table);
}

std::complex<double> pattern_integral_oracle(const MomentIndex& idx, double X,
                                             const std::vector<double>& theta,
                                             double eta) {
  require_half_efficiency(eta);
  const int n = idx.modes();
  auto u = direction_cosines(theta, n);

  std::complex<double> pref = 1.0 / std::pow(kPi, n);
  int total_diff = 0;
  for (int j = 0; j < n; ++j) {
    const int d = idx.mu(j) - idx.nu(j);
    pref *= std::sqrt(factorial(idx.nu(j)) / factorial(idx.mu(j))) *
            std::pow(std::complex<double>(0.0, -1.0) * u[j], d);
    total_diff += d;
  }

  const double decay = (2.0 * eta - 1.0) / (2.0 * eta);
  const double omega = std::sqrt(2.0 / eta) * std::abs(X);
  const double r_max = std::sqrt(45.0 / decay) + 4.0 * n + total_diff;
  const double panel = std::min(0.4, 2.5 / std::max(1.0, omega));
  auto f = [&](double r) -> std::complex<double> {
    double radial = std::exp(-decay * r * r) * std::pow(r, 2 * n - 1);
    for (int j = 0; j < n; ++j) {
      const int d = idx.mu(j) - idx.nu(j);
      radial *= std::pow(r, d) * sf::laguerre(idx.nu(j), d, r * r * u[j] * u[j]);
    }
    return radial * std::polar(1.0, std::sqrt(2.0 / eta) * r * X);
  };
  return pref * gl_panels(f, 0.0, r_max, panel);
}

double g_poly(int k, int l, double theta) {
  if (k < 0 || k > l) throw std::out_of_range("g_poly: require 0 <= k <= l");
  return static_cast<double>(sf::binomial(l, k)) *
         std::pow(std::cos(theta), k) * std::pow(std::sin(theta), l - k);
}

double f_biorthogonal_closed(int m, int l, double theta) {
  if (m < 0 || m > l)
    throw std::out_of_range("f_biorthogonal_closed: require 0 <= m <= l");
  // F_m^l = sum_k e^{i(l-2k)theta} E_mk, E_mk = ((-i)^{l-m}/pi) C(l,k)^{-1}
  //         sum_j C(m,j) C(l-m,k-j) (-1)^{k-j}; the (-i) power carries the
  // sign convention fixed by the biorthogonality solve.
  const std::complex<double> phase =
      std::pow(std::complex<double>(0.0, -1.0), l - m) / kPi;
  std::complex<double> total = 0.0;
  for (int k = 0; k <= l; ++k) {
    double inner = 0.0;
    for (int j = 0; j <= m; ++j) {
      const double term = static_cast<double>(sf::binomial(m, j)) *
                          static_cast<double>(sf::binomial(l - m, k - j));
      inner += ((k - j) % 2 == 0 ? term : -term);
    }
    total += std::polar(1.0, (l - 2 * k) * theta) * phase * inner /
             static_cast<double>(sf::binomial(l, k));
  }
  return total.real();
}

BiorthTable f_biorthogonal_solve(int l, int n_theta) {
  if (l < 0) throw std::out_of_range("f_biorthogonal_solve: l must be >= 0");
  if (l >= n_theta)
    throw bound_error("aliasing bound violated: order l = " + std::to_string(l) +
                      " requires l < N_theta = " + std::to_string(n_theta));

  BiorthTable table;
  table.l = l;
  table.theta.resize(n_theta);
  for (int i = 0; i < n_theta; ++i) table.theta[i] = kPi * (i + 1) / n_theta;

  // Ansatz F_m(theta) = sum_k c_{m,k} e^{i(l-2k)theta}; impose
  // sum_n F_m(theta_n) G_k(theta_n) (pi/N_theta) = delta_mk.
  const double w = kPi / n_theta;
  Eigen::MatrixXcd a(l + 1, l + 1);
  for (int k = 0; k <= l; ++k)
    for (int kp = 0; kp <= l; ++kp) {
      std::complex<double> acc = 0.0;
      for (int i = 0; i < n_theta; ++i)
        acc += g_poly(k, l, table.theta[i]) *
               std::polar(1.0, (l - 2 * kp) * table.theta[i]);
      a(k, kp) = w * acc;
    }
  Eigen::MatrixXcd coeff =
      a.fullPivLu().solve(Eigen::MatrixXcd::Identity(l + 1, l + 1));

  table.values.assign(l + 1, std::vector<double>(n_theta));
  for (int m = 0; m <= l; ++m)
    for (int i = 0; i < n_theta; ++i) {
      std::complex<double> val = 0.0;
      for (int kp = 0; kp <= l; ++kp)
        val += coeff(kp, m) * std::polar(1.0, (l - 2 * kp) * table.theta[i]);
      table.values[m][i] = val.real();
    }
  return table;
}

double k_norm(int m, int n) {
  if (m < 0 || n < 0) throw std::out_of_range("k_norm: orders must be >= 0");
  return std::exp(std::lgamma(m + 1.0) + std::lgamma(n + 1.0) -
                  std::lgamma(m + n + 1.0)) /
         kPi;
}

std::complex<double> moment_kernel(const MomentIndex& idx, double X,
                                   const LOConfiguration& config, double s,
                                   double eta) {
  const int n = idx.modes();
  if (config.modes() != n)
    throw std::invalid_argument("moment_kernel: index/config mode mismatch");
  if (!(eta > 0.0 && eta <= 1.0))
    throw bound_error("detection efficiency must satisfy 0 < eta <= 1, got eta=" +
                      std::to_string(eta));

  const int order = idx.total();
  double x_arg = X, s_arg = s, comp = 1.0;
  if (eta < 1.0) {
    if (s == 1.0) {
      comp = std::pow(eta, -0.5 * order);  // identical to the rescaled route
    } else {
      x_arg = X / std::sqrt(eta);
      s_arg = s + (1.0 - eta) / eta;
    }
  }

  double value = comp * sf::hermite_scaled(order, x_arg, s_arg);
  for (int l = 0; l + 1 < n; ++l)
    value *= f_biorthogonal_closed(idx.m[l] + idx.n[l], idx.tail_total(l),
                                   config.theta[l]);

  std::complex<double> phase = 1.0;
  for (int j = 0; j < n; ++j) {
    value *= k_norm(idx.m[j], idx.n[j]);
    phase *= std::polar(1.0, (idx.n[j] - idx.m[j]) * config.psi[j]);
  }
  return value * phase;
}

}  // namespace tomolab
