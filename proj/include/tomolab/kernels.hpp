#pragma once

#include <complex>
#include <vector>

#include "tomolab/geometry.hpp"

namespace tomolab {

// Ordering parameter + detection efficiency for one reconstruction task.
struct KernelSpec {
  int modes = 1;
  double s = -1.0;
  double eta = 1.0;

  // Losses shift the reachable ordering: s_eff = s + (1-eta)/eta.
  double s_eff() const { return s + (1.0 - eta) / eta; }
};

// Multi-index of one moment / density-matrix element <a^dag^m a^n>.
struct MomentIndex {
  std::vector<int> m;
  std::vector<int> n;

  int modes() const { return static_cast<int>(m.size()); }
  int mu(int j) const { return m[j] > n[j] ? m[j] : n[j]; }
  int nu(int j) const { return m[j] < n[j] ? m[j] : n[j]; }
  // M = sum_j (m_j + n_j)
  int total() const { return tail_total(0); }
  // M_l = sum_{p >= l} (m_p + n_p), 0-based l
  int tail_total(int l) const {
    int t = 0;
    for (int p = l; p < modes(); ++p) t += m[p] + n[p];
    return t;
  }
};

// Quasidistribution kernel S_N(xi; s_eff) =
//   2^{N-1}(N-1)! / (pi^{2N} |s_eff|^N) * Phi(N, 1/2; -xi^2/|s_eff|).
// Throws bound_error when s_eff >= 0 (the ordering is unreachable at this
// efficiency). xi is the detected-quadrature offset X/sqrt(eta) - Xtilde.
double s_kernel(double xi, const KernelSpec& spec);

// Brute-force radial integral (1/pi^{2N}) int_0^inf e^{s_eff r^2/2}
// cos(sqrt(2) r xi) r^{2N-1} dr; test oracle for s_kernel.
double s_kernel_integral_oracle(double xi, const KernelSpec& spec);

// Cached column Xi_N(y, p), p = 0..p_max, at y = X/sqrt(2 eta - 1):
//   Xi_N(y, 2k)   = (-1)^k (N+k-1)! Phi(N+k,   1/2; -y^2)
//   Xi_N(y, 2k+1) = 2y (-1)^k (N+k)! Phi(N+k+1, 3/2; -y^2)
// Built once per measurement record and shared across all indices.
struct XiTable {
  int modes = 1;
  double y = 0.0;
  std::vector<double> values;  // values[p] = Xi_N(y, p)
};
XiTable make_xi_table(int modes, double X, double eta, int p_max);

// X-independent part of a pattern function at fixed index and direction
// cosines: F_mn(X) = prefactor * sum_t coeff[t] * Xi_N(y, p_base + 2t).
struct PatternPoly {
  double prefactor = 0.0;
  int p_base = 0;
  std::vector<double> coeff;

  int p_max() const { return p_base + 2 * (static_cast<int>(coeff.size()) - 1); }
};
PatternPoly pattern_poly(const MomentIndex& idx, const std::vector<double>& u, double eta);
double pattern_eval(const PatternPoly& poly, const XiTable& table);

// Real pattern function F_mn(X, theta; eta) whose average over detected
// quadratures gives rho_mn (up to the psi phase factor prod_j
// e^{i(m_j-n_j)psi_j}). Requires eta > 1/2.
double pattern_function(const MomentIndex& idx, double X,
                        const std::vector<double>& theta, const KernelSpec& spec);

// Laguerre radial-integral form; its real part equals pattern_function,
// the imaginary part is a null function. Test oracle.
std::complex<double> pattern_integral_oracle(const MomentIndex& idx, double X,
                                             const std::vector<double>& theta,
                                             double eta);

// G_k^l(theta) = C(l,k) cos^k(theta) sin^{l-k}(theta).
double g_poly(int k, int l, double theta);

// Closed-form biorthogonal partner F_m^l(theta) with
// int_0^pi G_k^l F_m^l dtheta = delta_mk. The sign convention is fixed
// against the linear-system solve below.
double f_biorthogonal_closed(int m, int l, double theta);

// F_m^l tabulated on the equidistant grid theta^(n) = n pi / n_theta,
// n = 1..n_theta, built by solving the discretized biorthogonality system
// in the span of e^{i(l-2k)theta}. Requires l < n_theta (aliasing bound).
struct BiorthTable {
  int l = 0;
  std::vector<double> theta;               // grid points
  std::vector<std::vector<double>> values;  // values[m][grid point], m = 0..l
};
BiorthTable f_biorthogonal_solve(int l, int n_theta);

// K(m,n) = 1 / (pi C(m+n, n)), evaluated in log space for large orders.
double k_norm(int m, int n);

// Moment kernel D_mn(X, theta, psi; s, eta) =
//   hermite_scaled(M, X', s') * prod_l F_{m_l+n_l}^{M_l}(theta_l)
//   * prod_j K(m_j, n_j) e^{i(n_j - m_j) psi_j}
// with the loss rule (X', s') = (X/sqrt(eta), s + (1-eta)/eta); for s = 1
// this reduces to the eta^{-M/2} post-scaling, which is the route taken.
std::complex<double> moment_kernel(const MomentIndex& idx, double X,
                                   const LOConfiguration& config, double s,
                                   double eta);

}  // namespace tomolab
