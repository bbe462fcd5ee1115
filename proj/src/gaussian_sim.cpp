#include "tomolab/gaussian_sim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tomolab/errors.hpp"

namespace tomolab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = 1.4142135623730951;

void check_mode(const GaussianState& state, int mode) {
  if (mode < 0 || mode >= state.modes)
    throw std::out_of_range("mode index out of range");
}

// Apply the symplectic map v -> S v to mean and covariance.
GaussianState apply_symplectic(const GaussianState& state, const Eigen::MatrixXd& s) {
  GaussianState out = state;
  out.mean = s * state.mean;
  out.covariance = s * state.covariance * s.transpose();
  return out;
}

}  // namespace

GaussianState vacuum(int modes) {
  if (modes < 1) throw std::invalid_argument("mode count must be >= 1");
  GaussianState state;
  state.modes = modes;
  state.mean = Eigen::VectorXd::Zero(2 * modes);
  state.covariance = 0.5 * Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  return state;
}

GaussianState squeeze(const GaussianState& state, int mode, double r) {
  check_mode(state, mode);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * state.modes, 2 * state.modes);
  s(2 * mode, 2 * mode) = std::exp(r);
  s(2 * mode + 1, 2 * mode + 1) = std::exp(-r);
  return apply_symplectic(state, s);
}

GaussianState beam_splitter(const GaussianState& state, int i, int j, double mixing_angle) {
  check_mode(state, i);
  check_mode(state, j);
  if (i == j) throw std::invalid_argument("beam splitter needs two distinct modes");
  const double c = std::cos(mixing_angle), sn = std::sin(mixing_angle);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * state.modes, 2 * state.modes);
  for (int q = 0; q < 2; ++q) {  // same rotation on x and p blocks
    s(2 * i + q, 2 * i + q) = c;
    s(2 * i + q, 2 * j + q) = sn;
    s(2 * j + q, 2 * i + q) = -sn;
    s(2 * j + q, 2 * j + q) = c;
  }
  return apply_symplectic(state, s);
}

GaussianState phase_shift(const GaussianState& state, int mode, double phi) {
  check_mode(state, mode);
  // a -> a e^{-i phi}: (x, p) -> (x cos phi + p sin phi, -x sin phi + p cos phi)
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * state.modes, 2 * state.modes);
  s(2 * mode, 2 * mode) = std::cos(phi);
  s(2 * mode, 2 * mode + 1) = std::sin(phi);
  s(2 * mode + 1, 2 * mode) = -std::sin(phi);
  s(2 * mode + 1, 2 * mode + 1) = std::cos(phi);
  return apply_symplectic(state, s);
}

GaussianState displace(const GaussianState& state, int mode, std::complex<double> alpha) {
  check_mode(state, mode);
  GaussianState out = state;
  out.mean(2 * mode) += kSqrt2 * alpha.real();
  out.mean(2 * mode + 1) += kSqrt2 * alpha.imag();
  return out;
}

GaussianState passive_mix(const GaussianState& state, const Eigen::MatrixXd& ortho) {
  const int n = state.modes;
  if (ortho.rows() != n || ortho.cols() != n)
    throw std::invalid_argument("passive_mix: matrix must be N x N");
  if (!(ortho * ortho.transpose()).isApprox(Eigen::MatrixXd::Identity(n, n), 1e-10))
    throw std::invalid_argument("passive_mix: matrix must be orthogonal");
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int q = 0; q < 2; ++q) s(2 * a + q, 2 * b + q) = ortho(a, b);
  return apply_symplectic(state, s);
}

GaussianState three_mode_demo_state(double r) {
  GaussianState state = squeeze(vacuum(3), 0, r);
  Eigen::MatrixXd ortho(3, 3);
  const double s3 = 1.0 / std::sqrt(3.0), s6 = 1.0 / std::sqrt(6.0),
               s2 = 1.0 / std::sqrt(2.0);
  ortho << s3, 2.0 * s6, 0.0,
           s3, -s6, -s2,
           s3, -s6, s2;
  return passive_mix(state, ortho);
}

bool is_physical(const GaussianState& state, double tol) {
  const int n = state.modes;
  if (!state.covariance.isApprox(state.covariance.transpose(), 1e-12)) return false;
  Eigen::MatrixXcd m = state.covariance.cast<std::complex<double>>();
  for (int j = 0; j < n; ++j) {
    m(2 * j, 2 * j + 1) += std::complex<double>(0.0, 0.5);
    m(2 * j + 1, 2 * j) += std::complex<double>(0.0, -0.5);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  return solver.eigenvalues().minCoeff() > -tol;
}

std::pair<double, double> quadrature_stats(const GaussianState& state,
                                           const LOConfiguration& config) {
  if (config.modes() != state.modes)
    throw std::invalid_argument("quadrature_stats: mode count mismatch");
  auto dv = quadrature_direction(config);
  Eigen::Map<const Eigen::VectorXd> d(dv.data(), dv.size());
  return {d.dot(state.mean), d.dot(state.covariance * d)};
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
  // seed + gamma*(stream+1) is injective over nearby (seed, stream) pairs;
  // the splitmix64 finalizer then decorrelates the starting states (a plain
  // seed^stream mix collides whenever seed1^seed2 == stream1^stream2)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  state_ = z ^ (z >> 31);
}

std::uint64_t RngStream::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double RngStream::uniform() {
  return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double phi = 2.0 * kPi * uniform();
  spare_ = r * std::sin(phi);
  have_spare_ = true;
  return r * std::cos(phi);
}

double sample_quadrature(const GaussianState& state, const LOConfiguration& config,
                         double eta, RngStream& rng) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw bound_error("detection efficiency must satisfy 0 < eta <= 1, got eta=" +
                      std::to_string(eta));
  auto [mean, var] = quadrature_stats(state, config);
  const double x = mean + std::sqrt(var) * rng.normal();
  const double x_vac = std::sqrt(0.5) * rng.normal();
  return std::sqrt(eta) * x + std::sqrt(1.0 - eta) * x_vac;
}

QuadratureDataset simulate_dataset(const GaussianState& state, const SamplingGrid& grid,
                                   int per_point, double eta, std::uint64_t seed) {
  if (per_point < 1) throw std::invalid_argument("per_point must be >= 1");
  if (grid.modes != state.modes)
    throw std::invalid_argument("simulate_dataset: mode count mismatch");
  if (!(eta > 0.0 && eta <= 1.0))
    throw bound_error("detection efficiency must satisfy 0 < eta <= 1, got eta=" +
                      std::to_string(eta));

  QuadratureDataset data;
  data.grid = grid;
  data.eta = eta;
  data.seed = seed;
  const std::size_t points = grid.size();
  data.records.resize(points * static_cast<std::size_t>(per_point));
  data.per_point_counts.assign(points, static_cast<std::uint32_t>(per_point));

  const double sqrt_eta = std::sqrt(eta), sqrt_loss = std::sqrt(1.0 - eta);
  for (std::size_t p = 0; p < points; ++p) {
    auto [mean, var] = quadrature_stats(state, grid.config_at(p));
    const double sigma = std::sqrt(var);
    RngStream rng(seed, p);
    MeasurementRecord* out = &data.records[p * per_point];
    for (int k = 0; k < per_point; ++k) {
      const double x = mean + sigma * rng.normal();
      const double x_vac = std::sqrt(0.5) * rng.normal();
      out[k] = MeasurementRecord{static_cast<std::uint32_t>(p),
                                 sqrt_eta * x + sqrt_loss * x_vac};
    }
  }
  return data;
}

double analytic_q(const GaussianState& state,
                  const std::vector<std::complex<double>>& alpha) {
  const int n = state.modes;
  if (static_cast<int>(alpha.size()) != n)
    throw std::invalid_argument("analytic_q: mode count mismatch");
  Eigen::MatrixXd sigma =
      state.covariance + 0.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n);
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("analytic_q: singular covariance");
  Eigen::VectorXd d(2 * n);
  for (int j = 0; j < n; ++j) {
    d(2 * j) = kSqrt2 * alpha[j].real() - state.mean(2 * j);
    d(2 * j + 1) = kSqrt2 * alpha[j].imag() - state.mean(2 * j + 1);
  }
  const double quad = d.dot(llt.solve(d));
  double log_det = 0.0;
  for (int i = 0; i < 2 * n; ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
  // Husimi density over d^2alpha per mode = dx dp / 2
  return std::exp(-0.5 * quad - 0.5 * log_det) * std::pow(kPi, -n);
}

namespace {

struct WickFactor {
  int mode;
  bool conj;
};

// E[prod z_i] for jointly Gaussian complex variables by the recursive
// pairing expansion with nonzero means.
std::complex<double> wick_moment(
    const std::vector<WickFactor>& factors,
    const std::vector<std::complex<double>>& mean,
    const Eigen::MatrixXcd& cov_aa, const Eigen::MatrixXcd& cov_ac) {
  if (factors.empty()) return 1.0;
  auto cov = [&](const WickFactor& a, const WickFactor& b) -> std::complex<double> {
    if (!a.conj && !b.conj) return cov_aa(a.mode, b.mode);
    if (a.conj && b.conj) return std::conj(cov_aa(a.mode, b.mode));
    if (!a.conj && b.conj) return cov_ac(a.mode, b.mode);
    return cov_ac(b.mode, a.mode);  // Cov(conj_a, b) = Cov(b, conj_a)
  };
  const WickFactor head = factors.front();
  std::vector<WickFactor> rest(factors.begin() + 1, factors.end());
  const std::complex<double> mu =
      head.conj ? std::conj(mean[head.mode]) : mean[head.mode];
  std::complex<double> total = mu * wick_moment(rest, mean, cov_aa, cov_ac);
  for (std::size_t k = 0; k < rest.size(); ++k) {
    std::vector<WickFactor> sub = rest;
    sub.erase(sub.begin() + k);
    total += cov(head, rest[k]) * wick_moment(sub, mean, cov_aa, cov_ac);
  }
  return total;
}

}  // namespace

std::complex<double> analytic_moment(const GaussianState& state,
                                     const std::vector<int>& m,
                                     const std::vector<int>& n, double s) {
  const int modes = state.modes;
  if (static_cast<int>(m.size()) != modes || static_cast<int>(n.size()) != modes)
    throw std::invalid_argument("analytic_moment: index length mismatch");

  // s-ordered moments are plain moments of the W_s quasidistribution,
  // whose quadrature covariance is C - (s/2) I.
  Eigen::MatrixXd sigma =
      state.covariance - 0.5 * s * Eigen::MatrixXd::Identity(2 * modes, 2 * modes);

  std::vector<std::complex<double>> mean(modes);
  Eigen::MatrixXcd cov_aa(modes, modes), cov_ac(modes, modes);
  for (int j = 0; j < modes; ++j) {
    mean[j] = {state.mean(2 * j) / kSqrt2, state.mean(2 * j + 1) / kSqrt2};
    for (int k = 0; k < modes; ++k) {
      const double xx = sigma(2 * j, 2 * k), pp = sigma(2 * j + 1, 2 * k + 1);
      const double xp = sigma(2 * j, 2 * k + 1), px = sigma(2 * j + 1, 2 * k);
      cov_aa(j, k) = 0.5 * std::complex<double>(xx - pp, xp + px);
      cov_ac(j, k) = 0.5 * std::complex<double>(xx + pp, px - xp);
    }
  }

  std::vector<WickFactor> factors;
  for (int j = 0; j < modes; ++j) {
    if (m[j] < 0 || n[j] < 0)
      throw std::invalid_argument("analytic_moment: orders must be >= 0");
    for (int k = 0; k < m[j]; ++k) factors.push_back({j, true});
    for (int k = 0; k < n[j]; ++k) factors.push_back({j, false});
  }
  return wick_moment(factors, mean, cov_aa, cov_ac);
}

void QuadratureDataset::rebuild_counts() {
  per_point_counts.assign(grid.size(), 0);
  for (const auto& rec : records) {
    if (rec.grid_index >= per_point_counts.size())
      throw io_error("record references grid index " + std::to_string(rec.grid_index) +
                     " outside grid of size " + std::to_string(grid.size()));
    ++per_point_counts[rec.grid_index];
  }
}

void QuadratureDataset::check_consistent() const {
  if (per_point_counts.size() != grid.size())
    throw io_error("per-point count table has " + std::to_string(per_point_counts.size()) +
                   " entries for a grid of " + std::to_string(grid.size()) + " points");
  std::uint64_t total = 0;
  for (auto c : per_point_counts) total += c;
  if (total != records.size())
    throw io_error("per-point counts sum to " + std::to_string(total) + " but " +
                   std::to_string(records.size()) + " records are present");
  if (!(eta > 0.0 && eta <= 1.0))
    throw io_error("dataset eta outside (0, 1]: " + std::to_string(eta));
}

}  // namespace tomolab
