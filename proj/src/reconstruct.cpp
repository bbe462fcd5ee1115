#include "tomolab/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <stdexcept>
#include <thread>

#include "tomolab/errors.hpp"
#include "tomolab/special_fns.hpp"

namespace tomolab {

void WelfordAccumulator::add(double x) {
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

void WelfordAccumulator::merge(const WelfordAccumulator& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double total = static_cast<double>(count + other.count);
  const double delta = other.mean - mean;
  m2 += other.m2 + delta * delta * static_cast<double>(count) *
                       static_cast<double>(other.count) / total;
  mean += delta * static_cast<double>(other.count) / total;
  count += other.count;
}

double WelfordAccumulator::variance() const {
  if (count < 2) return 0.0;
  return m2 / static_cast<double>(count - 1);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TOMOLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

bool ValidationReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::string ValidationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return c.name + ": " + c.detail;
  return {};
}

std::uint64_t sufficient_point_count(int max_order, int modes) {
  std::uint64_t r = 1;
  for (int i = 0; i < 2 * modes - 1; ++i)
    r *= static_cast<std::uint64_t>(max_order + 1);
  return r;
}

std::uint64_t free_parameter_count(int max_order, int modes) {
  return sf::binomial(max_order + 2 * modes - 1, max_order);
}

namespace {

ValidationCheck check(std::string name, bool ok, std::string detail) {
  return ValidationCheck{std::move(name), ok, std::move(detail)};
}

ValidationCheck check_nonempty(const QuadratureDataset& data) {
  return check("nonempty dataset", !data.records.empty(),
               "dataset contains no measurement records");
}

// Record positions grouped by grid point; offset[p]..offset[p+1] indexes
// into pos (or directly into records when they arrive already grouped).
struct Partition {
  std::vector<std::uint64_t> offset;
  std::vector<std::uint32_t> pos;
  bool identity = false;
};

Partition build_partition(const QuadratureDataset& data) {
  const std::size_t points = data.grid.size();
  Partition part;
  part.offset.assign(points + 1, 0);
  bool sorted = true;
  std::uint32_t prev = 0;
  for (const auto& rec : data.records) {
    if (rec.grid_index >= points)
      throw io_error("record references grid index " +
                     std::to_string(rec.grid_index) + " outside grid of size " +
                     std::to_string(points));
    if (rec.grid_index < prev) sorted = false;
    prev = rec.grid_index;
    ++part.offset[rec.grid_index + 1];
  }
  for (std::size_t p = 0; p < points; ++p) part.offset[p + 1] += part.offset[p];
  part.identity = sorted;
  if (!sorted) {
    part.pos.resize(data.records.size());
    std::vector<std::uint64_t> cursor(part.offset.begin(), part.offset.end() - 1);
    for (std::uint32_t i = 0; i < data.records.size(); ++i)
      part.pos[cursor[data.records[i].grid_index]++] = i;
  }
  return part;
}

// Run fn(thread_id, point_begin, point_end) over contiguous point chunks;
// exceptions from workers are rethrown on the calling thread.
template <typename Fn>
int parallel_points(std::size_t points, int threads, Fn&& fn) {
  int t = resolve_threads(threads);
  t = std::max(1, std::min<int>(t, static_cast<int>(std::max<std::size_t>(points, 1))));
  if (t == 1) {
    fn(0, std::size_t{0}, points);
    return 1;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(t);
  for (int i = 0; i < t; ++i) {
    const std::size_t lo = points * i / t, hi = points * (i + 1) / t;
    pool.emplace_back([&, i, lo, hi] {
      try {
        fn(i, lo, hi);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return t;
}

// Index pairs (m, n) folded onto canonical representatives so that the
// (n, m) entry is the exact conjugate of the (m, n) entry.
struct PairSet {
  std::vector<MomentIndex> all;
  std::vector<std::size_t> canon_of;
  std::vector<bool> conjugated;
  std::vector<MomentIndex> canonical;
};

PairSet fold_pairs(const std::vector<MomentIndex>& pairs) {
  PairSet set;
  set.all = pairs;
  std::map<std::vector<int>, std::size_t> seen;
  for (const auto& idx : pairs) {
    std::vector<int> key_mn(idx.m), key_nm(idx.n);
    key_mn.insert(key_mn.end(), idx.n.begin(), idx.n.end());
    key_nm.insert(key_nm.end(), idx.m.begin(), idx.m.end());
    const bool conj = key_nm < key_mn;
    const auto& key = conj ? key_nm : key_mn;
    auto it = seen.find(key);
    if (it == seen.end()) {
      it = seen.emplace(key, set.canonical.size()).first;
      set.canonical.push_back(conj ? MomentIndex{idx.n, idx.m} : idx);
    }
    set.canon_of.push_back(it->second);
    set.conjugated.push_back(conj);
  }
  return set;
}

std::vector<std::vector<int>> bounded_vectors(int modes, int cutoff) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(modes, 0);
  while (true) {
    out.push_back(v);
    int j = modes - 1;
    while (j >= 0 && v[j] == cutoff) v[j--] = 0;
    if (j < 0) break;
    ++v[j];
  }
  return out;
}

void sum_bounded_rec(int slots, int budget, std::vector<int>& v,
                     std::vector<std::vector<int>>& out) {
  if (static_cast<int>(v.size()) == slots - 1) {
    for (int k = 0; k <= budget; ++k) {
      v.push_back(k);
      out.push_back(v);
      v.pop_back();
    }
    return;
  }
  for (int k = 0; k <= budget; ++k) {
    v.push_back(k);
    sum_bounded_rec(slots, budget - k, v, out);
    v.pop_back();
  }
}

// All (m, n) pairs with sum of all entries <= max_order.
std::vector<MomentIndex> pairs_by_total(int modes, int max_order) {
  std::vector<std::vector<int>> flat;
  std::vector<int> scratch;
  sum_bounded_rec(2 * modes, max_order, scratch, flat);
  std::vector<MomentIndex> out;
  out.reserve(flat.size());
  for (const auto& v : flat)
    out.push_back(MomentIndex{{v.begin(), v.begin() + modes},
                              {v.begin() + modes, v.end()}});
  return out;
}

// Dense tabulation of a smooth 1D function with 4-point Lagrange
// interpolation; used to amortize kernel special-function evaluations
// across tens of millions of records. The step is chosen so that the
// O(h^4) interpolation error sits far below the statistical errors.
class Tabulated1D {
 public:
  template <typename F>
  Tabulated1D(F&& f, double lo, double hi, double step) : lo_(lo), step_(step) {
    const std::size_t n =
        static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 4;
    values_.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) values_[k] = f(lo_ + k * step_);
  }

  double operator()(double x) const {
    double u = (x - lo_) / step_;
    const double max_i = static_cast<double>(values_.size() - 3);
    u = std::clamp(u, 1.0, max_i);
    std::size_t i = static_cast<std::size_t>(u);
    i = std::clamp<std::size_t>(i, 1, values_.size() - 4);
    const double s = u - static_cast<double>(i);
    const double a = values_[i - 1], b = values_[i], c = values_[i + 1],
                 d = values_[i + 2];
    // cubic Lagrange through the nodes at s = -1, 0, 1, 2
    return a * (-s * (s - 1.0) * (s - 2.0) / 6.0) +
           b * ((s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0) +
           c * (-(s + 1.0) * s * (s - 2.0) / 2.0) +
           d * ((s + 1.0) * s * (s - 1.0) / 6.0);
  }

 private:
  double lo_, step_;
  std::vector<double> values_;
};

double max_abs_x(const QuadratureDataset& data) {
  double m = 0.0;
  for (const auto& rec : data.records) m = std::max(m, std::abs(rec.x));
  return m;
}

std::complex<double> pair_phase(const MomentIndex& idx,
                                const std::vector<double>& psi, double sign) {
  double arg = 0.0;
  for (int j = 0; j < idx.modes(); ++j)
    arg += sign * (idx.m[j] - idx.n[j]) * psi[j];
  return std::polar(1.0, arg);
}

}  // namespace

const Estimate& RhoTable::at(const std::vector<int>& m,
                             const std::vector<int>& n) const {
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (indices[i].m == m && indices[i].n == n) return values[i];
  throw std::out_of_range("RhoTable::at: index not in table");
}

const Estimate& MomentTable::at(const std::vector<int>& m,
                                const std::vector<int>& n) const {
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (indices[i].m == m && indices[i].n == n) return values[i];
  throw std::out_of_range("MomentTable::at: index not in table");
}

ValidationReport validate_quasidist_request(const QuadratureDataset& data,
                                            double s) {
  ValidationReport rep;
  rep.checks.push_back(check(
      "grid kind", data.grid.kind == WeightKind::quasidistribution,
      "quasidistribution estimation needs a quasidistribution-kind grid"));
  const double se = s + (1.0 - data.eta) / data.eta;
  rep.checks.push_back(check(
      "ordering bound", se < 0.0,
      "s + (1-eta)/eta = " + std::to_string(se) + " must be < 0 (s = " +
          std::to_string(s) + ", s_eta = " +
          std::to_string(-(1.0 - data.eta) / data.eta) + ")"));
  rep.checks.push_back(check_nonempty(data));
  return rep;
}

ValidationReport validate_rho_request(const QuadratureDataset& data, int cutoff) {
  ValidationReport rep;
  rep.checks.push_back(check(
      "grid kind", data.grid.kind == WeightKind::quasidistribution,
      "density-matrix estimation needs a quasidistribution-kind grid"));
  rep.checks.push_back(check(
      "efficiency bound", data.eta > 0.5,
      "eta must exceed 1/2: eta = " + std::to_string(data.eta)));
  rep.checks.push_back(check(
      "phase aliasing bound",
      cutoff >= 0 && cutoff < static_cast<int>(data.grid.psi_count()),
      "Fock cutoff " + std::to_string(cutoff) + " must satisfy m_j < N_psi = " +
          std::to_string(data.grid.psi_count())));
  rep.checks.push_back(check_nonempty(data));
  return rep;
}

ValidationReport validate_moment_request(const QuadratureDataset& data, double s,
                                         int max_order) {
  ValidationReport rep;
  rep.checks.push_back(check("grid kind", data.grid.kind == WeightKind::moment,
                             "moment estimation needs a moment-kind grid"));
  rep.checks.push_back(check(
      "phase aliasing bound",
      max_order >= 0 && max_order < static_cast<int>(data.grid.psi_count()),
      "max order " + std::to_string(max_order) +
          " must satisfy m_j, n_j < N_psi = " +
          std::to_string(data.grid.psi_count())));
  if (data.grid.modes > 1)
    rep.checks.push_back(check(
        "angle aliasing bound",
        max_order < static_cast<int>(data.grid.theta_count()),
        "max order " + std::to_string(max_order) +
            " must satisfy M_j < N_theta = " +
            std::to_string(data.grid.theta_count())));
  if (data.eta < 1.0 && s != 1.0) {
    // argument-rescaled kernels stay polynomial, so any real s is allowed;
    // nothing extra to check, but record the effective ordering
    rep.checks.push_back(check(
        "ordering", true,
        "effective ordering s + (1-eta)/eta = " +
            std::to_string(s + (1.0 - data.eta) / data.eta)));
  }
  rep.checks.push_back(check_nonempty(data));
  rep.sufficient_points = sufficient_point_count(max_order, data.grid.modes);
  rep.free_parameters = free_parameter_count(max_order, data.grid.modes);
  return rep;
}

QuasiDistTable estimate_quasidist(const QuadratureDataset& data, double s,
                                  const std::vector<PhaseSpacePoint>& points,
                                  int threads) {
  auto rep = validate_quasidist_request(data, s);
  if (!rep.passed()) throw bound_error(rep.first_failure());
  for (const auto& p : points)
    if (static_cast<int>(p.alpha.size()) != data.grid.modes)
      throw std::invalid_argument(
          "estimate_quasidist: phase-space point dimension mismatch");

  const auto part = build_partition(data);
  const std::size_t npoints = data.grid.size();
  const std::size_t na = points.size();
  const KernelSpec spec{data.grid.modes, s, data.eta};
  const double inv_sqrt_eta = 1.0 / std::sqrt(data.eta);

  double alpha_norm = 0.0;
  for (const auto& p : points) {
    double n2 = 0.0;
    for (const auto& a : p.alpha) n2 += std::norm(a);
    alpha_norm = std::max(alpha_norm, std::sqrt(n2));
  }
  const double reach =
      max_abs_x(data) * inv_sqrt_eta + std::sqrt(2.0) * alpha_norm + 1.0;
  const Tabulated1D kernel_table([&](double xi) { return s_kernel(xi, spec); },
                                 -reach, reach, 1.0 / 256.0);

  const int nthreads = resolve_threads(threads);
  std::vector<std::vector<double>> val_part(nthreads, std::vector<double>(na, 0.0));
  std::vector<std::vector<double>> var_part(nthreads, std::vector<double>(na, 0.0));

  parallel_points(npoints, nthreads, [&](int tid, std::size_t lo, std::size_t hi) {
    std::vector<double> xt(na);
    std::vector<WelfordAccumulator> acc(na);
    for (std::size_t p = lo; p < hi; ++p) {
      const std::uint64_t rb = part.offset[p], re = part.offset[p + 1];
      if (rb == re) continue;
      const auto config = data.grid.config_at(p);
      const double w = data.grid.weight_at(p);
      for (std::size_t a = 0; a < na; ++a) {
        xt[a] = projected_quadrature(points[a].alpha, config);
        acc[a] = WelfordAccumulator{};
      }
      for (std::uint64_t i = rb; i < re; ++i) {
        const auto& rec = data.records[part.identity ? i : part.pos[i]];
        const double xi_base = rec.x * inv_sqrt_eta;
        for (std::size_t a = 0; a < na; ++a)
          acc[a].add(kernel_table(xi_base - xt[a]));
      }
      const double n = static_cast<double>(re - rb);
      for (std::size_t a = 0; a < na; ++a) {
        val_part[tid][a] += w * acc[a].mean;
        var_part[tid][a] += w * w * acc[a].variance() / n;
      }
    }
  });

  QuasiDistTable table;
  table.s = s;
  table.points = points;
  table.values.resize(na);
  for (std::size_t a = 0; a < na; ++a) {
    double v = 0.0, var = 0.0;
    for (int t = 0; t < nthreads; ++t) {
      v += val_part[t][a];
      var += var_part[t][a];
    }
    table.values[a] = Estimate{v, std::sqrt(var)};
  }
  return table;
}

RhoTable estimate_rho(const QuadratureDataset& data, int cutoff, int threads) {
  auto rep = validate_rho_request(data, cutoff);
  if (!rep.passed()) throw bound_error(rep.first_failure());

  const int modes = data.grid.modes;
  const auto part = build_partition(data);

  // enumerate all index pairs, folded onto canonical accumulators
  std::vector<MomentIndex> pairs;
  const auto singles = bounded_vectors(modes, cutoff);
  for (const auto& m : singles)
    for (const auto& n : singles) pairs.push_back(MomentIndex{m, n});
  const PairSet set = fold_pairs(pairs);
  const std::size_t nc = set.canonical.size();

  int p_max = 0;
  const std::size_t theta_combos = data.grid.theta_combos();
  std::vector<std::vector<PatternPoly>> polys(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    polys[c].resize(theta_combos);
    for (std::size_t tc = 0; tc < theta_combos; ++tc) {
      auto u = direction_cosines(data.grid.theta_at(tc), modes);
      polys[c][tc] = pattern_poly(set.canonical[c], u, data.eta);
      p_max = std::max(p_max, polys[c][tc].p_max());
    }
  }
  const std::size_t psi_combos = data.grid.psi_combos();
  std::vector<std::vector<std::complex<double>>> phases(
      nc, std::vector<std::complex<double>>(psi_combos));
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t pc = 0; pc < psi_combos; ++pc)
      phases[c][pc] = pair_phase(set.canonical[c], data.grid.psi_at(pc), 1.0);

  // tabulate each Xi_N(y, p) column over the range of detected quadratures
  const double y_scale = 1.0 / std::sqrt(2.0 * data.eta - 1.0);
  const double y_reach = max_abs_x(data) * y_scale + 1.0;
  std::vector<Tabulated1D> xi_tables;
  xi_tables.reserve(p_max + 1);
  for (int p = 0; p <= p_max; ++p)
    xi_tables.emplace_back(
        [&](double y) {
          const auto t = make_xi_table(modes, y / y_scale, data.eta, p);
          return t.values[p];
        },
        -y_reach, y_reach, 1.0 / 256.0);

  const int nthreads = resolve_threads(threads);
  std::vector<std::vector<std::complex<double>>> val_part(
      nthreads, std::vector<std::complex<double>>(nc, 0.0));
  std::vector<std::vector<double>> var_part(nthreads, std::vector<double>(nc, 0.0));

  parallel_points(data.grid.size(), nthreads,
                  [&](int tid, std::size_t lo, std::size_t hi) {
    std::vector<WelfordAccumulator> acc(nc);
    for (std::size_t p = lo; p < hi; ++p) {
      const std::uint64_t rb = part.offset[p], re = part.offset[p + 1];
      if (rb == re) continue;
      const std::size_t tc = data.grid.theta_combo_of(p);
      const std::size_t pc = data.grid.psi_combo_of(p);
      const double w = data.grid.weight_at(p);
      for (auto& a : acc) a = WelfordAccumulator{};
      XiTable xi;
      xi.modes = modes;
      xi.values.resize(p_max + 1);
      for (std::uint64_t i = rb; i < re; ++i) {
        const auto& rec = data.records[part.identity ? i : part.pos[i]];
        xi.y = rec.x * y_scale;
        for (int q = 0; q <= p_max; ++q) xi.values[q] = xi_tables[q](xi.y);
        for (std::size_t c = 0; c < nc; ++c)
          acc[c].add(pattern_eval(polys[c][tc], xi));
      }
      const double n = static_cast<double>(re - rb);
      for (std::size_t c = 0; c < nc; ++c) {
        val_part[tid][c] += w * phases[c][pc] * acc[c].mean;
        var_part[tid][c] += w * w * acc[c].variance() / n;
      }
    }
  });

  std::vector<std::complex<double>> val(nc, 0.0);
  std::vector<double> var(nc, 0.0);
  for (int t = 0; t < nthreads; ++t)
    for (std::size_t c = 0; c < nc; ++c) {
      val[c] += val_part[t][c];
      var[c] += var_part[t][c];
    }

  RhoTable table;
  table.modes = modes;
  table.cutoff = cutoff;
  table.indices = set.all;
  table.values.resize(set.all.size());
  for (std::size_t i = 0; i < set.all.size(); ++i) {
    const std::size_t c = set.canon_of[i];
    const auto v = set.conjugated[i] ? std::conj(val[c]) : val[c];
    table.values[i] = Estimate{v, std::sqrt(var[c])};
  }
  return table;
}

MomentTable estimate_moments(const QuadratureDataset& data, double s,
                             int max_order, int threads) {
  auto rep = validate_moment_request(data, s, max_order);
  if (!rep.passed()) throw bound_error(rep.first_failure());

  const int modes = data.grid.modes;
  const auto part = build_partition(data);
  const PairSet set = fold_pairs(pairs_by_total(modes, max_order));
  const std::size_t nc = set.canonical.size();

  // loss route: for s = 1 the compensation is the eta^{-M/2} post-factor,
  // otherwise the kernel arguments are rescaled
  double x_scale = 1.0, s_arg = s;
  std::vector<double> comp(max_order + 1, 1.0);
  if (data.eta < 1.0) {
    if (s == 1.0) {
      for (int m = 0; m <= max_order; ++m) comp[m] = std::pow(data.eta, -0.5 * m);
    } else {
      x_scale = 1.0 / std::sqrt(data.eta);
      s_arg = s + (1.0 - data.eta) / data.eta;
    }
  }

  // X-independent factor per canonical index and theta combination
  const std::size_t theta_combos = data.grid.theta_combos();
  std::vector<std::vector<double>> factor(nc, std::vector<double>(theta_combos));
  for (std::size_t c = 0; c < nc; ++c) {
    const auto& idx = set.canonical[c];
    double knorm = comp[idx.total()];
    for (int j = 0; j < modes; ++j) knorm *= k_norm(idx.m[j], idx.n[j]);
    for (std::size_t tc = 0; tc < theta_combos; ++tc) {
      const auto theta = data.grid.theta_at(tc);
      double f = knorm;
      for (int l = 0; l + 1 < modes; ++l)
        f *= f_biorthogonal_closed(idx.m[l] + idx.n[l], idx.tail_total(l),
                                   theta[l]);
      factor[c][tc] = f;
    }
  }
  const std::size_t psi_combos = data.grid.psi_combos();
  std::vector<std::vector<std::complex<double>>> phases(
      nc, std::vector<std::complex<double>>(psi_combos));
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t pc = 0; pc < psi_combos; ++pc)
      phases[c][pc] = pair_phase(set.canonical[c], data.grid.psi_at(pc), -1.0);

  const int nthreads = resolve_threads(threads);
  std::vector<std::vector<std::complex<double>>> val_part(
      nthreads, std::vector<std::complex<double>>(nc, 0.0));
  std::vector<std::vector<double>> var_part(nthreads, std::vector<double>(nc, 0.0));

  parallel_points(data.grid.size(), nthreads,
                  [&](int tid, std::size_t lo, std::size_t hi) {
    std::vector<WelfordAccumulator> acc(max_order + 1);
    std::vector<double> h(max_order + 1);
    for (std::size_t p = lo; p < hi; ++p) {
      const std::uint64_t rb = part.offset[p], re = part.offset[p + 1];
      if (rb == re) continue;
      const std::size_t tc = data.grid.theta_combo_of(p);
      const std::size_t pc = data.grid.psi_combo_of(p);
      const double w = data.grid.weight_at(p);
      for (auto& a : acc) a = WelfordAccumulator{};
      for (std::uint64_t i = rb; i < re; ++i) {
        const auto& rec = data.records[part.identity ? i : part.pos[i]];
        const double x = rec.x * x_scale;
        // scaled-Hermite ladder P_{n+1} = sqrt(2) x P_n - n s P_{n-1}
        h[0] = 1.0;
        if (max_order >= 1) h[1] = std::sqrt(2.0) * x;
        for (int m = 1; m + 1 <= max_order; ++m)
          h[m + 1] = std::sqrt(2.0) * x * h[m] - m * s_arg * h[m - 1];
        for (int m = 0; m <= max_order; ++m) acc[m].add(h[m]);
      }
      const double n = static_cast<double>(re - rb);
      for (std::size_t c = 0; c < nc; ++c) {
        const int m = set.canonical[c].total();
        const double f = w * factor[c][tc];
        val_part[tid][c] += f * phases[c][pc] * acc[m].mean;
        var_part[tid][c] += f * f * acc[m].variance() / n;
      }
    }
  });

  std::vector<std::complex<double>> val(nc, 0.0);
  std::vector<double> var(nc, 0.0);
  for (int t = 0; t < nthreads; ++t)
    for (std::size_t c = 0; c < nc; ++c) {
      val[c] += val_part[t][c];
      var[c] += var_part[t][c];
    }

  MomentTable table;
  table.modes = modes;
  table.max_order = max_order;
  table.s = s;
  table.indices = set.all;
  table.values.resize(set.all.size());
  for (std::size_t i = 0; i < set.all.size(); ++i) {
    const std::size_t c = set.canon_of[i];
    const auto v = set.conjugated[i] ? std::conj(val[c]) : val[c];
    table.values[i] = Estimate{v, std::sqrt(var[c])};
  }
  return table;
}

MandelResult mandel_q(const MomentTable& table, int mode) {
  if (mode < 0 || mode >= table.modes)
    throw std::out_of_range("mandel_q: mode index out of range");
  std::vector<int> e1(table.modes, 0), e2(table.modes, 0);
  e1[mode] = 1;
  e2[mode] = 2;
  const Estimate& n1 = table.at(e1, e1);
  const Estimate& n2 = table.at(e2, e2);
  const double a = n1.value.real(), b = n2.value.real();
  if (!(a > n1.std_error))
    throw std::domain_error(
        "mandel_q: <n> = " + std::to_string(a) +
        " not resolved above its standard error (vacuum-like input)");
  const double q = b / a - a;
  const double dq_da = -b / (a * a) - 1.0, dq_db = 1.0 / a;
  const double err = std::sqrt(dq_da * dq_da * n1.std_error * n1.std_error +
                               dq_db * dq_db * n2.std_error * n2.std_error);
  return MandelResult{q, err};
}

}  // namespace tomolab
